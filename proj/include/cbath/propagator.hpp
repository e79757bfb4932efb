// propagator.hpp — time-dependent decoherence coefficients and the per-sector
// quadratic forms of the two-particle superpropagator.
//
// The propagator factorizes into a center-of-mass sector over (r, chi) and a
// relative sector over (u, v). Each sector kernel is
//
//     J(a, b, t; a', b') = N(t) * exp( i * w^T Phi w  -  w^T R w ),
//     w = (a, b, a', b')  with (a, b) final and (a', b') initial,
//
// where Phi is the classical-action bilinear phase and R is the noise form,
// nonzero only on the width-like coordinates (b, b'):
//     CM:  R = (1+D) * (A_chi b^2 + B_chi b b' + C_chi b'^2)
//     REL: R = (1-D) * (A_v   b^2 + B_v   b b' + C_v   b'^2)
//
// The A, B, C coefficients are double integrals of the thermal kernel against
// hyperbolic window weights. The relative sector's rate sqrt(gamma_-^2 -
// 4*omega_t^2) is evaluated as a complex principal square root; for an
// imaginary argument the hyperbolic ratios reduce to trigonometric ones and
// the results are real up to a checked residue.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cbath/bath.hpp"
#include "cbath/errors.hpp"
#include "cbath/quadrature.hpp"

namespace cbath {

enum class Sector { CM, REL };

inline const char* sector_name(Sector s) { return s == Sector::CM ? "CM" : "REL"; }

// Below this time the propagator is a delta sequence and the sinh ratios
// cancel catastrophically; evolution replaces it by the identity map.
inline double default_t_min(const BathSpec& spec) {
    const DerivedParams d = derive_params(spec);
    const double scale = std::max({d.gamma_plus, std::sqrt(d.omega0_sq), spec.omega_cutoff});
    return 1e-3 / scale;
}

struct SectorCoefficients {
    double A{0.0};
    double B{0.0};
    double C{0.0};
    Sector sector{Sector::CM};
    double t{0.0};

    // A, C are spectral norms, B a cross term; violations indicate a defect.
    bool satisfies_bounds(double rel_tol = 1e-9) const {
        const double scale = std::abs(A) + std::abs(C) + std::abs(B);
        const double slack = rel_tol * (scale + 1e-30);
        if (A < -slack || C < -slack) return false;
        return B * B <= 4.0 * A * C + slack * slack + 4.0 * slack * (A + C);
    }
};

namespace detail {

// Exponentially stable window weights, bounded combinations of
// sinh(x*rate/2) * exp(drift*x/2) / sinh(t*rate/2) factors.
struct SectorWindows {
    // rising window: exp(-(t-x)(rate+drift)/2) * (1-e^{-x rate})/(1-e^{-t rate})
    // falling window: exp(x(drift-rate)/2) * (1-e^{-(t-x) rate})/(1-e^{-t rate})
    std::complex<double> rate;   // gamma_plus (CM) or sqrt(gamma_-^2-4 w_t^2) (REL)
    double drift;                // gamma_plus (CM) or gamma_minus (REL)
    double t;

    std::complex<double> rising(double x) const {
        const std::complex<double> den = cexpm1(-t * rate);
        return std::exp(-0.5 * (t - x) * (rate + drift)) * cexpm1(-x * rate) / den;
    }
    std::complex<double> falling(double x) const {
        const std::complex<double> den = cexpm1(-t * rate);
        return std::exp(0.5 * x * (drift - rate)) * cexpm1(-(t - x) * rate) / den;
    }
};

struct CoefficientSums {
    std::complex<double> AA{0.0, 0.0};
    std::complex<double> AC{0.0, 0.0};
    std::complex<double> CC{0.0, 0.0};
};

// Tensor-product panel quadrature of K(tau - s) against the window pairs.
// The kernel is read from the precomputed table; evaluation order is fixed.
inline CoefficientSums window_double_integral(const SectorWindows& win, const KernelTable& table,
                                              const quad::Grid& g) {
    const std::size_t n = g.x.size();
    std::vector<std::complex<double>> wa(n), wc(n);
    for (std::size_t i = 0; i < n; ++i) {
        wa[i] = win.rising(g.x[i]);
        wc[i] = win.falling(g.x[i]);
    }
    CoefficientSums s;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = g.w[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double k = table(g.x[i] - g.x[j]) * wi * g.w[j];
            s.AA += k * wa[i] * wa[j];
            s.AC += k * wa[i] * wc[j];
            s.CC += k * wc[i] * wc[j];
        }
    }
    return s;
}

inline void check_time(double t, const QuadratureConfig& quad) {
    if (!(t >= quad.t_min)) throw DegenerateTimeError(t, quad.t_min);
}

inline void check_table_covers(const KernelTable& table, double t) {
    if (table.t_max() < t * (1.0 - 1e-12))
        throw ConfigError("kernel table covers [0," + std::to_string(table.t_max()) +
                          "] but t=" + std::to_string(t) + " was requested");
}

inline std::complex<double> sector_rate_rel(const DerivedParams& d) {
    return std::sqrt(std::complex<double>(d.gamma_minus * d.gamma_minus - 4.0 * d.omega_t_sq, 0.0));
}

} // namespace detail

inline SectorCoefficients coefficients_cm(double t, const BathSpec& spec, const KernelTable& table,
                                          const QuadratureConfig& quad) {
    detail::check_time(t, quad);
    detail::check_table_covers(table, t);
    const DerivedParams d = derive_params(spec);
    const detail::SectorWindows win{std::complex<double>(d.gamma_plus, 0.0), d.gamma_plus, t};
    const int panels = quad::panels_for(t, spec.omega_cutoff + d.gamma_plus, quad.time_panels);
    const quad::Grid g = quad::composite_gauss_legendre(0.0, t, panels);
    const detail::CoefficientSums s = detail::window_double_integral(win, table, g);

    SectorCoefficients c;
    c.sector = Sector::CM;
    c.t = t;
    const double pref = spec.eta / M_PI;
    c.A = detail::real_checked(pref * s.AA, "A_cm(t=" + std::to_string(t) + ")");
    c.B = detail::real_checked(2.0 * pref * s.AC, "B_cm(t=" + std::to_string(t) + ")");
    c.C = detail::real_checked(pref * s.CC, "C_cm(t=" + std::to_string(t) + ")");
    detail::require_finite(c.A + c.B + c.C, "CM coefficients at t=" + std::to_string(t));
    return c;
}

inline SectorCoefficients coefficients_rel(double t, const BathSpec& spec, const KernelTable& table,
                                           const QuadratureConfig& quad) {
    detail::check_time(t, quad);
    detail::check_table_covers(table, t);
    const DerivedParams d = derive_params(spec);
    const std::complex<double> rate = detail::sector_rate_rel(d);
    const detail::SectorWindows win{rate, d.gamma_minus, t};
    const double osc = spec.omega_cutoff + d.gamma_minus + std::abs(rate);
    const int panels = quad::panels_for(t, osc, quad.time_panels);
    const quad::Grid g = quad::composite_gauss_legendre(0.0, t, panels);
    const detail::CoefficientSums s = detail::window_double_integral(win, table, g);

    SectorCoefficients c;
    c.sector = Sector::REL;
    c.t = t;
    const double pref = spec.eta / (4.0 * M_PI);
    c.A = detail::real_checked(pref * s.AA, "A_rel(t=" + std::to_string(t) + ")");
    c.B = detail::real_checked(2.0 * pref * s.AC, "B_rel(t=" + std::to_string(t) + ")");
    c.C = detail::real_checked(pref * s.CC, "C_rel(t=" + std::to_string(t) + ")");
    detail::require_finite(c.A + c.B + c.C, "REL coefficients at t=" + std::to_string(t));
    return c;
}

// Bilinear coefficients of the classical-action phase of one sector,
// w^T Phi w = ab*a*b + ab_p*a*b' + a_pb*a'*b + a_pb_p*a'*b'.
// No time validation: callable at any t != 0 (tests exercise t < 0).
struct PhaseCoefficients {
    double ab;
    double ab_p;
    double a_pb;
    double a_pb_p;
};

inline PhaseCoefficients cm_phase_coefficients(double t, const BathSpec& spec) {
    const DerivedParams d = derive_params(spec);
    const double gp = d.gamma_plus;
    const double M = spec.mass;
    // 2*gp/(e^{gp t}-1) and 2*gp/(1-e^{-gp t}): both stable for large gp*t
    const double e1 = 2.0 * gp / std::expm1(gp * t);
    const double e2 = -2.0 * gp / std::expm1(-gp * t);
    PhaseCoefficients p;
    p.ab = -spec.eta + M * d.gamma + M * e1;
    p.ab_p = -M * e2;
    p.a_pb = -M * e1;
    p.a_pb_p = spec.eta - M * d.gamma + M * e2;
    return p;
}

inline PhaseCoefficients rel_phase_coefficients(double t, const BathSpec& spec) {
    const DerivedParams d = derive_params(spec);
    const std::complex<double> rate = detail::sector_rate_rel(d);
    const double M = spec.mass;
    const std::complex<double> em = detail::cexpm1(-t * rate); // e^{-t*rate} - 1
    const std::complex<double> den = -em;                      // 1 - e^{-t*rate}
    const std::complex<double> z1 = rate * (2.0 + em) / den;   // rate*coth(t*rate/2)
    const std::complex<double> z2 = 2.0 * rate * std::exp(-0.5 * t * (rate - d.gamma_minus)) / den;
    const std::complex<double> z3 = 2.0 * rate * std::exp(-0.5 * t * (rate + d.gamma_minus)) / den;
    const double boundary = 0.25 * spec.eta - 0.5 * spec.eta * d.D;
    const double damping = 0.25 * M * (d.gamma_minus - d.gamma);
    const std::string at = " at t=" + std::to_string(t);
    PhaseCoefficients p;
    p.ab = -boundary + damping + detail::real_checked(0.25 * M * z1, "REL phase coth term" + at);
    p.ab_p = detail::real_checked(-0.25 * M * z2, "REL phase csch+ term" + at);
    p.a_pb = detail::real_checked(-0.25 * M * z3, "REL phase csch- term" + at);
    p.a_pb_p = boundary - damping + detail::real_checked(0.25 * M * z1, "REL phase coth term" + at);
    return p;
}

// Quadratic forms of one sector kernel over w = (a, b, a', b').
struct SectorForm {
    Eigen::Matrix4d imag_form = Eigen::Matrix4d::Zero(); // multiplies +i in the exponent
    Eigen::Matrix4d real_form = Eigen::Matrix4d::Zero(); // enters with -1 (noise, (b,b') only)
    Sector sector{Sector::CM};
    double t{0.0};
    bool is_identity{false};

    static SectorForm identity(Sector s) {
        SectorForm f;
        f.sector = s;
        f.is_identity = true;
        return f;
    }
};

namespace detail {

inline Eigen::Matrix4d phase_matrix(const PhaseCoefficients& p) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 1) = m(1, 0) = 0.5 * p.ab;
    m(0, 3) = m(3, 0) = 0.5 * p.ab_p;
    m(2, 1) = m(1, 2) = 0.5 * p.a_pb;
    m(2, 3) = m(3, 2) = 0.5 * p.a_pb_p;
    return m;
}

inline Eigen::Matrix4d noise_matrix(const SectorCoefficients& c, double weight) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(1, 1) = weight * c.A;
    m(1, 3) = m(3, 1) = 0.5 * weight * c.B;
    m(3, 3) = weight * c.C;
    return m;
}

inline void check_form_finite(const SectorForm& f) {
    if (!f.imag_form.allFinite() || !f.real_form.allFinite())
        throw NumericalError(std::string(sector_name(f.sector)) + " sector form at t=" +
                             std::to_string(f.t) + " has non-finite entries");
}

} // namespace detail

inline SectorForm sector_form_cm(double t, const BathSpec& spec, const SectorCoefficients& noise,
                                 const QuadratureConfig& quad) {
    detail::check_time(t, quad);
    const DerivedParams d = derive_params(spec);
    SectorForm f;
    f.sector = Sector::CM;
    f.t = t;
    f.imag_form = detail::phase_matrix(cm_phase_coefficients(t, spec));
    f.real_form = detail::noise_matrix(noise, 1.0 + d.D);
    detail::check_form_finite(f);
    return f;
}

inline SectorForm sector_form_rel(double t, const BathSpec& spec, const SectorCoefficients& noise,
                                  const QuadratureConfig& quad) {
    detail::check_time(t, quad);
    const DerivedParams d = derive_params(spec);
    SectorForm f;
    f.sector = Sector::REL;
    f.t = t;
    f.imag_form = detail::phase_matrix(rel_phase_coefficients(t, spec));
    f.real_form = detail::noise_matrix(noise, 1.0 - d.D);
    detail::check_form_finite(f);
    return f;
}

inline SectorForm sector_form_cm(double t, const BathSpec& spec, const KernelTable& table,
                                 const QuadratureConfig& quad) {
    return sector_form_cm(t, spec, coefficients_cm(t, spec, table, quad), quad);
}

inline SectorForm sector_form_rel(double t, const BathSpec& spec, const KernelTable& table,
                                  const QuadratureConfig& quad) {
    return sector_form_rel(t, spec, coefficients_rel(t, spec, table, quad), quad);
}

} // namespace cbath
