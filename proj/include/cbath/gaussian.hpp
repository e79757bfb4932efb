// gaussian.hpp — Gaussian sector states and their propagation.
//
// A sector state is ρ(a, b) = exp(log_norm - (a,b) Q (a,b)^T) with Q complex
// symmetric, Re Q positive definite. b is the off-diagonal (width-like)
// coordinate, so Hermiticity of the density operator forces the checkerboard
// pattern Im Q_aa = Im Q_bb = 0, Re Q_ab = 0; propagation preserves it
// exactly and the moment extraction checks the residues.
//
// Propagating through a sector form is one complex Gaussian integral over the
// primed pair, i.e. a Schur complement of G = real_form - i*imag_form on the
// (a', b') block shifted by the initial exponent. The normalization is fixed
// by the trace, ∫ da ρ(a, 0) = 1, not carried through the integral, which
// sidesteps the phase ambiguity of complex determinant square roots.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "cbath/errors.hpp"
#include "cbath/propagator.hpp"

namespace cbath {

// Initial product of single-mode squeezed vacua in the sector coordinates:
// squeezing +z on the relative pair and -z on the center of mass. Under the
// particle map this is the standard two-mode squeezed state with E_N(0) = 2z
// when sigma = 1/sqrt(2).
struct InitialStateSpec {
    double z{1.0};
    double sigma{1.0 / std::sqrt(2.0)};

    void validate() const {
        if (!std::isfinite(z)) throw ConfigError("z must be finite");
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
    }
};

struct SectorState {
    Eigen::Matrix2cd exponent = Eigen::Matrix2cd::Zero(); // Q over (a, b)
    double log_norm{0.0};
    Sector sector{Sector::CM};
};

namespace detail {

inline double gaussian_log_norm(const Eigen::Matrix2cd& Q) {
    // trace condition: ∫ da exp(log_norm - Q_aa a^2) = 1
    const double re_aa = Q(0, 0).real();
    if (!(re_aa > 0.0)) throw PropagationError("trace normalization", re_aa);
    return 0.5 * std::log(re_aa / M_PI);
}

inline void check_re_positive_definite(const Eigen::Matrix2cd& m, const char* where) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double b = 0.5 * (m(0, 1).real() + m(1, 0).real());
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    const double min_eig = mean - radius;
    if (!(min_eig > 0.0)) throw PropagationError(where, min_eig);
}

} // namespace detail

inline std::pair<SectorState, SectorState> initial_sectors(const InitialStateSpec& init) {
    init.validate();
    const double s2 = init.sigma * init.sigma;
    const double shrink = std::exp(-2.0 * init.z);
    const double grow = std::exp(2.0 * init.z);

    SectorState cm;
    cm.sector = Sector::CM;
    cm.exponent << std::complex<double>(shrink / s2, 0.0), 0.0, 0.0,
        std::complex<double>(shrink / (4.0 * s2), 0.0);
    cm.log_norm = detail::gaussian_log_norm(cm.exponent);

    SectorState rel;
    rel.sector = Sector::REL;
    rel.exponent << std::complex<double>(grow / (4.0 * s2), 0.0), 0.0, 0.0,
        std::complex<double>(grow / (16.0 * s2), 0.0);
    rel.log_norm = detail::gaussian_log_norm(rel.exponent);

    return {cm, rel};
}

inline SectorState propagate_sector(const SectorState& state, const SectorForm& form) {
    if (form.sector != state.sector)
        throw NumericalError(std::string("sector mismatch: state ") + sector_name(state.sector) +
                             " vs form " + sector_name(form.sector));
    if (form.is_identity) return state;

    const Eigen::Matrix4cd G =
        form.real_form.cast<std::complex<double>>() -
        std::complex<double>(0.0, 1.0) * form.imag_form.cast<std::complex<double>>();
    const Eigen::Matrix2cd G_ff = G.topLeftCorner<2, 2>();
    const Eigen::Matrix2cd G_fi = G.topRightCorner<2, 2>();
    const Eigen::Matrix2cd M = G.bottomRightCorner<2, 2>() + state.exponent;

    // the primed integral converges iff Re M is positive definite
    detail::check_re_positive_definite(M, "primed-block exponent");
    const std::complex<double> det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    Eigen::Matrix2cd Minv;
    Minv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
    Minv /= det;

    Eigen::Matrix2cd Q = G_ff - G_fi * Minv * G_fi.transpose();
    Q = 0.5 * (Q + Q.transpose()).eval();
    detail::check_re_positive_definite(Q, "final exponent");

    SectorState out;
    out.sector = state.sector;
    out.exponent = Q;
    out.log_norm = detail::gaussian_log_norm(Q);
    return out;
}

// Second moments of (a, p) from the exponent, via the characteristic
// function: var_a = Re 1/(2 Q_aa), var_p = Re 2(Q_bb - Q_ab^2/Q_aa),
// cov(a,p) = Re(i Q_ab / Q_aa).
inline Eigen::Matrix2d sector_covariance(const SectorState& state) {
    const std::complex<double> q_aa = state.exponent(0, 0);
    const std::complex<double> q_ab = 0.5 * (state.exponent(0, 1) + state.exponent(1, 0));
    const std::complex<double> q_bb = state.exponent(1, 1);
    const std::string tag = std::string(sector_name(state.sector)) + " moment";
    const std::complex<double> i1(0.0, 1.0);

    const double var_a = detail::real_checked(0.5 / q_aa, tag + " <a^2>");
    const double var_p = detail::real_checked(2.0 * (q_bb - q_ab * q_ab / q_aa), tag + " <p^2>");
    const double cov = detail::real_checked(i1 * q_ab / q_aa, tag + " <ap>");
    if (!(var_a > 0.0)) throw PropagationError("position variance", var_a);
    if (!(var_p > 0.0)) throw PropagationError("momentum variance", var_p);

    Eigen::Matrix2d out;
    out << var_a, cov, cov, var_p;
    return out;
}

} // namespace cbath
