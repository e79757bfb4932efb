// oracles.hpp — independent reference implementations used only by tests.
//
// Everything here is deliberately naive: direct transcriptions of the
// defining formulas, dense trapezoid grids, literal sinh ratios. Slow and
// cancellation-prone where the library is careful, which is the point; the
// two routes share no code beyond the thermal kernel itself.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cbath/bath.hpp"
#include "cbath/covariance.hpp"
#include "cbath/gaussian.hpp"
#include "cbath/propagator.hpp"
#include "cbath/quadrature.hpp"

namespace oracles {

using cbath::BathSpec;
using cbath::DerivedParams;
using cbath::QuadratureConfig;
using complexd = std::complex<double>;

struct BruteForceCoefficients {
    double A_cm, B_cm, C_cm;
    double A_rel, B_rel, C_rel;
};

// 2-D trapezoid on an (n+1)x(n+1) grid of the literal integrands:
//   A: (pref)   e^{-g t} sinh(s g/2) sinh(tau g/2) / sinh(t g/2)^2 e^{g(s+tau)/2}
//   B: (2 pref) e^{-g t/2} sinh(tau g/2) sinh((t-s) g/2) / sinh(t g/2)^2 e^{g(s+tau)/2}
//   C: (pref)   sinh((t-s) g/2) sinh((t-tau) g/2) / sinh(t g/2)^2 e^{g(s+tau)/2}
// with (pref, g) = (eta/pi, gamma_plus) for CM and (eta/4pi, sqrt(gamma_-^2 -
// 4 omega_t^2)) for REL, the REL rate as a complex principal root and the
// gamma_- drift kept in the exponentials.
inline BruteForceCoefficients brute_force_coefficients(double t, const BathSpec& spec,
                                                       const QuadratureConfig& quad,
                                                       int n = 400) {
    const DerivedParams d = cbath::derive_params(spec);
    const double h = t / n;

    // kernel values at all grid offsets (i - j) h, folded by parity
    std::vector<double> kern(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) kern[static_cast<std::size_t>(k)] =
        cbath::thermal_kernel(k * h, spec, quad);
    const auto K = [&](int i, int j) { return kern[static_cast<std::size_t>(std::abs(i - j))]; };
    const auto tw = [&](int k) { return (k == 0 || k == n) ? 0.5 * h : h; };

    const auto one_sector = [&](complexd rate, double drift, double pref, double& A, double& B,
                                double& C) {
        const complexd sh_t = std::sinh(0.5 * t * rate);
        std::vector<complexd> sh(static_cast<std::size_t>(n) + 1);
        std::vector<double> drift_exp(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            sh[static_cast<std::size_t>(k)] = std::sinh(0.5 * k * h * rate);
            drift_exp[static_cast<std::size_t>(k)] = std::exp(0.5 * drift * k * h);
        }
        complexd sA = 0.0, sB = 0.0, sC = 0.0;
        for (int i = 0; i <= n; ++i) {      // i ~ tau
            for (int j = 0; j <= n; ++j) {  // j ~ s
                const double base = K(i, j) * tw(i) * tw(j) * drift_exp[static_cast<std::size_t>(i)] *
                                    drift_exp[static_cast<std::size_t>(j)];
                const auto si = sh[static_cast<std::size_t>(i)];
                const auto sj = sh[static_cast<std::size_t>(j)];
                const auto sti = sh[static_cast<std::size_t>(n - i)];
                const auto stj = sh[static_cast<std::size_t>(n - j)];
                sA += base * si * sj;
                sB += base * si * stj;
                sC += base * sti * stj;
            }
        }
        const complexd den = sh_t * sh_t;
        const double et = std::exp(-drift * t);
        const double et2 = std::exp(-0.5 * drift * t);
        A = (pref * et * sA / den).real();
        B = (2.0 * pref * et2 * sB / den).real();
        C = (pref * sC / den).real();
    };

    BruteForceCoefficients out{};
    one_sector(complexd(d.gamma_plus, 0.0), d.gamma_plus, spec.eta / M_PI, out.A_cm, out.B_cm,
               out.C_cm);
    const complexd rate_rel =
        std::sqrt(complexd(d.gamma_minus * d.gamma_minus - 4.0 * d.omega_t_sq, 0.0));
    one_sector(rate_rel, d.gamma_minus, spec.eta / (4.0 * M_PI), out.A_rel, out.B_rel, out.C_rel);
    return out;
}

// REL coefficients in the underdamped branch via explicitly real trig
// weights, sinh(i x)/i = sin(x); same quadrature grid as the library.
inline cbath::SectorCoefficients trig_rel_coefficients(double t, const BathSpec& spec,
                                                       const cbath::KernelTable& table,
                                                       const QuadratureConfig& quad) {
    const DerivedParams d = cbath::derive_params(spec);
    const double disc = 4.0 * d.omega_t_sq - d.gamma_minus * d.gamma_minus;
    if (!(disc > 0.0)) throw std::invalid_argument("trig oracle needs the underdamped branch");
    const double mu = std::sqrt(disc);

    const double osc = spec.omega_cutoff + d.gamma_minus + mu;
    const int panels = cbath::quad::panels_for(t, osc, quad.time_panels);
    const cbath::quad::Grid g = cbath::quad::composite_gauss_legendre(0.0, t, panels);

    const double sin_t = std::sin(0.5 * t * mu);
    std::vector<double> wa(g.x.size()), wc(g.x.size());
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double x = g.x[i];
        wa[i] = std::exp(-0.5 * d.gamma_minus * (t - x)) * std::sin(0.5 * x * mu) / sin_t;
        wc[i] = std::exp(0.5 * d.gamma_minus * x) * std::sin(0.5 * (t - x) * mu) / sin_t;
    }
    double sAA = 0.0, sAC = 0.0, sCC = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double k = table(g.x[i] - g.x[j]) * g.w[i] * g.w[j];
            sAA += k * wa[i] * wa[j];
            sAC += k * wa[i] * wc[j];
            sCC += k * wc[i] * wc[j];
        }
    }
    cbath::SectorCoefficients c;
    c.sector = cbath::Sector::REL;
    c.t = t;
    const double pref = spec.eta / (4.0 * M_PI);
    c.A = pref * sAA;
    c.B = 2.0 * pref * sAC;
    c.C = pref * sCC;
    return c;
}

// ----- symplectic references -----

// free-particle covariance evolution, x -> x + (t/m) p per particle
inline Eigen::Matrix4d free_evolution(const Eigen::Matrix4d& cov0, double t, double mass) {
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
    S(0, 1) = t / mass;
    S(2, 3) = t / mass;
    return S * cov0 * S.transpose();
}

inline Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d R;
    R << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return R;
}

inline Eigen::Matrix4d two_mode(const Eigen::Matrix2d& m1, const Eigen::Matrix2d& m2) {
    Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
    out.topLeftCorner<2, 2>() = m1;
    out.bottomRightCorner<2, 2>() = m2;
    return out;
}

inline Eigen::Matrix4d beam_splitter(double theta) {
    Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
    out.topLeftCorner<2, 2>() = std::cos(theta) * Eigen::Matrix2d::Identity();
    out.bottomRightCorner<2, 2>() = std::cos(theta) * Eigen::Matrix2d::Identity();
    out.topRightCorner<2, 2>() = std::sin(theta) * Eigen::Matrix2d::Identity();
    out.bottomLeftCorner<2, 2>() = -std::sin(theta) * Eigen::Matrix2d::Identity();
    return out;
}

struct RandomCovariance {
    cbath::CovarianceMatrix cov;
    double nu_minus; // known symplectic spectrum by construction
    double nu_plus;
};

// random two-mode Gaussian covariance with known Williamson form: conjugate
// diag(nu1, nu1, nu2, nu2) by a symplectic built from rotations, squeezers
// and a beam splitter (each factor preserves J exactly)
inline RandomCovariance random_covariance(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> nu_dist(0.55, 3.0);
    std::uniform_real_distribution<double> squeeze(-0.8, 0.8);

    const double nu1 = nu_dist(rng);
    const double nu2 = nu_dist(rng);
    const double r1 = squeeze(rng);
    const double r2 = squeeze(rng);
    const Eigen::Matrix2d sq1 = Eigen::Vector2d(std::exp(r1), std::exp(-r1)).asDiagonal();
    const Eigen::Matrix2d sq2 = Eigen::Vector2d(std::exp(r2), std::exp(-r2)).asDiagonal();
    const Eigen::Matrix4d S = two_mode(rotation(angle(rng)), rotation(angle(rng))) *
                              beam_splitter(angle(rng)) * two_mode(sq1, sq2) *
                              two_mode(rotation(angle(rng)), rotation(angle(rng)));
    Eigen::Vector4d diag;
    diag << nu1, nu1, nu2, nu2;
    RandomCovariance out;
    out.cov.m = S * diag.asDiagonal() * S.transpose();
    out.cov.m = 0.5 * (out.cov.m + out.cov.m.transpose()).eval();
    out.nu_minus = std::min(nu1, nu2);
    out.nu_plus = std::max(nu1, nu2);
    return out;
}

// partial-transpose spectrum the direct way: flip p2, take |eig(J Lambda)|
inline std::array<double, 2> pt_eigenvalues_direct(const cbath::CovarianceMatrix& cov) {
    Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
    P(3, 3) = -1.0;
    const Eigen::Matrix4d tilde = P * cov.m * P;
    Eigen::EigenSolver<Eigen::Matrix4d> es(cbath::symplectic_form() * tilde, false);
    std::array<double, 4> mags{};
    for (int i = 0; i < 4; ++i) mags[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    return {0.5 * (mags[2] + mags[3]), 0.5 * (mags[0] + mags[1])};
}

// ----- joint-propagation reference -----

// Propagate both sectors in one 8-variable Gaussian integral and extract the
// full 4x4 sector covariance from the joint exponent, bypassing the
// per-sector factorization. Variable order: (a_cm, b_cm, a_rel, b_rel) for
// final and initial blocks.
inline cbath::CovarianceMatrix joint_propagation(const cbath::SectorState& cm0,
                                                 const cbath::SectorState& rel0,
                                                 const cbath::SectorForm& form_cm,
                                                 const cbath::SectorForm& form_rel) {
    using Mat8 = Eigen::Matrix<complexd, 8, 8>;
    using Mat4c = Eigen::Matrix<complexd, 4, 4>;
    const complexd im(0.0, 1.0);

    Mat8 G = Mat8::Zero();
    const auto place = [&](const cbath::SectorForm& f, int a) {
        // sector variable k in {0:a,1:b,2:a',3:b'} -> joint index
        const std::array<int, 4> idx{a, a + 1, a + 4, a + 5};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                G(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) +=
                    complexd(f.real_form(r, c), 0.0) - im * f.imag_form(r, c);
    };
    place(form_cm, 0);
    place(form_rel, 2);

    Mat4c Q0 = Mat4c::Zero();
    Q0.topLeftCorner<2, 2>() = cm0.exponent;
    Q0.bottomRightCorner<2, 2>() = rel0.exponent;

    const Mat4c G_ff = G.topLeftCorner<4, 4>();
    const Mat4c G_fi = G.topRightCorner<4, 4>();
    const Mat4c M = G.bottomRightCorner<4, 4>() + Q0;
    Mat4c Q = G_ff - G_fi * M.inverse() * G_fi.transpose();
    Q = 0.5 * (Q + Q.transpose()).eval();

    // moments from the joint exponent: a-block {0,2}, b-block {1,3}
    Eigen::Matrix2cd Qaa, Qab, Qbb;
    const std::array<int, 2> ai{0, 2}, bi{1, 3};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            Qaa(r, c) = Q(ai[static_cast<std::size_t>(r)], ai[static_cast<std::size_t>(c)]);
            Qab(r, c) = Q(ai[static_cast<std::size_t>(r)], bi[static_cast<std::size_t>(c)]);
            Qbb(r, c) = Q(bi[static_cast<std::size_t>(r)], bi[static_cast<std::size_t>(c)]);
        }
    const Eigen::Matrix2cd Qaa_inv = Qaa.inverse();
    const Eigen::Matrix2cd pos = 0.5 * Qaa_inv;
    const Eigen::Matrix2cd mom = 2.0 * (Qbb - Qab.transpose() * Qaa_inv * Qab);
    const Eigen::Matrix2cd cross = im * Qaa_inv * Qab; // cross(i,j) = <{a_i, p_j}>/2

    Eigen::Matrix4d sector = Eigen::Matrix4d::Zero(); // (r, p_r, u, p_u)
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            sector(2 * i, 2 * j) = pos(i, j).real();
            sector(2 * i + 1, 2 * j + 1) = mom(i, j).real();
            sector(2 * i, 2 * j + 1) = cross(i, j).real();
            sector(2 * i + 1, 2 * j) = cross(j, i).real();
        }
    const Eigen::Matrix4d& S = cbath::sector_to_particle_map();
    cbath::CovarianceMatrix out;
    out.m = S * sector * S.transpose();
    out.m = 0.5 * (out.m + out.m.transpose()).eval();
    return out;
}

// numerical trace of a sector state, ∫ da ρ(a, 0) by wide trapezoid
inline double numerical_trace(const cbath::SectorState& state, int n = 20000) {
    const double width = 1.0 / std::sqrt(2.0 * state.exponent(0, 0).real());
    const double L = 12.0 * width;
    const double h = 2.0 * L / n;
    complexd sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double a = -L + i * h;
        const complexd q = state.exponent(0, 0);
        const complexd val = std::exp(state.log_norm - q * a * a);
        sum += val * ((i == 0 || i == n) ? 0.5 * h : h);
    }
    return sum.real();
}

} // namespace oracles
