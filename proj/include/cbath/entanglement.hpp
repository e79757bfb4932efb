// entanglement.hpp — symplectic spectra and logarithmic negativity of a
// two-mode Gaussian state with covariance Λ in (x1, p1, x2, p2) ordering,
// ħ = 1 so the vacuum has symplectic eigenvalue 1/2.
//
// The partially transposed spectrum comes from the local invariants,
//     σ̃±² = (D̃ ± sqrt(D̃² - 4 detΛ)) / 2,   D̃ = detA + detB - 2 detC,
// with the smaller root in the cancellation-free form 2 detΛ/(D̃ + sqrt(...)).
// The physical spectrum is computed two ways, from eigenvalues of iJΛ and
// from the same invariant formula with +2 detC, and the routes are required
// to agree; a disagreement signals a corrupted covariance, not a state
// property, and throws.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cbath/covariance.hpp"
#include "cbath/errors.hpp"

namespace cbath {

struct EntanglementResult {
    double sigma_minus_tilde{0.0};
    double sigma_plus_tilde{0.0};
    double log_negativity{0.0};
    double min_symplectic{0.0}; // smaller physical eigenvalue, >= 1/2 for states
    double max_symplectic{0.0};
    double det_a{0.0};
    double det_b{0.0};
    double det_c{0.0};
    double det_full{0.0};
};

namespace detail {

// larger/smaller root of x^2 - inv*x + det_full = 0 without cancellation
inline std::array<double, 2> invariant_roots(double inv, double det_full, const char* tag) {
    if (!(det_full > 0.0)) throw NumericalError(std::string(tag) + ": det Λ <= 0");
    double rad = inv * inv - 4.0 * det_full;
    if (rad < 0.0) {
        if (rad < -1e-12) throw NumericalError(std::string(tag) + ": negative discriminant " +
                                               std::to_string(rad));
        rad = 0.0;
    }
    const double root = std::sqrt(rad);
    if (!(inv + root > 0.0)) throw NumericalError(std::string(tag) + ": non-positive invariant");
    const double plus_sq = 0.5 * (inv + root);
    const double minus_sq = 2.0 * det_full / (inv + root);
    return {std::sqrt(plus_sq), std::sqrt(minus_sq)};
}

inline void check_state_matrix(const CovarianceMatrix& cov) {
    if (!cov.m.allFinite()) throw NumericalError("covariance has non-finite entries");
    if ((cov.m - cov.m.transpose()).cwiseAbs().maxCoeff() >
        1e-10 * (1.0 + cov.m.cwiseAbs().maxCoeff()))
        throw NumericalError("covariance is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov.m, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0))
        throw NumericalError("covariance is not positive definite (min eig " +
                             std::to_string(es.eigenvalues().minCoeff()) + ")");
}

} // namespace detail

// physical symplectic eigenvalues (plus, minus), via |eig(iJΛ)| cross-checked
// against the invariant formula
inline std::array<double, 2> symplectic_eigenvalues(const CovarianceMatrix& cov) {
    detail::check_state_matrix(cov);
    const Eigen::Matrix4d JL = symplectic_form() * cov.m;
    Eigen::EigenSolver<Eigen::Matrix4d> es(JL, /*computeEigenvectors=*/false);
    std::array<double, 4> mags{};
    for (int i = 0; i < 4; ++i) mags[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    const double minus = 0.5 * (mags[0] + mags[1]);
    const double plus = 0.5 * (mags[2] + mags[3]);

    const double inv = cov.det_a() + cov.det_b() + 2.0 * cov.det_c();
    const auto ref = detail::invariant_roots(inv, cov.det_full(), "symplectic spectrum");
    // the general eigensolver only reaches ~sqrt(eps) on degenerate pairs
    const double tol = 1e-6;
    if (std::abs(plus - ref[0]) > tol * (1.0 + ref[0]) ||
        std::abs(minus - ref[1]) > tol * (1.0 + ref[1]))
        throw NumericalError("symplectic eigenvalue routes disagree: eig (" +
                             std::to_string(plus) + ", " + std::to_string(minus) +
                             ") vs invariant (" + std::to_string(ref[0]) + ", " +
                             std::to_string(ref[1]) + ")");
    return {plus, minus};
}

// symplectic eigenvalues (plus, minus) of the partial transpose
inline std::array<double, 2> pt_symplectic_eigenvalues(const CovarianceMatrix& cov) {
    detail::check_state_matrix(cov);
    const double inv = cov.det_a() + cov.det_b() - 2.0 * cov.det_c();
    return detail::invariant_roots(inv, cov.det_full(), "partial-transpose spectrum");
}

inline double log_negativity(const CovarianceMatrix& cov) {
    const auto pt = pt_symplectic_eigenvalues(cov);
    return std::max(0.0, -std::log(2.0 * pt[1]));
}

inline EntanglementResult analyze(const CovarianceMatrix& cov) {
    EntanglementResult r;
    const auto phys = symplectic_eigenvalues(cov);
    const auto pt = pt_symplectic_eigenvalues(cov);
    r.max_symplectic = phys[0];
    r.min_symplectic = phys[1];
    r.sigma_plus_tilde = pt[0];
    r.sigma_minus_tilde = pt[1];
    r.log_negativity = std::max(0.0, -std::log(2.0 * pt[1]));
    r.det_a = cov.det_a();
    r.det_b = cov.det_b();
    r.det_c = cov.det_c();
    r.det_full = cov.det_full();
    return r;
}

// purity of the Gaussian state, 1/(4 sqrt(det Λ)); 1 for pure states
inline double purity(const CovarianceMatrix& cov) {
    const double det = cov.det_full();
    if (!(det > 0.0)) throw NumericalError("purity: det Λ <= 0");
    return 1.0 / (4.0 * std::sqrt(det));
}

} // namespace cbath
