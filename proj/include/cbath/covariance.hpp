// covariance.hpp — assembly of the two-particle covariance matrix from the
// sector covariances.
//
// Particle ordering is (x1, p1, x2, p2). The sector coordinates are
// r = (x1+x2)/2 and u = x1-x2 with conjugate momenta p_r = p1+p2 and
// p_u = (p1-p2)/2, so the inverse map is linear and symplectic:
//     x1 = r + u/2,   p1 = p_r/2 + p_u,
//     x2 = r - u/2,   p2 = p_r/2 - p_u.
// Sector masses follow the same split: the center of mass carries 2M, the
// relative coordinate M/2.

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "cbath/errors.hpp"

namespace cbath {

// symplectic form in (x1, p1, x2, p2) ordering
inline Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J(0, 1) = J(2, 3) = 1.0;
    J(1, 0) = J(3, 2) = -1.0;
    return J;
}

namespace detail {

inline Eigen::Matrix4d make_sector_to_particle_map() {
    // columns: (r, p_r, u, p_u)
    Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
    S(0, 0) = 1.0;   // x1 = r + u/2
    S(0, 2) = 0.5;
    S(1, 1) = 0.5;   // p1 = p_r/2 + p_u
    S(1, 3) = 1.0;
    S(2, 0) = 1.0;   // x2 = r - u/2
    S(2, 2) = -0.5;
    S(3, 1) = 0.5;   // p2 = p_r/2 - p_u
    S(3, 3) = -1.0;
    const Eigen::Matrix4d J = symplectic_form();
    if (((S * J * S.transpose()) - J).cwiseAbs().maxCoeff() > 1e-14)
        throw NumericalError("sector-to-particle map is not symplectic");
    return S;
}

} // namespace detail

inline const Eigen::Matrix4d& sector_to_particle_map() {
    static const Eigen::Matrix4d S = detail::make_sector_to_particle_map();
    return S;
}

struct CovarianceMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();

    Eigen::Matrix2d block_a() const { return m.topLeftCorner<2, 2>(); }     // particle 1
    Eigen::Matrix2d block_b() const { return m.bottomRightCorner<2, 2>(); } // particle 2
    Eigen::Matrix2d block_c() const { return m.topRightCorner<2, 2>(); }    // cross

    double det_a() const { return block_a().determinant(); }
    double det_b() const { return block_b().determinant(); }
    double det_c() const { return block_c().determinant(); }
    double det_full() const { return m.determinant(); }
};

// cm_cov over (r, p_r), rel_cov over (u, p_u); the sectors are uncorrelated.
inline CovarianceMatrix assemble_covariance(const Eigen::Matrix2d& cm_cov,
                                            const Eigen::Matrix2d& rel_cov) {
    Eigen::Matrix4d sector = Eigen::Matrix4d::Zero();
    sector.topLeftCorner<2, 2>() = cm_cov;
    sector.bottomRightCorner<2, 2>() = rel_cov;
    const Eigen::Matrix4d& S = sector_to_particle_map();
    CovarianceMatrix out;
    out.m = S * sector * S.transpose();
    out.m = 0.5 * (out.m + out.m.transpose()).eval();
    if (!out.m.allFinite()) throw NumericalError("covariance matrix has non-finite entries");
    return out;
}

} // namespace cbath
