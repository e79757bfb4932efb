// bath.hpp — bath response model: physical parameters, spectral weight,
// thermal kernel and its sampled table.
//
// Units: hbar = k_B = 1. All inputs are dimensionless in units of a reference
// frequency. T = 0 is encoded as beta = +infinity and short-circuits the
// thermal occupation factor coth(beta*omega/2) to 1.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "cbath/errors.hpp"
#include "cbath/quadrature.hpp"

namespace cbath {

inline constexpr double kBetaZeroTemperature = std::numeric_limits<double>::infinity();

struct BathSpec {
    double eta{1.0};           // damping coefficient (mass * frequency)
    double mass{1.0};          // particle mass M (both particles identical)
    double omega_cutoff{1.0};  // high-frequency cutoff of the bath response
    double beta{10.0};         // inverse temperature; +inf means T = 0
    double k0L{0.0};           // distance in units of the bath correlation length

    bool zero_temperature() const { return std::isinf(beta); }

    void validate() const {
        if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be positive and finite");
        if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("mass must be positive and finite");
        if (!(omega_cutoff > 0.0) || !std::isfinite(omega_cutoff))
            throw ConfigError("omega_cutoff must be positive and finite");
        if (!(beta > 0.0)) throw ConfigError("beta must be positive (use inf for T = 0)");
        if (!(k0L >= 0.0) || !std::isfinite(k0L)) throw ConfigError("k0L must be nonnegative and finite");
    }
};

// Attenuation of the bath-mediated interparticle coupling with distance:
// exp(-k0L). 1 at zero separation, -> 0 for independent environments.
inline double coupling_attenuation(double k0L) {
    if (!(k0L >= 0.0)) throw std::domain_error("coupling_attenuation: k0L must be nonnegative");
    return std::exp(-k0L);
}

struct DerivedParams {
    double D;            // coupling attenuation exp(-k0L)
    double gamma;        // relaxation rate eta / M
    double gamma_plus;   // gamma * (1 + D), center-of-mass sector rate
    double gamma_minus;  // gamma * (1 - D), relative sector rate
    double omega0_sq;    // 4 * Omega * eta / (M * pi), induced frequency squared
    double omega_t_sq;   // omega0_sq * D, distance-attenuated coupling
};

inline DerivedParams derive_params(const BathSpec& spec) {
    spec.validate();
    DerivedParams p;
    p.D = coupling_attenuation(spec.k0L);
    p.gamma = spec.eta / spec.mass;
    p.gamma_plus = p.gamma * (1.0 + p.D);
    p.gamma_minus = p.gamma * (1.0 - p.D);
    p.omega0_sq = 4.0 * spec.omega_cutoff * spec.eta / (spec.mass * M_PI);
    p.omega_t_sq = p.omega0_sq * p.D;
    return p;
}

// Integrand weight of the thermal kernel: omega * coth(beta*omega/2), with the
// finite limit 2/beta at omega = 0 and coth == 1 at T = 0. Defined only up to
// the cutoff.
inline double spectral_weight(double omega, const BathSpec& spec) {
    if (omega < 0.0 || omega > spec.omega_cutoff * (1.0 + 1e-12))
        throw std::domain_error("spectral_weight: omega outside [0, omega_cutoff]");
    if (spec.zero_temperature()) return omega;
    if (omega == 0.0) return 2.0 / spec.beta;
    return omega / std::tanh(0.5 * spec.beta * omega);
}

// Thermal (noise) kernel K(tau) = int_0^Omega domega omega coth(beta omega/2)
// cos(omega tau). Even in tau. Composite Gauss-Legendre in omega with panel
// density resolving the cos(omega tau) oscillation.
inline double thermal_kernel(double tau, const BathSpec& spec, const QuadratureConfig& quad) {
    const double at = std::abs(tau);
    const int panels = quad::panels_for(spec.omega_cutoff, at, quad.omega_panels);
    const quad::Grid g = quad::composite_gauss_legendre(0.0, spec.omega_cutoff, panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i)
        sum += g.w[i] * spectral_weight(g.x[i], spec) * std::cos(g.x[i] * at);
    detail::require_finite(sum, "thermal_kernel(tau=" + std::to_string(tau) + ")");
    return sum;
}

// Uniform sampling of K on [0, t_max]; negative arguments fold back by parity.
// Lookup is 4-point (cubic) Lagrange interpolation on the uniform grid.
class KernelTable {
public:
    KernelTable(double t_max, int n_samples, const BathSpec& spec, const QuadratureConfig& quad)
        : t_max_(t_max), step_((n_samples > 1) ? t_max / (n_samples - 1) : 0.0) {
        if (n_samples < 2) throw ConfigError("KernelTable: n_samples must be >= 2");
        if (!(t_max > 0.0)) throw ConfigError("KernelTable: t_max must be positive");
        values_.resize(static_cast<std::size_t>(n_samples));
        for (int i = 0; i < n_samples; ++i)
            values_[static_cast<std::size_t>(i)] = thermal_kernel(i * step_, spec, quad);
    }

    double t_max() const { return t_max_; }
    double step() const { return step_; }
    std::size_t size() const { return values_.size(); }
    double node_value(std::size_t i) const { return values_[i]; }

    double operator()(double tau) const {
        const double at = std::abs(tau);
        if (at > t_max_ * (1.0 + 1e-12))
            throw std::domain_error("KernelTable: tau=" + std::to_string(tau) +
                                    " outside sampled range [-" + std::to_string(t_max_) +
                                    ", " + std::to_string(t_max_) + "]");
        const auto n = static_cast<long>(values_.size());
        if (n == 2) { // linear fallback for degenerate tables
            const double s = std::min(at / step_, 1.0);
            return values_[0] * (1.0 - s) + values_[1] * s;
        }
        long i = static_cast<long>(std::floor(at / step_));
        long j = std::clamp(i - 1, 0L, n - 4);
        const double u = at / step_ - static_cast<double>(j);
        // cubic Lagrange on the four nodes j..j+3, local coordinate u in [0,3]
        const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
        const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
        const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
        const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
        const std::size_t k = static_cast<std::size_t>(j);
        return l0 * values_[k] + l1 * values_[k + 1] + l2 * values_[k + 2] + l3 * values_[k + 3];
    }

private:
    double t_max_;
    double step_;
    std::vector<double> values_;
};

inline KernelTable build_kernel_table(double t_max, int n_samples, const BathSpec& spec,
                                      const QuadratureConfig& quad) {
    return KernelTable(t_max, n_samples, spec, quad);
}

// Sample count giving interpolation error well below coefficient tolerances:
// step <= 0.02 / max(1, Omega), i.e. ~300 samples per kernel oscillation.
inline int default_kernel_samples(double t_max, const BathSpec& spec) {
    const double h = 0.02 / std::max(1.0, spec.omega_cutoff);
    const int n = static_cast<int>(std::ceil(t_max / h)) + 1;
    return std::clamp(n, 64, 1000000);
}

inline KernelTable build_kernel_table(double t_max, const BathSpec& spec,
                                      const QuadratureConfig& quad) {
    return KernelTable(t_max, default_kernel_samples(t_max, spec), spec, quad);
}

} // namespace cbath
