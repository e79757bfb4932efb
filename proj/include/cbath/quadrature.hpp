// quadrature.hpp — deterministic Gauss-Legendre rules and small numeric helpers

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cbath/errors.hpp"

namespace cbath {

// Controls for all deterministic quadratures. Panel counts are lower bounds;
// the actual count additionally scales with the oscillation content of the
// integrand so that refinement only tightens results.
struct QuadratureConfig {
    int omega_panels{8};    // min panels for the frequency integral
    int time_panels{8};     // min panels per axis of the [0,t]^2 integrals
    double t_min{1e-4};     // smallest propagation time (see default_t_min)
    double tol{1e-6};       // relative tolerance for refinement checks

    void validate() const {
        if (omega_panels <= 0) throw ConfigError("omega_panels must be positive");
        if (time_panels <= 0) throw ConfigError("time_panels must be positive");
        if (!(t_min > 0.0)) throw ConfigError("t_min must be positive");
        if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    }
};

namespace quad {

struct Rule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Nodes and weights of the n-point Gauss-Legendre rule via Newton iteration
// on the Legendre recurrence (classic gauleg).
inline Rule gauss_legendre(int n) {
    Rule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = -x;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

// Composite rule: `panels` equal panels over [a, b], `nodes_per_panel` GL
// nodes each. Returned nodes are ascending; evaluation order is fixed, so
// sums over the rule are bit-reproducible.
struct Grid {
    std::vector<double> x;
    std::vector<double> w;
};

inline Grid composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel = 16) {
    const Rule base = gauss_legendre(nodes_per_panel);
    Grid g;
    g.x.reserve(static_cast<std::size_t>(panels * nodes_per_panel));
    g.w.reserve(static_cast<std::size_t>(panels * nodes_per_panel));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (int i = 0; i < nodes_per_panel; ++i) {
            g.x.push_back(mid + 0.5 * h * base.nodes[static_cast<std::size_t>(i)]);
            g.w.push_back(0.5 * h * base.weights[static_cast<std::size_t>(i)]);
        }
    }
    return g;
}

// Panels needed so that an oscillation of angular frequency `freq` over a
// span `len` gets >= 16 nodes per period (one 16-node panel per period).
inline int panels_for(double len, double freq, int min_panels) {
    const double periods = std::abs(len) * std::abs(freq) / (2.0 * M_PI);
    const int p = static_cast<int>(std::ceil(periods)) + 1;
    return std::max(min_panels, p);
}

} // namespace quad

namespace detail {

// exp(z) - 1 with full relative precision for small |z|.
inline std::complex<double> cexpm1(std::complex<double> z) {
    if (std::abs(z) < 0.25) {
        std::complex<double> term = z;
        std::complex<double> sum = z;
        for (int k = 2; k < 24; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::exp(z) - 1.0;
}

inline void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw NumericalError(what + " is not finite");
}

// Extracts the real part, requiring the imaginary residue to be negligible.
inline double real_checked(std::complex<double> z, const std::string& what,
                           double rel_tol = 1e-10) {
    if (std::abs(z.imag()) > rel_tol * (std::abs(z.real()) + 1e-30))
        throw NumericalError(what + " has imaginary residue " + std::to_string(z.imag()) +
                             " vs real part " + std::to_string(z.real()));
    return z.real();
}

} // namespace detail
} // namespace cbath
