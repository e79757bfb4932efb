// evolve.hpp — covariance evolution over a time grid.
//
// The bath memory makes the map non-divisible, so every grid point is an
// independent propagation from t = 0 with its own coefficient integrals;
// nothing is chained between points. One thermal-kernel table is shared by
// the whole grid. Points below t_min use the identity map (the kernel is a
// delta sequence there and the state has not changed at that resolution).
//
// Threading splits grid indices round-robin; every point is computed by pure
// functions on shared read-only inputs, so results are bitwise independent
// of the thread count.

#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "cbath/bath.hpp"
#include "cbath/covariance.hpp"
#include "cbath/errors.hpp"
#include "cbath/gaussian.hpp"
#include "cbath/propagator.hpp"
#include "cbath/quadrature.hpp"

namespace cbath {

namespace detail {

inline void check_time_grid(const std::vector<double>& t_grid) {
    double prev = -1.0;
    for (double t : t_grid) {
        if (!std::isfinite(t) || t < 0.0)
            throw ConfigError("time grid entries must be finite and >= 0");
        if (t <= prev && prev >= 0.0)
            throw ConfigError("time grid must be strictly increasing");
        prev = t;
    }
}

} // namespace detail

inline CovarianceMatrix evolve_at(double t, const SectorState& cm0, const SectorState& rel0,
                                  const BathSpec& spec, const KernelTable& table,
                                  const QuadratureConfig& quad) {
    SectorForm form_cm = SectorForm::identity(Sector::CM);
    SectorForm form_rel = SectorForm::identity(Sector::REL);
    if (t >= quad.t_min) {
        form_cm = sector_form_cm(t, spec, table, quad);
        form_rel = sector_form_rel(t, spec, table, quad);
    }
    const SectorState cm_t = propagate_sector(cm0, form_cm);
    const SectorState rel_t = propagate_sector(rel0, form_rel);
    return assemble_covariance(sector_covariance(cm_t), sector_covariance(rel_t));
}

inline std::vector<CovarianceMatrix> evolve(const InitialStateSpec& init, const BathSpec& spec,
                                            const std::vector<double>& t_grid,
                                            const QuadratureConfig& quad, int n_threads = 1) {
    spec.validate();
    quad.validate();
    detail::check_time_grid(t_grid);
    if (n_threads < 1) throw ConfigError("thread count must be >= 1");
    if (t_grid.empty()) return {};

    const auto [cm0, rel0] = initial_sectors(init);
    const double t_max = std::max(t_grid.back(), quad.t_min);
    const KernelTable table = build_kernel_table(t_max * (1.0 + 1e-9), spec, quad);

    std::vector<CovarianceMatrix> out(t_grid.size());
    const auto worker = [&](std::size_t start, std::size_t stride,
                            std::exception_ptr& failure) noexcept {
        for (std::size_t i = start; i < t_grid.size(); i += stride) {
            try {
                out[i] = evolve_at(t_grid[i], cm0, rel0, spec, table, quad);
            } catch (const NumericalError& e) {
                failure = std::make_exception_ptr(
                    NumericalError("t=" + std::to_string(t_grid[i]) + ": " + e.what()));
                return;
            } catch (...) {
                failure = std::current_exception();
                return;
            }
        }
    };

    const std::size_t used =
        std::min<std::size_t>(static_cast<std::size_t>(n_threads), t_grid.size());
    std::vector<std::exception_ptr> failures(used);
    if (used <= 1) {
        worker(0, 1, failures[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(used);
        for (std::size_t k = 0; k < used; ++k)
            pool.emplace_back([&, k] { worker(k, used, failures[k]); });
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return out;
}

} // namespace cbath
