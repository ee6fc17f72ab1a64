// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Alternating maximization of a Bell functional over a shared pure state and
// projective measurements of fixed rank profile.

#include <cstdint>
#include <vector>

#include "bellkit/bell_scenario.hpp"
#include "bellkit/linalg.hpp"

namespace bellkit::seesaw {

struct SeesawConfig {
    std::size_t max_iters = 1000;
    double tol = 1e-13;  // stop when a full sweep gains less than this
    std::size_t restarts = 20;
    std::uint64_t seed = 1;
    std::size_t dim_a = 2;
    std::size_t dim_b = 2;

    /// Throws InvalidParameter.
    void validate(const Scenario& scenario) const;
};

struct SeesawResult {
    double value = 0.0;
    Strategy strategy;
    /// Value after every update (state, Alice, Bob, state, ...) of the best restart.
    std::vector<double> trace;
    bool converged = false;
    std::size_t best_restart = 0;
    std::vector<std::uint64_t> restart_seeds;
    std::vector<double> restart_values;
    /// Largest drop between consecutive trace entries over all restarts.
    double max_trace_decrease = 0.0;
};

/// Seed of restart r, derived from the base seed.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart);

/// Outcome ranks for a d-dimensional space split into m outcomes, as even as possible.
std::vector<std::size_t> rank_profile(std::size_t dim, std::size_t outcomes);

/// Gaussian state and projective measurements from Haar frames partitioned by
/// rank_profile(). Deterministic in seed.
Strategy random_strategy(const Scenario& scenario, std::size_t dim_a, std::size_t dim_b,
                         std::uint64_t seed);

/// Maximizes sum_a tr(V_a^dagger E_a V_a) over orthonormal frames V = [V_0 | V_1 | ...]
/// with V_a of width ranks[a], starting from `start` (columns grouped by outcome).
/// Tries a greedy eigenvector assignment as an alternative start and ascends from
/// the better one by polar-decomposition steps, never decreasing the objective.
ComplexMatrix optimize_frame(const std::vector<ComplexMatrix>& effective,
                             const std::vector<std::size_t>& ranks, const ComplexMatrix& start);

/// Runs config.restarts independent restarts (in parallel) and keeps the best.
SeesawResult seesaw_maximize(const BellFunctional& functional, const SeesawConfig& config);

}  // namespace bellkit::seesaw
