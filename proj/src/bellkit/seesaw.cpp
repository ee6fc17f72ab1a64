// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/seesaw.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "bellkit/error.hpp"
#include "bellkit/parallel.hpp"

namespace bellkit::seesaw {

namespace {

using Frames = std::vector<ComplexMatrix>;  // one unitary per input

double frame_objective(const std::vector<ComplexMatrix>& effective,
                       const std::vector<std::size_t>& ranks, const ComplexMatrix& v)
{
    double total = 0.0;
    Eigen::Index col = 0;
    for (std::size_t a = 0; a < ranks.size(); ++a) {
        const auto width = static_cast<Eigen::Index>(ranks[a]);
        const auto block = v.middleCols(col, width);
        total += (block.adjoint() * effective[a] * block).trace().real();
        col += width;
    }
    return total;
}

// Orthonormal basis of the complement of the unit vector u inside C^k.
ComplexMatrix complement(const ComplexVector& u)
{
    Eigen::HouseholderQR<ComplexMatrix> qr(u);
    ComplexMatrix q = qr.householderQ();
    return q.rightCols(u.size() - 1);
}

ComplexMatrix greedy_frame(const std::vector<ComplexMatrix>& effective,
                           const std::vector<std::size_t>& ranks)
{
    const auto dim = effective.front().rows();
    std::vector<std::size_t> left = ranks;
    std::vector<std::vector<ComplexVector>> picked(ranks.size());
    ComplexMatrix basis = identity(static_cast<std::size_t>(dim));
    for (Eigen::Index step = 0; step < dim; ++step) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_a = 0;
        ComplexVector best_u;
        for (std::size_t a = 0; a < ranks.size(); ++a) {
            if (left[a] == 0) {
                continue;
            }
            const ComplexMatrix reduced = basis.adjoint() * effective[a] * basis;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(reduced);
            const double top = es.eigenvalues()(reduced.rows() - 1);
            if (top > best) {
                best = top;
                best_a = a;
                best_u = es.eigenvectors().col(reduced.rows() - 1);
            }
        }
        picked[best_a].push_back(basis * best_u);
        --left[best_a];
        if (basis.cols() > 1) {
            basis = basis * complement(best_u);
        }
    }
    ComplexMatrix v(dim, dim);
    Eigen::Index col = 0;
    for (const auto& group : picked) {
        for (const auto& vec : group) {
            v.col(col++) = vec;
        }
    }
    return v;
}

ComplexMatrix polar_unitary(const ComplexMatrix& m)
{
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Measurement frame_measurement(const ComplexMatrix& v, const std::vector<std::size_t>& ranks)
{
    Measurement m;
    Eigen::Index col = 0;
    for (std::size_t r : ranks) {
        const auto width = static_cast<Eigen::Index>(r);
        const auto block = v.middleCols(col, width);
        m.push_back(block * block.adjoint());
        col += width;
    }
    return m;
}

std::vector<Measurement> measurements(const Frames& frames, const std::vector<std::size_t>& ranks)
{
    std::vector<Measurement> out;
    for (const auto& f : frames) {
        out.push_back(frame_measurement(f, ranks));
    }
    return out;
}

struct RunOutcome {
    double value = 0.0;
    Strategy strategy;
    std::vector<double> trace;
    bool converged = false;
    double max_decrease = 0.0;
};

RunOutcome run_restart(const BellFunctional& f, const SeesawConfig& config, std::uint64_t seed)
{
    const Scenario& sc = f.scenario;
    const auto ranks_a = rank_profile(config.dim_a, sc.outputs_a);
    const auto ranks_b = rank_profile(config.dim_b, sc.outputs_b);
    std::mt19937_64 rng(seed);
    Frames fa;
    Frames fb;
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        fa.push_back(haar_unitary(config.dim_a, rng));
    }
    for (std::size_t t = 0; t < sc.inputs_b; ++t) {
        fb.push_back(haar_unitary(config.dim_b, rng));
    }
    ComplexVector psi = gaussian_vector(config.dim_a * config.dim_b, rng).normalized();

    const auto value_of = [&](const ComplexVector& state) {
        const ComplexMatrix op = bell_operator(f, measurements(fa, ranks_a), measurements(fb, ranks_b));
        return state.dot(op * state).real();
    };
    const auto state_matrix = [&](const ComplexVector& state) {
        ComplexMatrix m(config.dim_a, config.dim_b);
        for (std::size_t a = 0; a < config.dim_a; ++a) {
            for (std::size_t b = 0; b < config.dim_b; ++b) {
                m(a, b) = state[a * config.dim_b + b];
            }
        }
        return m;
    };

    RunOutcome out{0.0, Strategy{BipartiteState(config.dim_a, config.dim_b, psi, 1e-10), {}, {}}, {},
                   false, 0.0};
    double current = value_of(psi);
    out.trace.push_back(current);
    const auto record = [&](double v) {
        out.max_decrease = std::max(out.max_decrease, out.trace.back() - v);
        out.trace.push_back(v);
        current = v;
    };

    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        const double sweep_start = current;

        // State: principal eigenvector of the Bell operator.
        {
            const ComplexMatrix op =
                bell_operator(f, measurements(fa, ranks_a), measurements(fb, ranks_b));
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (op + op.adjoint()));
            const ComplexVector top = es.eigenvectors().col(op.rows() - 1);
            const double v = top.dot(op * top).real();
            if (v >= current) {
                psi = top;
            }
            record(value_of(psi));
        }

        // Alice: E_s^a = M Y^T M^dagger with Y = sum_{t,b} c Q_t^b.
        {
            const ComplexMatrix m = state_matrix(psi);
            const auto bob = measurements(fb, ranks_b);
            for (std::size_t s = 0; s < sc.inputs_a; ++s) {
                std::vector<ComplexMatrix> eff;
                for (std::size_t a = 0; a < sc.outputs_a; ++a) {
                    ComplexMatrix y = ComplexMatrix::Zero(config.dim_b, config.dim_b);
                    for (std::size_t t = 0; t < sc.inputs_b; ++t) {
                        for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                            y += f.coefficient(a, b, s, t).real() * bob[t][b];
                        }
                    }
                    eff.push_back(m * y.transpose() * m.adjoint());
                }
                fa[s] = optimize_frame(eff, ranks_a, fa[s]);
            }
            record(value_of(psi));
        }

        // Bob: F_t^b = M^T X^T conj(M) with X = sum_{s,a} c P_s^a.
        {
            const ComplexMatrix m = state_matrix(psi);
            const auto alice = measurements(fa, ranks_a);
            for (std::size_t t = 0; t < sc.inputs_b; ++t) {
                std::vector<ComplexMatrix> eff;
                for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                    ComplexMatrix x = ComplexMatrix::Zero(config.dim_a, config.dim_a);
                    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
                        for (std::size_t a = 0; a < sc.outputs_a; ++a) {
                            x += f.coefficient(a, b, s, t).real() * alice[s][a];
                        }
                    }
                    eff.push_back(m.transpose() * x.transpose() * m.conjugate());
                }
                fb[t] = optimize_frame(eff, ranks_b, fb[t]);
            }
            record(value_of(psi));
        }

        if (current - sweep_start < config.tol) {
            out.converged = true;
            break;
        }
    }

    out.value = current;
    out.strategy = Strategy{BipartiteState::normalized(config.dim_a, config.dim_b, psi),
                            measurements(fa, ranks_a), measurements(fb, ranks_b)};
    return out;
}

}  // namespace

void SeesawConfig::validate(const Scenario& scenario) const
{
    if (!(tol > 0.0)) {
        throw ParameterError("tol", "> 0");
    }
    if (restarts == 0) {
        throw ParameterError("restarts", ">= 1");
    }
    if (max_iters == 0) {
        throw ParameterError("max_iters", ">= 1");
    }
    if (dim_a < 2 || dim_a < scenario.outputs_a) {
        throw ParameterError("dim_a", ">= max(2, number of Alice outcomes)");
    }
    if (dim_b < 2 || dim_b < scenario.outputs_b) {
        throw ParameterError("dim_b", ">= max(2, number of Bob outcomes)");
    }
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::vector<std::size_t> rank_profile(std::size_t dim, std::size_t outcomes)
{
    std::vector<std::size_t> ranks(outcomes, dim / outcomes);
    for (std::size_t i = 0; i < dim % outcomes; ++i) {
        ++ranks[i];
    }
    return ranks;
}

Strategy random_strategy(const Scenario& scenario, std::size_t dim_a, std::size_t dim_b,
                         std::uint64_t seed)
{
    scenario.validate();
    std::mt19937_64 rng(seed);
    auto state = BipartiteState::normalized(dim_a, dim_b, gaussian_vector(dim_a * dim_b, rng));
    Strategy s{std::move(state), {}, {}};
    const auto ranks_a = rank_profile(dim_a, scenario.outputs_a);
    const auto ranks_b = rank_profile(dim_b, scenario.outputs_b);
    for (std::size_t i = 0; i < scenario.inputs_a; ++i) {
        s.alice.push_back(frame_measurement(haar_unitary(dim_a, rng), ranks_a));
    }
    for (std::size_t i = 0; i < scenario.inputs_b; ++i) {
        s.bob.push_back(frame_measurement(haar_unitary(dim_b, rng), ranks_b));
    }
    return s;
}

ComplexMatrix optimize_frame(const std::vector<ComplexMatrix>& effective,
                             const std::vector<std::size_t>& ranks, const ComplexMatrix& start)
{
    ComplexMatrix v = start;
    double best = frame_objective(effective, ranks, v);
    const ComplexMatrix greedy = greedy_frame(effective, ranks);
    const double greedy_value = frame_objective(effective, ranks, greedy);
    if (greedy_value > best) {
        v = greedy;
        best = greedy_value;
    }

    // Shifting every E_a by the same multiple of I changes the objective by a
    // constant; with all E_a positive semidefinite the objective is convex and
    // each polar step cannot decrease it.
    double shift = 0.0;
    for (const auto& e : effective) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
        shift = std::max(shift, -es.eigenvalues()(0));
    }
    const auto dim = v.rows();
    for (int step = 0; step < 200; ++step) {
        ComplexMatrix grad(dim, dim);
        Eigen::Index col = 0;
        for (std::size_t a = 0; a < ranks.size(); ++a) {
            const auto width = static_cast<Eigen::Index>(ranks[a]);
            grad.middleCols(col, width) = effective[a] * v.middleCols(col, width) + shift * v.middleCols(col, width);
            col += width;
        }
        const ComplexMatrix next = polar_unitary(grad);
        const double value = frame_objective(effective, ranks, next);
        if (value <= best + 1e-15) {
            break;
        }
        v = next;
        best = value;
    }
    return v;
}

SeesawResult seesaw_maximize(const BellFunctional& functional, const SeesawConfig& config)
{
    functional.scenario.validate();
    config.validate(functional.scenario);
    std::vector<std::optional<RunOutcome>> runs(config.restarts);
    std::vector<std::uint64_t> seeds(config.restarts);
    for (std::size_t r = 0; r < config.restarts; ++r) {
        seeds[r] = restart_seed(config.seed, r);
    }
    parallel_for(0, config.restarts,
                 [&](std::size_t r) { runs[r] = run_restart(functional, config, seeds[r]); });

    std::size_t best = 0;
    std::vector<double> values;
    double max_decrease = 0.0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        values.push_back(runs[r]->value);
        max_decrease = std::max(max_decrease, runs[r]->max_decrease);
        if (runs[r]->value > runs[best]->value) {
            best = r;
        }
    }
    RunOutcome& top = *runs[best];
    return SeesawResult{top.value,        std::move(top.strategy), std::move(top.trace),
                        top.converged,    best,                    std::move(seeds),
                        std::move(values), max_decrease};
}

}  // namespace bellkit::seesaw
