// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/tilted_chsh.hpp"

#include <cmath>
#include <numbers>

#include "bellkit/error.hpp"
#include "bellkit/parallel.hpp"

namespace bellkit::tilted {

namespace {

void require_binary(const ComplexMatrix& m, double tol, const char* name)
{
    if (m.rows() != m.cols() || !is_hermitian(m, tol) ||
        distance(m * m, identity(m.rows())) > tol) {
        throw Error(ErrorCode::NotBinaryObservable, std::string(name) + " is not a binary observable");
    }
}

}  // namespace

TiltedParams params_from_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in (0, 1]");
    }
    TiltedParams p;
    p.alpha = alpha;
    p.theta = std::atan(alpha);
    const double s = 2.0 * alpha / (1.0 + alpha * alpha);       // sin(2 theta)
    const double c = (1.0 - alpha * alpha) / (1.0 + alpha * alpha);  // cos(2 theta)
    p.mu = std::atan(s);
    // s^2 = (4 - beta^2) / (4 + beta^2)  <=>  beta^2 = 4 (1 - s^2) / (1 + s^2), with 1 - s^2 = c^2.
    p.beta = 2.0 * c / std::sqrt(1.0 + s * s);
    return p;
}

TiltedParams params_from_beta(double beta)
{
    if (!(beta >= 0.0 && beta < 2.0)) {
        throw Error(ErrorCode::OutOfRange, "beta must lie in [0, 2)");
    }
    TiltedParams p;
    p.beta = beta;
    const double s = std::sqrt((4.0 - beta * beta) / (4.0 + beta * beta));
    p.theta = 0.5 * std::asin(s);
    p.mu = std::atan(s);
    p.alpha = std::tan(p.theta);
    return p;
}

ComplexMatrix pauli_x()
{
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_z()
{
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix sigma_z_tilted(double mu) { return std::cos(mu) * pauli_z() + std::sin(mu) * pauli_x(); }

ComplexMatrix sigma_x_tilted(double mu) { return std::cos(mu) * pauli_z() - std::sin(mu) * pauli_x(); }

BipartiteState tilted_state(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in (0, 1]");
    }
    ComplexVector amps = ComplexVector::Zero(4);
    const double norm = std::sqrt(1.0 + alpha * alpha);
    amps[0] = 1.0 / norm;
    amps[3] = alpha / norm;
    return {2, 2, std::move(amps)};
}

Measurement binary_measurement(const ComplexMatrix& observable, double tol)
{
    require_binary(observable, tol, "observable");
    return projectors_from_observable(observable, 2, tol);
}

TiltedCanonicalStrategy canonical_strategy(const TiltedParams& params)
{
    TiltedCanonicalStrategy out{params,
                                pauli_z(),
                                pauli_x(),
                                sigma_z_tilted(params.mu),
                                sigma_x_tilted(params.mu),
                                Strategy{tilted_state(params.alpha), {}, {}}};
    out.strategy.alice = {binary_measurement(out.a0), binary_measurement(out.a1)};
    out.strategy.bob = {binary_measurement(out.b0), binary_measurement(out.b1)};
    return out;
}

ComplexMatrix tilted_operator(double beta, const ComplexMatrix& a0, const ComplexMatrix& a1,
                              const ComplexMatrix& b0, const ComplexMatrix& b1, double tol)
{
    require_binary(a0, tol, "A0");
    require_binary(a1, tol, "A1");
    require_binary(b0, tol, "B0");
    require_binary(b1, tol, "B1");
    return beta * tensor_product(a0, identity(b0.rows())) + tensor_product(a0, b0) +
           tensor_product(a0, b1) + tensor_product(a1, b0) - tensor_product(a1, b1);
}

BellFunctional tilted_functional(double beta)
{
    BellFunctional f(Scenario{2, 2, 2, 2});
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t t = 0; t < 2; ++t) {
            const double sign = (s == 1 && t == 1) ? -1.0 : 1.0;
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    const double parity = ((a + b) % 2 == 0) ? 1.0 : -1.0;
                    double c = sign * parity;
                    if (s == 0 && t == 0) {
                        c += beta * (a == 0 ? 1.0 : -1.0);
                    }
                    f.coefficient(a, b, s, t) = c;
                }
            }
        }
    }
    return f;
}

double quantum_maximum(double beta) { return std::sqrt(8.0 + 2.0 * beta * beta); }

double local_maximum(double beta) { return 2.0 + beta; }

std::vector<double> beta_grid(std::size_t points)
{
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = 2.0 * static_cast<double>(i) / static_cast<double>(points);
    }
    return grid;
}

std::vector<SweepRow> sweep(const std::vector<double>& betas)
{
    std::vector<SweepRow> rows(betas.size());
    parallel_for(0, betas.size(), [&](std::size_t i) {
        const auto params = params_from_beta(betas[i]);
        const auto canonical = canonical_strategy(params);
        const auto functional = tilted_functional(params.beta);
        SweepRow row;
        row.beta = params.beta;
        row.alpha = params.alpha;
        row.quantum_value = bell_value(functional, correlation_from_strategy(canonical.strategy));
        row.local_bound = lhv_max_bruteforce(functional).value;
        row.gap = row.quantum_value - row.local_bound;
        rows[i] = row;
    });
    return rows;
}

}  // namespace bellkit::tilted
