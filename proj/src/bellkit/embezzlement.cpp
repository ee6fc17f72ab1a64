// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/embezzlement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellkit/error.hpp"
#include "bellkit/satwap.hpp"
#include "bellkit/tilted_chsh.hpp"

namespace bellkit::embezzle {

namespace {

std::size_t pow3(std::size_t k)
{
    std::size_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= 3;
    }
    return out;
}

void require_level(std::size_t n, std::size_t max_level)
{
    if (n == 0) {
        throw Error(ErrorCode::OutOfRange, "embezzlement level must be at least 1");
    }
    if (n > max_level) {
        throw Error(ErrorCode::TooLarge, "embezzlement level " + std::to_string(n) +
                                             " exceeds the cap " + std::to_string(max_level));
    }
}

// Amplitudes of v1 (x) v2 regrouped as (A1 A2)(B1 B2).
struct PairVector {
    std::size_t dim_a = 1;
    std::size_t dim_b = 1;
    ComplexVector amps = ComplexVector::Ones(1);
};

PairVector tensor(const PairVector& x, const PairVector& y)
{
    PairVector out{x.dim_a * y.dim_a, x.dim_b * y.dim_b, ComplexVector()};
    out.amps = ComplexVector::Zero(static_cast<Eigen::Index>(out.dim_a * out.dim_b));
    for (std::size_t a1 = 0; a1 < x.dim_a; ++a1) {
        for (std::size_t b1 = 0; b1 < x.dim_b; ++b1) {
            const Complex c1 = x.amps[a1 * x.dim_b + b1];
            if (c1 == Complex{}) {
                continue;
            }
            for (std::size_t a2 = 0; a2 < y.dim_a; ++a2) {
                for (std::size_t b2 = 0; b2 < y.dim_b; ++b2) {
                    out.amps[(a1 * y.dim_a + a2) * out.dim_b + b1 * y.dim_b + b2] =
                        c1 * y.amps[a2 * y.dim_b + b2];
                }
            }
        }
    }
    return out;
}

PairVector from_state(const BipartiteState& s) { return {s.dim_a(), s.dim_b(), s.amplitudes()}; }

PairVector power(const PairVector& x, std::size_t k)
{
    PairVector out;
    for (std::size_t i = 0; i < k; ++i) {
        out = tensor(out, x);
    }
    return out;
}

// Unnormalized sum_{j=1}^n |00>^j (x) tau^(n-j).
PairVector chi_sum(std::size_t n)
{
    const PairVector zero = from_state(zero_pair());
    const PairVector tau = from_state(tau_state());
    const std::size_t dim = pow3(n);
    PairVector sum{dim, dim, ComplexVector::Zero(static_cast<Eigen::Index>(dim * dim))};
    for (std::size_t j = 1; j <= n; ++j) {
        sum.amps += tensor(power(zero, j), power(tau, n - j)).amps;
    }
    return sum;
}

Measurement embed_binary(const ComplexMatrix& observable)
{
    const auto two = tilted::binary_measurement(observable);
    Measurement out;
    for (const auto& p : two) {
        ComplexMatrix m = ComplexMatrix::Zero(3, 3);
        m.topLeftCorner(2, 2) = p;
        out.push_back(m);
    }
    ComplexMatrix last = ComplexMatrix::Zero(3, 3);
    last(2, 2) = 1.0;
    out.push_back(last);
    return out;
}

}  // namespace

double normalization(std::size_t n)
{
    double c = static_cast<double>(n);
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t jp = j + 1; jp <= n; ++jp) {
            c += 2.0 * std::pow(2.0, -0.5 * static_cast<double>(jp - j));
        }
    }
    return c;
}

double epsilon_norm_squared(std::size_t n)
{
    return (2.0 - 2.0 * std::pow(2.0, -0.5 * static_cast<double>(n))) / normalization(n);
}

BipartiteState tau_state()
{
    ComplexVector amps = ComplexVector::Zero(9);
    amps[0] = 1.0 / std::numbers::sqrt2;
    amps[8] = 1.0 / std::numbers::sqrt2;
    return {3, 3, std::move(amps)};
}

BipartiteState zero_pair()
{
    ComplexVector amps = ComplexVector::Zero(9);
    amps[0] = 1.0;
    return {3, 3, std::move(amps)};
}

EmbezzleState build_embezzle_state(std::size_t n, std::size_t max_level)
{
    require_level(n, max_level);
    const double c_n = normalization(n);
    const PairVector sum = chi_sum(n);
    BipartiteState chi(sum.dim_a, sum.dim_b, sum.amps / std::sqrt(c_n), 1e-10);
    BipartiteState psi = tensor_states(maximally_entangled(3), chi);
    return EmbezzleState{n, c_n, std::move(chi), std::move(psi)};
}

ComplexMatrix ShiftUnitary::dense() const
{
    if (dimension() > pow3(kDenseMaxLevel + 1)) {
        throw Error(ErrorCode::TooLarge, "dense shift operator is too large");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dimension(), dimension());
    for (std::size_t x = 0; x < dimension(); ++x) {
        m(image[x], x) = 1.0;
    }
    return m;
}

ShiftUnitary shift_unitary(std::size_t n, Side side, std::size_t max_level)
{
    require_level(n, max_level);
    const std::size_t rest = pow3(n);
    const std::size_t dim = 3 * rest;
    ShiftUnitary g{n, side, std::vector<std::uint32_t>(dim)};
    for (std::size_t x = 0; x < dim; ++x) {
        bool cyclic = true;
        for (std::size_t y = x; y > 0 && cyclic; y /= 3) {
            cyclic = (y % 3) != 1;
        }
        g.image[x] = static_cast<std::uint32_t>(cyclic ? (x % rest) * 3 + x / rest : x);
    }
    return g;
}

ComplexVector apply_shift(const ShiftUnitary& shift, std::size_t dim_a, std::size_t dim_b,
                          const ComplexVector& amplitudes, bool inverse)
{
    const std::size_t local = shift.side == Side::A ? dim_a : dim_b;
    if (local != shift.dimension() ||
        static_cast<std::size_t>(amplitudes.size()) != dim_a * dim_b) {
        throw Error(ErrorCode::DimensionMismatch, "shift does not match the state dimensions");
    }
    ComplexVector out(amplitudes.size());
    const auto& img = shift.image;
    if (shift.side == Side::A) {
        for (std::size_t a = 0; a < dim_a; ++a) {
            const std::size_t from = inverse ? img[a] : a;
            const std::size_t to = inverse ? a : img[a];
            out.segment(static_cast<Eigen::Index>(to * dim_b), static_cast<Eigen::Index>(dim_b)) =
                amplitudes.segment(static_cast<Eigen::Index>(from * dim_b),
                                   static_cast<Eigen::Index>(dim_b));
        }
    } else {
        for (std::size_t a = 0; a < dim_a; ++a) {
            const std::size_t row = a * dim_b;
            for (std::size_t b = 0; b < dim_b; ++b) {
                if (inverse) {
                    out[row + b] = amplitudes[row + img[b]];
                } else {
                    out[row + img[b]] = amplitudes[row + b];
                }
            }
        }
    }
    return out;
}

ComplexVector apply_register0(const ComplexMatrix& op, Side side, std::size_t dim_a,
                              std::size_t dim_b, const ComplexVector& amplitudes)
{
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const std::size_t local = side == Side::A ? dim_a : dim_b;
    if (op.rows() != 3 || op.cols() != 3 || local % 3 != 0 ||
        static_cast<std::size_t>(amplitudes.size()) != dim_a * dim_b) {
        throw Error(ErrorCode::DimensionMismatch, "register operator does not match the state");
    }
    ComplexVector out(amplitudes.size());
    if (side == Side::A) {
        const auto width = static_cast<Eigen::Index>(dim_a * dim_b / 3);
        Eigen::Map<const RowMajor> in(amplitudes.data(), 3, width);
        Eigen::Map<RowMajor> res(out.data(), 3, width);
        res.noalias() = op * in;
    } else {
        const auto width = static_cast<Eigen::Index>(dim_b / 3);
        for (std::size_t a = 0; a < dim_a; ++a) {
            Eigen::Map<const RowMajor> in(amplitudes.data() + a * dim_b, 3, width);
            Eigen::Map<RowMajor> res(out.data() + a * dim_b, 3, width);
            res.noalias() = op * in;
        }
    }
    return out;
}

IdentityCheck embezzle_identity_check(std::size_t n, std::size_t max_level)
{
    const auto state = build_embezzle_state(n, max_level);
    const PairVector chi = from_state(state.chi);
    const PairVector zero = from_state(zero_pair());
    const PairVector tau = from_state(tau_state());

    // The shifted sum runs over 00^{j} tau^{n-j} for j = 0..n-1, so the error
    // term is tau^n - 00^n; the opposite sign leaves a residual of 2 ||eps||.
    PairVector eps{chi.dim_a, chi.dim_b, (power(tau, n).amps - power(zero, n).amps) /
                                             std::sqrt(state.c_n)};
    const PairVector lhs_in = tensor(tau, chi);
    ComplexVector lhs = apply_shift(shift_unitary(n, Side::A, max_level), lhs_in.dim_a,
                                    lhs_in.dim_b, lhs_in.amps);
    lhs = apply_shift(shift_unitary(n, Side::B, max_level), lhs_in.dim_a, lhs_in.dim_b, lhs);
    const ComplexVector rhs = tensor(zero, chi).amps + tensor(zero, eps).amps;

    IdentityCheck out;
    out.n = n;
    out.residual = (lhs - rhs).norm();
    out.residual_flipped_sign = (lhs - tensor(zero, chi).amps + tensor(zero, eps).amps).norm();
    out.epsilon_norm_squared = eps.amps.squaredNorm();
    out.closed_form = epsilon_norm_squared(n);
    out.bound = 2.0 / static_cast<double>(n);
    return out;
}

RegisterMeasurements register_measurements()
{
    const auto canon = satwap::canonical_satwap(3);
    const auto& cs = canon.strategy;
    const auto alpha = tilted::params_from_alpha(1.0 / std::numbers::sqrt2);
    RegisterMeasurements m;
    m.alice = {projectors_from_observable(cs.a0, 3), projectors_from_observable(cs.a1, 3),
               embed_binary(tilted::pauli_z()), embed_binary(tilted::pauli_x())};
    m.bob = {projectors_from_observable(cs.b0, 3), projectors_from_observable(cs.b1, 3),
             embed_binary(tilted::sigma_z_tilted(alpha.mu)),
             embed_binary(tilted::sigma_x_tilted(alpha.mu))};
    return m;
}

Strategy table2_strategy(std::size_t n)
{
    if (n > kDenseMaxLevel) {
        throw Error(ErrorCode::TooLarge, "dense strategy is limited to level " +
                                             std::to_string(kDenseMaxLevel));
    }
    auto state = build_embezzle_state(n);
    const ComplexMatrix gamma = shift_unitary(n, Side::A).dense();
    const ComplexMatrix lambda = shift_unitary(n, Side::B).dense();
    const ComplexMatrix rest = identity(pow3(n));
    const auto reg = register_measurements();
    Strategy s{std::move(state.psi), {}, {}};
    for (std::size_t input = 0; input < 4; ++input) {
        Measurement alice;
        Measurement bob;
        for (std::size_t o = 0; o < 3; ++o) {
            ComplexMatrix pa = tensor_product(reg.alice[input][o], rest);
            ComplexMatrix pb = tensor_product(reg.bob[input][o], rest);
            if (input >= 2) {
                pa = gamma.adjoint() * pa * gamma;
                pb = lambda.adjoint() * pb * lambda;
            }
            alice.push_back(std::move(pa));
            bob.push_back(std::move(pb));
        }
        s.alice.push_back(std::move(alice));
        s.bob.push_back(std::move(bob));
    }
    return s;
}

Correlation padded_tilted_reference()
{
    const auto params = tilted::params_from_alpha(1.0 / std::numbers::sqrt2);
    const auto small = correlation_from_strategy(tilted::canonical_strategy(params).strategy);
    const Scenario sc{2, 2, 3, 3};
    std::vector<double> table(sc.table_size(), 0.0);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t t = 0; t < 2; ++t) {
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    table[sc.index(a, b, s, t)] = small(a, b, s, t);
                }
            }
        }
    }
    return {sc, std::move(table)};
}

PnReport correlation_pn(std::size_t n, std::size_t max_level)
{
    const auto state = build_embezzle_state(n, max_level);
    const auto gamma = shift_unitary(n, Side::A, max_level);
    const auto lambda = shift_unitary(n, Side::B, max_level);
    const auto reg = register_measurements();
    const std::size_t dim = state.psi.dim_a();
    const ComplexVector& psi = state.psi.amplitudes();

    const auto action = [&](Side side) -> LocalAction {
        const ShiftUnitary* shift = side == Side::A ? &gamma : &lambda;
        const auto* ops = side == Side::A ? &reg.alice : &reg.bob;
        return [shift, ops, side, dim, &psi](std::size_t input, std::size_t outcome) {
            const ComplexMatrix& op = (*ops)[input][outcome];
            if (input < 2) {
                return apply_register0(op, side, dim, dim, psi);
            }
            ComplexVector v = apply_shift(*shift, dim, dim, psi);
            v = apply_register0(op, side, dim, dim, v);
            return apply_shift(*shift, dim, dim, v, true);
        };
    };

    auto table = correlation_from_actions(Scenario{4, 4, 3, 3}, action(Side::A), action(Side::B));
    const auto check = table.check();
    PnReport r{n, std::move(table), check};
    const auto& p = r.p;
    r.p11_20 = p(1, 1, 2, 0);
    for (std::size_t b = 0; b < 3; ++b) {
        r.marginal_a1_s2 += p(1, b, 2, 0);
    }
    for (std::size_t a = 0; a < 3; ++a) {
        r.marginal_b1_t0 += p(a, 1, 0, 0);
    }
    for (std::size_t s = 2; s < 4; ++s) {
        for (std::size_t t = 2; t < 4; ++t) {
            for (std::size_t x = 0; x < 3; ++x) {
                r.outcome2_block23 = std::max({r.outcome2_block23, std::abs(p(2, x, s, t)),
                                               std::abs(p(x, 2, s, t))});
            }
        }
    }
    r.satwap_block_value = bell_value(satwap::satwap_functional(3), p.restrict_inputs({0, 1}, {0, 1}));
    r.block23_distance = p.restrict_inputs({2, 3}, {2, 3}).max_distance(padded_tilted_reference());
    r.epsilon_norm = std::sqrt(epsilon_norm_squared(n));
    r.distance_bound = 4.0 * r.epsilon_norm;
    return r;
}

SchmidtReport schmidt_report(std::size_t n, std::size_t max_level)
{
    const auto state = build_embezzle_state(n, max_level);
    const std::size_t dim = state.psi.dim_a();
    ComplexVector shifted = apply_shift(shift_unitary(n, Side::A, max_level), dim, dim,
                                        state.psi.amplitudes());
    shifted = apply_shift(shift_unitary(n, Side::B, max_level), dim, dim, shifted);

    SchmidtReport r;
    r.n = n;
    r.psi = schmidt_spectrum(state.psi);
    r.shifted = schmidt_spectrum(BipartiteState(dim, dim, std::move(shifted), 1e-10));
    r.chi = schmidt_spectrum(state.chi);
    r.sup_psi = r.psi.coefficients.front();
    r.sup_chi = r.chi.coefficients.front();

    std::vector<double> expected;
    for (double c : r.chi.coefficients) {
        expected.insert(expected.end(), 3, c / std::sqrt(3.0));
    }
    std::sort(expected.begin(), expected.end(), std::greater<>());
    for (std::size_t i = 0; i < expected.size() && i < r.psi.coefficients.size(); ++i) {
        r.multiplicativity_residual =
            std::max(r.multiplicativity_residual, std::abs(expected[i] - r.psi.coefficients[i]));
    }
    for (std::size_t i = 0; i < r.psi.coefficients.size(); ++i) {
        r.invariance_residual =
            std::max(r.invariance_residual, std::abs(r.shifted.coefficients[i] - r.psi.coefficients[i]));
    }
    r.tilted_side = std::sqrt(2.0 / 3.0) * r.sup_chi;
    r.maximal_side = r.sup_chi / std::sqrt(3.0);
    return r;
}

}  // namespace bellkit::embezzle
