// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/qqs_witness.hpp"

#include <algorithm>
#include <cmath>

#include "bellkit/error.hpp"

namespace bellkit::qqs {

namespace {

void require_params(double alpha, std::size_t K)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in (0, 1)");
    }
    if (K < 2) {
        throw Error(ErrorCode::OutOfRange, "K must be at least 2");
    }
}

ComplexMatrix basis_projector(std::size_t n, std::size_t i)
{
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p(i, i) = 1.0;
    return p;
}

// <Psi|x (x) y|Psi> for the coefficient matrix m of Psi.
double expectation(const ComplexMatrix& m, const ComplexMatrix& x, const ComplexMatrix& y)
{
    return (m.adjoint() * x * m * y.transpose()).trace().real();
}

double sandwiched(const ComplexMatrix& pi, const ComplexMatrix& a, const ComplexMatrix& b)
{
    return (pi * (a - b) * pi).norm();
}

}  // namespace

std::size_t index_dimension(std::size_t K) { return 4 * K + 2; }

std::size_t position(long i, std::size_t K)
{
    const long pos = i + 2 * static_cast<long>(K);
    if (pos < 0 || pos >= static_cast<long>(index_dimension(K))) {
        throw Error(ErrorCode::OutOfRange, "index outside the truncated range");
    }
    return static_cast<std::size_t>(pos);
}

double limit_normalization(double alpha) { return (1.0 + alpha * alpha) / (1.0 - alpha * alpha); }

double truncated_normalization(double alpha, std::size_t K)
{
    const double a2 = alpha * alpha;
    return (1.0 + a2 - 2.0 * std::pow(alpha, 2.0 * static_cast<double>(K) + 2.0)) / (1.0 - a2);
}

TruncatedGeoState truncated_psi(double alpha, std::size_t K)
{
    require_params(alpha, K);
    const std::size_t n = index_dimension(K);
    const double c_k = truncated_normalization(alpha, K);
    ComplexVector amps = ComplexVector::Zero(n * n);
    const long k = static_cast<long>(K);
    for (long i = -k; i <= k; ++i) {
        const std::size_t p = position(i, K);
        amps[p * n + p] = std::pow(alpha, static_cast<double>(std::abs(i))) / std::sqrt(c_k);
    }
    return TruncatedGeoState{alpha, K, c_k, BipartiteState(n, n, std::move(amps), 1e-12)};
}

long pair_target(Pairing variant, int bit, long j)
{
    if (variant == Pairing::W0) {
        if (bit == 0) {
            return j >= 0 ? 2 * j : 2 * j + 1;
        }
        return j >= 0 ? 2 * j + 1 : 2 * j;
    }
    if (bit == 0) {
        return j > 0 ? 2 * j - 1 : 2 * j;
    }
    return j > 0 ? 2 * j : 2 * j - 1;
}

std::size_t PairingIsometry::column(int bit, long j) const
{
    const auto width = static_cast<std::size_t>(j_max - j_min + 1);
    return static_cast<std::size_t>(bit) * width + static_cast<std::size_t>(j - j_min);
}

ComplexMatrix PairingIsometry::range_projector() const { return matrix * matrix.adjoint(); }

PairingIsometry pairing_isometry(Pairing variant, std::size_t K)
{
    if (K < 2) {
        throw Error(ErrorCode::OutOfRange, "K must be at least 2");
    }
    const long k = static_cast<long>(K);
    PairingIsometry w;
    w.variant = variant;
    w.K = K;
    w.j_min = variant == Pairing::W0 ? -k : -k + 1;
    w.j_max = k;
    const auto width = static_cast<std::size_t>(w.j_max - w.j_min + 1);
    w.matrix = ComplexMatrix::Zero(index_dimension(K), 2 * width);
    for (int bit = 0; bit < 2; ++bit) {
        for (long j = w.j_min; j <= w.j_max; ++j) {
            w.matrix(position(pair_target(variant, bit, j), K), w.column(bit, j)) = 1.0;
        }
    }
    if (variant == Pairing::W2) {
        w.unpaired = {-2 * k, 2 * k + 1};
    }
    return w;
}

ComplexMatrix lift(const PairingIsometry& w, const ComplexMatrix& op)
{
    const auto width = static_cast<std::size_t>(w.j_max - w.j_min + 1);
    const std::size_t n = index_dimension(w.K);
    ComplexMatrix out = w.matrix * tensor_product(op, identity(width)) * w.matrix.adjoint();
    for (long i : w.unpaired) {
        out += basis_projector(n, position(i, w.K));
    }
    return out;
}

Strategy WitnessModel::strategy() const
{
    Strategy s{psi.state, {}, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        s.alice.push_back(tilted::binary_measurement(a[i]));
        s.bob.push_back(tilted::binary_measurement(b[i]));
    }
    return s;
}

WitnessModel witness_model(double alpha, std::size_t K)
{
    require_params(alpha, K);
    WitnessModel m{truncated_psi(alpha, K),
                   tilted::params_from_alpha(alpha),
                   pairing_isometry(Pairing::W0, K),
                   pairing_isometry(Pairing::W2, K),
                   {},
                   {}};
    const ComplexMatrix sz = tilted::pauli_z();
    const ComplexMatrix sx = tilted::pauli_x();
    const ComplexMatrix tz = tilted::sigma_z_tilted(m.params.mu);
    const ComplexMatrix tx = tilted::sigma_x_tilted(m.params.mu);
    m.a = {lift(m.w0, sz), lift(m.w0, sx), lift(m.w2, sz), lift(m.w2, sx)};
    m.b = {lift(m.w0, tz), lift(m.w0, tx), lift(m.w2, tz), lift(m.w2, tx)};
    return m;
}

Correlation witness_correlation(const WitnessModel& model)
{
    return correlation_from_strategy(model.strategy());
}

WitnessReport witness_report(double alpha, std::size_t K)
{
    const auto model = witness_model(alpha, K);
    WitnessReport r{witness_correlation(model)};
    const auto& p = r.p;
    r.marginal_a1_s0 = p(1, 0, 0, 0) + p(1, 1, 0, 0);

    const auto canonical =
        correlation_from_strategy(tilted::canonical_strategy(model.params).strategy);
    const auto functional = tilted::tilted_functional(model.params.beta);
    const auto block01 = p.restrict_inputs({0, 1}, {0, 1});
    const auto block23 = p.restrict_inputs({2, 3}, {2, 3});
    r.block01_distance = block01.max_distance(canonical);
    r.block23_distance = block23.max_distance(canonical);
    r.block01_value = bell_value(functional, block01);
    r.block23_value = bell_value(functional, block23);

    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t t = 0; t < 2; ++t) {
                for (std::size_t t2 = 2; t2 < 4; ++t2) {
                    const double lhs = p(a, 0, s, t) + p(a, 1, s, t);
                    const double rhs = p(a, 0, s, t2) + p(a, 1, s, t2);
                    r.block_marginal_spread = std::max(r.block_marginal_spread, std::abs(lhs - rhs));
                }
            }
        }
    }

    const auto next = witness_correlation(witness_model(alpha, K + 2));
    r.truncation_drift = p.max_distance(next);
    r.drift_constant = r.truncation_drift / std::pow(alpha, 2.0 * static_cast<double>(K));
    return r;
}

ProofIdentityReport proof_identity_report(double alpha, std::size_t K)
{
    const auto model = witness_model(alpha, K);
    const auto p = witness_correlation(model);
    const std::size_t n = index_dimension(K);
    const double cos_mu = std::cos(model.params.mu);
    const ComplexMatrix id = identity(n);
    const ComplexMatrix pi = model.w2.range_projector();
    const ComplexMatrix psi = model.psi.state.matrix();

    ProofIdentityReport r;
    r.c_k = model.psi.c_k;
    r.c_limit = limit_normalization(alpha);

    const ComplexMatrix m = (model.b[2] + model.b[3]) / (2.0 * cos_mu);
    r.m_square_residual = sandwiched(pi, m * m, id);
    r.m_structure_residual = sandwiched(pi, m, lift(model.w2, tilted::pauli_z()));

    ComplexMatrix ket0(2, 2);
    ket0 << 1.0, 0.0, 0.0, 0.0;
    const ComplexMatrix d0 = 0.5 * (id + m);
    const ComplexMatrix w2_ket0 =
        model.w2.matrix *
        tensor_product(ket0, identity(static_cast<std::size_t>(model.w2.j_max - model.w2.j_min + 1))) *
        model.w2.matrix.adjoint();
    r.d0_structure_residual = sandwiched(pi, d0, w2_ket0);

    const auto a0 = tilted::binary_measurement(model.a[0]);
    const ComplexMatrix zero_proj = basis_projector(n, position(0, K));
    r.a01_identity_residual = sandwiched(pi, a0[1], d0 - zero_proj);

    const double marginal = p(1, 0, 0, 0) + p(1, 1, 0, 0);
    r.marginal_identity_value = expectation(psi, a0[1], d0);
    r.marginal_identity_residual = std::abs(r.marginal_identity_value - marginal);
    double corr_side = 0.5 * marginal;
    for (std::size_t t = 2; t < 4; ++t) {
        corr_side += (p(1, 0, 0, t) - p(1, 1, 0, t)) / (4.0 * cos_mu);
    }
    r.correlation_identity_residual = std::abs(r.marginal_identity_value - corr_side);

    r.overlap_value = expectation(psi, a0[0], d0);
    r.overlap_residual = std::abs(r.overlap_value - 1.0 / r.c_k);
    r.overlap_lower_bound = 1.0 / (r.c_limit * r.c_limit);
    return r;
}

std::array<Measurement, 3> ternary_measurements(const WitnessModel& model)
{
    const std::size_t n = index_dimension(model.psi.K);
    const auto width = static_cast<std::size_t>(model.w0.j_max - model.w0.j_min + 1);
    ComplexMatrix ket0(2, 2);
    ket0 << 1.0, 0.0, 0.0, 0.0;
    ComplexMatrix ket1(2, 2);
    ket1 << 0.0, 0.0, 0.0, 1.0;
    const ComplexMatrix& w0 = model.w0.matrix;
    const ComplexMatrix zero_proj = basis_projector(n, position(0, model.psi.K));
    Measurement star{w0 * tensor_product(ket0, identity(width)) * w0.adjoint() - zero_proj,
                     w0 * tensor_product(ket1, identity(width)) * w0.adjoint(), zero_proj};
    auto padded = [n](Measurement m) {
        m.push_back(ComplexMatrix::Zero(n, n));
        return m;
    };
    return {star, padded(tilted::binary_measurement(model.a[1])),
            padded(tilted::binary_measurement(model.a[3]))};
}

Correlation ternary_correlation(const WitnessModel& model)
{
    const auto alice = ternary_measurements(model);
    Strategy s{model.psi.state, {alice.begin(), alice.end()}, {}};
    for (std::size_t t = 0; t < 4; ++t) {
        s.bob.push_back(tilted::binary_measurement(model.b[t]));
    }
    return correlation_from_strategy(s);
}

TernaryReport ternary_report(double alpha, std::size_t K)
{
    const auto model = witness_model(alpha, K);
    const auto alice = ternary_measurements(model);
    TernaryReport r{ternary_correlation(model)};
    const auto& q = r.q;
    const auto p = witness_correlation(model);
    const std::size_t n = index_dimension(K);

    for (std::size_t s = 0; s < 3; ++s) {
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (const auto& proj : alice[s]) {
            sum += proj;
        }
        r.completeness_residual = std::max(r.completeness_residual, distance(sum, identity(n)));
    }
    for (std::size_t s = 1; s < 3; ++s) {
        r.outcome2_binary_inputs =
            std::max(r.outcome2_binary_inputs, std::abs(q(2, 0, s, 0) + q(2, 1, s, 0)));
    }
    r.outcome2_star = q(2, 0, 0, 0) + q(2, 1, 0, 0);

    for (std::size_t t = 0; t < 4; ++t) {
        for (std::size_t b = 0; b < 2; ++b) {
            const double star0 = q(0, b, 0, t);
            const double star1 = q(1, b, 0, t);
            const double star2 = q(2, b, 0, t);
            const std::array<double, 4> diffs{p(0, b, 0, t) - (star0 + star2), p(1, b, 0, t) - star1,
                                              p(0, b, 2, t) - (star1 + star2), p(1, b, 2, t) - star0};
            for (std::size_t i = 0; i < 4; ++i) {
                r.relation_residuals[i] = std::max(r.relation_residuals[i], std::abs(diffs[i]));
            }
            for (std::size_t a = 0; a < 2; ++a) {
                r.binary_input_residual =
                    std::max({r.binary_input_residual, std::abs(p(a, b, 1, t) - q(a, b, 1, t)),
                              std::abs(p(a, b, 3, t) - q(a, b, 2, t))});
            }
        }
    }

    const auto a0 = tilted::binary_measurement(model.a[0]);
    const auto a2 = tilted::binary_measurement(model.a[2]);
    const auto& star = alice[0];
    r.projector_relation_residuals = {distance(a0[0], star[0] + star[2]), distance(a0[1], star[1]),
                                      distance(a2[0], star[1] + star[2]), distance(a2[1], star[0])};
    return r;
}

}  // namespace bellkit::qqs
