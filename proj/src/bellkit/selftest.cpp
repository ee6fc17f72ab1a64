// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "bellkit/error.hpp"

namespace bellkit::selftest {

namespace {

// ||(I - Pi) op Pi|| for Pi = basis basis^dagger.
double leakage(const ComplexMatrix& op, const ComplexMatrix& basis)
{
    const ComplexMatrix image = op * basis;
    return (image - basis * (basis.adjoint() * image)).norm();
}

// Unitary factor of the polar decomposition.
ComplexMatrix polar_unitary(const ComplexMatrix& m)
{
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// Hermitian square root of a PSD matrix, clipping rounding negatives.
ComplexMatrix psd_sqrt(const ComplexMatrix& m)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DkPk build_dk_pk(const ComplexMatrix& b0, const ComplexMatrix& b1, std::size_t d, std::size_t k,
                 double tol)
{
    const int ki = static_cast<int>(k);
    ComplexMatrix dk = root_of_unity(d, 0.5 * static_cast<double>(k)) * unitary_power(b0, ki) *
                       unitary_power(b1, -ki);
    if (distance(dk, dk.adjoint()) > tol) {
        throw Error(ErrorCode::NotSelfAdjoint,
                    "D_" + std::to_string(k) + " is not self-adjoint; the strategy is not maximal");
    }
    ComplexMatrix pk = 0.5 * (identity(dk.rows()) - dk);
    return {std::move(dk), std::move(pk)};
}

ComplexMatrix conjugated_projector_sum(const ComplexMatrix& b0, const ComplexMatrix& p1,
                                       std::size_t k)
{
    ComplexMatrix sum = ComplexMatrix::Zero(p1.rows(), p1.cols());
    ComplexMatrix b0l = identity(b0.rows());
    for (std::size_t l = 0; l < k; ++l) {
        sum += b0l * p1 * b0l.adjoint();
        b0l = b0 * b0l;
    }
    return sum;
}

ComplexMatrix build_f(const ComplexMatrix& b0, const ComplexMatrix& p1, std::size_t d, double tol)
{
    ComplexMatrix f = ComplexMatrix::Zero(p1.rows(), p1.cols());
    ComplexMatrix b0l = identity(b0.rows());
    for (std::size_t l = 0; l < d; ++l) {
        f += root_of_unity(d, -static_cast<double>(l)) * b0l * p1 * b0l.adjoint();
        b0l = b0 * b0l;
    }
    if (!is_unitary(f, tol)) {
        throw Error(ErrorCode::NotUnitary, "F is not unitary; the strategy is not maximal");
    }
    return f;
}

ComplexMatrix eigenspace_basis(const ComplexMatrix& b0, std::size_t d, double tol)
{
    const ComplexMatrix q0 = projectors_from_observable(b0, d, tol).front();
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(q0);
    qr.setThreshold(std::sqrt(tol));
    const auto rank = static_cast<Eigen::Index>(qr.rank());
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix basis = q.leftCols(rank);
    // Fix the phase so that the largest entry of each column is real positive.
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::Index r = 0;
        basis.col(c).cwiseAbs().maxCoeff(&r);
        basis.col(c) *= std::conj(basis(r, c)) / std::abs(basis(r, c));
    }
    return basis;
}

RestrictedStrategy restrict_to_support(const satwap::ObservableStrategy& strategy, double tol)
{
    const ComplexMatrix basis_a = support_basis(partial_trace(strategy.state, Side::B));
    const ComplexMatrix basis_b = support_basis(partial_trace(strategy.state, Side::A));
    double inv_a = 0.0;
    double inv_b = 0.0;
    for (std::size_t s = 0; s < 2; ++s) {
        inv_a = std::max(inv_a, leakage(strategy.alice(s), basis_a));
        inv_b = std::max(inv_b, leakage(strategy.bob(s), basis_b));
    }
    if (inv_a > tol || inv_b > tol) {
        throw Error(ErrorCode::SupportMismatch,
                    "support of a reduced state is not invariant under the observables");
    }
    // psi coordinates in the support bases: S_A^dagger M conj(S_B).
    const ComplexMatrix m = basis_a.adjoint() * strategy.state.matrix() * basis_b.conjugate();
    ComplexVector amps(m.size());
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            amps[a * m.cols() + b] = m(a, b);
        }
    }
    auto restricted = BipartiteState::normalized(static_cast<std::size_t>(m.rows()),
                                                 static_cast<std::size_t>(m.cols()), amps);
    return RestrictedStrategy{
        satwap::ObservableStrategy{strategy.d, std::move(restricted),
                                   basis_a.adjoint() * strategy.a0 * basis_a,
                                   basis_a.adjoint() * strategy.a1 * basis_a,
                                   basis_b.adjoint() * strategy.b0 * basis_b,
                                   basis_b.adjoint() * strategy.b1 * basis_b},
        basis_a, basis_b, inv_a, inv_b};
}

double ExtractionResult::max_operator_residual() const
{
    return std::max({isometry_residual, residual_b0, residual_b1, residual_f, residual_p1,
                     residual_a0, residual_a1, reduced_state_residual});
}

ExtractionResult extract_isometry(const satwap::ObservableStrategy& strategy, double gap_tol)
{
    const std::size_t d = strategy.d;
    ExtractionResult out;
    out.d = d;
    out.gap = satwap::sos_certificate(strategy).gap;
    if (std::abs(out.gap) > gap_tol) {
        throw Error(ErrorCode::NotMaximal, "SATWAP gap " + std::to_string(out.gap) +
                                               " exceeds the maximality tolerance");
    }

    const auto restricted = restrict_to_support(strategy);
    const auto& st = restricted.strategy;
    out.invariance_a = restricted.invariance_a;
    out.invariance_b = restricted.invariance_b;
    out.support_a = st.state.dim_a();
    out.support_b = st.state.dim_b();
    if (out.support_b % d != 0 || out.support_a != out.support_b) {
        throw Error(ErrorCode::SupportMismatch,
                    "restricted supports must have equal dimension divisible by d");
    }

    const auto coeffs = satwap::coefficients(d);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 1; k < d; ++k) {
            for (std::size_t l = 1; k + l < d; ++l) {
                const ComplexMatrix lhs = satwap::c_operator(coeffs, s, k, st.b0, st.b1) *
                                          satwap::c_operator(coeffs, s, l, st.b0, st.b1);
                out.semigroup_residual = std::max(
                    out.semigroup_residual,
                    distance(lhs, satwap::c_operator(coeffs, s, k + l, st.b0, st.b1)));
            }
        }
    }

    out.p1 = build_dk_pk(st.b0, st.b1, d, 1).p_k;
    out.f = build_f(st.b0, out.p1, d);
    const ComplexMatrix w0 = eigenspace_basis(st.b0, d);
    out.junk_dim = static_cast<std::size_t>(w0.cols());
    if (out.junk_dim * d != out.support_b) {
        throw Error(ErrorCode::SupportMismatch, "eigenspaces of B0 have unequal dimensions");
    }

    // Row block k of V is (F^k W0)^dagger.
    const std::size_t n = out.support_b;
    const std::size_t junk = out.junk_dim;
    out.v = ComplexMatrix(d * junk, n);
    ComplexMatrix fk_w0 = w0;
    for (std::size_t k = 0; k < d; ++k) {
        out.v.middleRows(static_cast<Eigen::Index>(k * junk), static_cast<Eigen::Index>(junk)) =
            fk_w0.adjoint();
        fk_w0 = out.f * fk_w0;
    }

    const auto canon = satwap::canonical_satwap(d);
    const ComplexMatrix id_junk = identity(junk);
    const auto lifted = [&](const ComplexMatrix& m) { return tensor_product(m, id_junk); };
    const auto conj_v = [&](const ComplexMatrix& m) { return out.v * m * out.v.adjoint(); };
    out.isometry_residual = distance(out.v.adjoint() * out.v, identity(n));
    out.residual_b0 = distance(conj_v(st.b0), lifted(canon.z));
    out.residual_b1 = distance(conj_v(st.b1), lifted(canon.strategy.b1));
    out.residual_f = distance(conj_v(out.f), lifted(canon.x));
    out.residual_p1 = distance(conj_v(out.p1), lifted(canon.j_projector));

    // Bob's reduced state after V is (1/d) I (x) rho'.
    const ComplexMatrix phi = st.state.matrix() * out.v.transpose();
    const ComplexMatrix rho_b = (phi.adjoint() * phi).transpose();
    ComplexMatrix rho_junk = ComplexMatrix::Zero(junk, junk);
    for (std::size_t k = 0; k < d; ++k) {
        const auto off = static_cast<Eigen::Index>(k * junk);
        rho_junk += rho_b.block(off, off, junk, junk);
    }
    out.reduced_state_residual =
        distance(rho_b, tensor_product(identity(d) / static_cast<double>(d), rho_junk));

    // Purification psi' with coefficient matrix sqrt(conj rho'), so that
    // tracing out A' returns rho'.
    const ComplexMatrix junk_matrix = psd_sqrt(rho_junk.conjugate());
    ComplexVector junk_amps(junk * junk);
    for (std::size_t a = 0; a < junk; ++a) {
        for (std::size_t b = 0; b < junk; ++b) {
            junk_amps[a * junk + b] = junk_matrix(a, b);
        }
    }
    const auto junk_state = BipartiteState::normalized(junk, junk, junk_amps);
    out.junk_spectrum = schmidt_spectrum(junk_state);
    const auto target = tensor_states(maximally_entangled(d), junk_state);
    const ComplexMatrix target_matrix = target.matrix();

    // U phi_matrix = target_matrix; both have full rank, U is the polar factor.
    out.u = polar_unitary(target_matrix * phi.adjoint());
    const ComplexMatrix transformed = out.u * phi;
    Complex overlap{};
    for (Eigen::Index a = 0; a < transformed.rows(); ++a) {
        for (Eigen::Index b = 0; b < transformed.cols(); ++b) {
            overlap += std::conj(target_matrix(a, b)) * transformed(a, b);
        }
    }
    out.state_fidelity = std::norm(overlap);
    out.residual_a0 = distance(out.u * st.a0 * out.u.adjoint(), lifted(canon.strategy.a0));
    out.residual_a1 = distance(out.u * st.a1 * out.u.adjoint(), lifted(canon.strategy.a1));
    return out;
}

PlantedInstance planted_instance(std::size_t d, const std::vector<double>& junk_coefficients,
                                 std::size_t pad_a, std::size_t pad_b, std::uint64_t seed)
{
    if (junk_coefficients.empty()) {
        throw Error(ErrorCode::OutOfRange, "junk state needs at least one Schmidt coefficient");
    }
    const std::size_t r = junk_coefficients.size();
    ComplexVector junk_amps = ComplexVector::Zero(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        junk_amps[i * r + i] = junk_coefficients[i];
    }
    const auto junk = BipartiteState::normalized(r, r, junk_amps);
    const auto canon = satwap::canonical_satwap(d);
    const auto joint = tensor_states(canon.strategy.state, junk);

    const std::size_t core = d * r;
    const std::size_t na = core + pad_a;
    const std::size_t nb = core + pad_b;
    const auto embed = [&](const ComplexMatrix& op, std::size_t n) {
        ComplexMatrix out = identity(n);
        out.topLeftCorner(core, core) = tensor_product(op, identity(r));
        return out;
    };
    ComplexVector amps = ComplexVector::Zero(na * nb);
    for (std::size_t a = 0; a < core; ++a) {
        for (std::size_t b = 0; b < core; ++b) {
            amps[a * nb + b] = joint.amplitude(a, b);
        }
    }

    std::mt19937_64 rng(seed);
    const ComplexMatrix u = haar_unitary(na, rng);
    const ComplexMatrix v = haar_unitary(nb, rng);
    auto state = apply_local_unitaries(u, v, BipartiteState::normalized(na, nb, amps));
    const auto conj = [](const ComplexMatrix& w, const ComplexMatrix& op) {
        return ComplexMatrix(w * op * w.adjoint());
    };
    const auto& cs = canon.strategy;
    satwap::ObservableStrategy strategy{d,
                                        std::move(state),
                                        conj(u, embed(cs.a0, na)),
                                        conj(u, embed(cs.a1, na)),
                                        conj(v, embed(cs.b0, nb)),
                                        conj(v, embed(cs.b1, nb))};
    return PlantedInstance{std::move(strategy), schmidt_spectrum(junk)};
}

}  // namespace bellkit::selftest
