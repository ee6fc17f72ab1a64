// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "bellkit/error.hpp"
#include "bellkit/linalg.hpp"
#include "oracles.hpp"

using namespace bellkit;

TEST_SUITE("linalg") {

TEST_CASE("tensor_product matches the composite index a*dB + b")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t ra = 1 + trial % 3, rb = 2 + trial % 4;
        const ComplexMatrix a = haar_unitary(ra, rng), b = haar_unitary(rb, rng);
        CHECK(oracle::max_abs(tensor_product(a, b) - oracle::kron(a, b)) < 1e-15);
    }
}

TEST_CASE("root_of_unity uses the principal branch")
{
    CHECK(std::abs(root_of_unity(4, 1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(root_of_unity(3, 0.5) - std::polar(1.0, oracle::pi / 3)) < 1e-15);
    CHECK(std::abs(root_of_unity(3, -0.25) - std::polar(1.0, -oracle::pi / 6)) < 1e-15);
}

TEST_CASE("apply_local agrees with the dense Kronecker action")
{
    std::mt19937_64 rng(11);
    for (std::size_t da = 1; da <= 8; da += 3) {
        for (std::size_t db = 1; db <= 8; db += 2) {
            const ComplexVector v = gaussian_vector(da * db, rng).normalized();
            const ComplexMatrix ua = haar_unitary(da, rng), ub = haar_unitary(db, rng);
            const ComplexVector ra = apply_local(ua, Side::A, da, db, v);
            const ComplexVector rb = apply_local(ub, Side::B, da, db, v);
            CHECK((ra - oracle::kron(ua, oracle::Mat::Identity(db, db)) * v).norm() < 1e-13);
            CHECK((rb - oracle::kron(oracle::Mat::Identity(da, da), ub) * v).norm() < 1e-13);
        }
    }
}

TEST_CASE("projectors of the clock matrix are the basis projectors")
{
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto p = projectors_from_observable(oracle::clock(d), d);
        REQUIRE(p.size() == d);
        for (std::size_t a = 0; a < d; ++a) {
            oracle::Mat e = oracle::Mat::Zero(d, d);
            e(a, a) = 1.0;
            CHECK(oracle::max_abs(p[a] - e) < 1e-14);
        }
    }
}

TEST_CASE("projectors_from_observable matches an eigendecomposition")
{
    std::mt19937_64 rng(3);
    for (std::size_t d = 2; d <= 5; ++d) {
        const oracle::Mat u = oracle::random_d_valued(6, d, rng);
        const auto p = projectors_from_observable(u, d);
        const auto q = oracle::spectral_projectors(u, d);
        for (std::size_t a = 0; a < d; ++a) {
            CHECK(oracle::max_abs(p[a] - q[a]) < 1e-10);
        }
    }
}

TEST_CASE("observable validation errors")
{
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    CHECK_THROWS_AS(projectors_from_observable(m, 2), Error);
    try {
        projectors_from_observable(m, 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotUnitary);
    }
    // Z_3 is unitary but not an involution.
    try {
        projectors_from_observable(oracle::clock(3), 2);
        FAIL("expected NotDthRoot");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDthRoot);
    }
}

TEST_CASE("DValuedObservable round trip")
{
    std::mt19937_64 rng(5);
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto o = DValuedObservable::from_unitary(oracle::random_d_valued(7, d, rng), d);
        CHECK(o.invariant_residual() < 1e-10);
        const auto back = DValuedObservable::from_projectors(o.projectors());
        CHECK(distance(back.matrix(), o.matrix()) < 1e-10);
    }
    std::vector<ComplexMatrix> bad{identity(2), identity(2)};
    CHECK_THROWS_AS(DValuedObservable::from_projectors(bad), Error);
}

TEST_CASE("BipartiteState invariants")
{
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = 1.0;
    CHECK_NOTHROW(BipartiteState(2, 2, v));
    CHECK_THROWS_AS(BipartiteState(2, 3, v), Error);
    CHECK_THROWS_AS(BipartiteState(2, 2, 2.0 * v), Error);
    CHECK_THROWS_AS(BipartiteState::normalized(2, 2, ComplexVector::Zero(4)), Error);
    const auto s = BipartiteState::normalized(2, 2, 3.0 * v);
    CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-15);
}

TEST_CASE("maximally entangled state has flat spectrum")
{
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto s = schmidt_spectrum(maximally_entangled(d));
        REQUIRE(s.coefficients.size() >= d);
        for (std::size_t i = 0; i < d; ++i) {
            CHECK(std::abs(s.coefficients[i] - 1.0 / std::sqrt(double(d))) < 1e-14);
        }
        CHECK(s.rank() == d);
    }
}

TEST_CASE("Schmidt spectrum is invariant under local unitaries and matches SVD")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t da = 2 + trial % 4, db = 2 + (trial / 4) % 4;
        const auto psi = BipartiteState::normalized(da, db, gaussian_vector(da * db, rng));
        const auto moved =
            apply_local_unitaries(haar_unitary(da, rng), haar_unitary(db, rng), psi);
        const auto s1 = schmidt_spectrum(psi);
        const auto s2 = schmidt_spectrum(moved);
        oracle::Mat m(da, db);
        for (std::size_t a = 0; a < da; ++a)
            for (std::size_t b = 0; b < db; ++b) m(a, b) = psi.amplitudes()(a * db + b);
        Eigen::JacobiSVD<oracle::Mat> svd(m);
        for (std::size_t i = 0; i < std::min(da, db); ++i) {
            CHECK(std::abs(s1.coefficients[i] - svd.singularValues()(i)) < 1e-12);
            CHECK(std::abs(s1.coefficients[i] - s2.coefficients[i]) < 1e-12);
        }
        CHECK(std::abs(s1.sum_of_squares() - 1.0) < 1e-12);
        const auto dec = schmidt_decompose(psi);
        CHECK((dec.reconstruct() - psi.amplitudes()).norm() < 1e-12);
    }
}

TEST_CASE("monomial fast path agrees with the SVD route")
{
    // A permuted diagonal coefficient matrix.
    ComplexVector v = ComplexVector::Zero(9);
    v(0 * 3 + 2) = 0.6;
    v(1 * 3 + 0) = Complex(0, 0.8);
    const auto s = schmidt_spectrum(BipartiteState(3, 3, v));
    CHECK(std::abs(s.coefficients[0] - 0.8) < 1e-15);
    CHECK(std::abs(s.coefficients[1] - 0.6) < 1e-15);
    CHECK(s.rank() == 2);
}

TEST_CASE("partial traces")
{
    std::mt19937_64 rng(17);
    const std::size_t da = 3, db = 4;
    const auto psi = BipartiteState::normalized(da, db, gaussian_vector(da * db, rng));
    const auto& v = psi.amplitudes();
    oracle::Mat rho_a = oracle::Mat::Zero(da, da), rho_b = oracle::Mat::Zero(db, db);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t a2 = 0; a2 < da; ++a2)
            for (std::size_t b = 0; b < db; ++b)
                rho_a(a, a2) += v(a * db + b) * std::conj(v(a2 * db + b));
    for (std::size_t b = 0; b < db; ++b)
        for (std::size_t b2 = 0; b2 < db; ++b2)
            for (std::size_t a = 0; a < da; ++a)
                rho_b(b, b2) += v(a * db + b) * std::conj(v(a * db + b2));
    CHECK(oracle::max_abs(partial_trace(psi, Side::B) - rho_a) < 1e-14);
    CHECK(oracle::max_abs(partial_trace(psi, Side::A) - rho_b) < 1e-14);
}

TEST_CASE("tensor_states regroups as (A1 A2)(B1 B2)")
{
    const auto phi = maximally_entangled(2);
    const auto psi = maximally_entangled(3);
    const auto joint = tensor_states(phi, psi);
    CHECK(joint.dim_a() == 6);
    CHECK(joint.dim_b() == 6);
    const auto s = schmidt_spectrum(joint);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(s.coefficients[i] - 1.0 / std::sqrt(6.0)) < 1e-14);
    }
    // Regrouped amplitudes equal the Kronecker product of coefficient matrices.
    CHECK(oracle::max_abs(joint.matrix() - oracle::kron(phi.matrix(), psi.matrix())) < 1e-15);
}

TEST_CASE("haar_unitary is unitary and seed-deterministic")
{
    std::mt19937_64 r1(42), r2(42);
    const auto u = haar_unitary(5, r1);
    const auto v = haar_unitary(5, r2);
    CHECK(is_unitary(u));
    CHECK(distance(u, v) == 0.0);
}

TEST_CASE("support_basis spans the positive eigenspace")
{
    std::mt19937_64 rng(23);
    const ComplexMatrix u = haar_unitary(5, rng);
    ComplexMatrix d = ComplexMatrix::Zero(5, 5);
    d(0, 0) = 0.5;
    d(1, 1) = 0.3;
    d(2, 2) = 0.2;
    const ComplexMatrix rho = u * d * u.adjoint();
    const ComplexMatrix basis = support_basis(rho);
    CHECK(basis.cols() == 3);
    const ComplexMatrix proj = basis * basis.adjoint();
    CHECK(distance(proj * rho, rho) < 1e-12);
}

}  // TEST_SUITE
