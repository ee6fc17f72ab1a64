// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "bellkit/error.hpp"
#include "bellkit/satwap.hpp"
#include "oracles.hpp"

using namespace bellkit;

namespace {

// <psi|O|psi> and the sum-of-squares side (1/2) sum ||M^dagger psi||^2, both
// from the oracle matrices.
struct OracleGap {
    double value;
    double sos;
};

OracleGap oracle_gap(std::size_t d, const oracle::Mat& a0, const oracle::Mat& a1,
                     const oracle::Mat& b0, const oracle::Mat& b1, const oracle::Vec& psi)
{
    const oracle::Mat o = oracle::satwap_operator(d, a0, a1, b0, b1);
    OracleGap g{psi.dot(o * psi).real(), 0.0};
    const oracle::Mat ia = oracle::Mat::Identity(a0.rows(), a0.rows());
    const oracle::Mat ib = oracle::Mat::Identity(b0.rows(), b0.rows());
    for (std::size_t k = 1; k < d; ++k) {
        const int ki = int(k);
        const auto rk = oracle::r(d, k), rb = std::conj(rk);
        const oracle::Mat c0 =
            rk * oracle::mpow(b0, -ki) + rb * oracle::omega(d, double(k)) * oracle::mpow(b1, -ki);
        const oracle::Mat c1 = rb * oracle::mpow(b0, -ki) + rk * oracle::mpow(b1, -ki);
        const oracle::Mat m0 = oracle::kron(oracle::mpow(a0, ki), ib) - oracle::kron(ia, c0.adjoint());
        const oracle::Mat m1 = oracle::kron(oracle::mpow(a1, ki), ib) - oracle::kron(ia, c1.adjoint());
        g.sos += 0.5 * ((m0.adjoint() * psi).squaredNorm() + (m1.adjoint() * psi).squaredNorm());
    }
    return g;
}

}  // namespace

TEST_SUITE("satwap") {

TEST_CASE("coefficients r_k and conjugate symmetry")
{
    for (std::size_t d = 2; d <= 7; ++d) {
        const auto c = satwap::coefficients(d);
        for (std::size_t k = 1; k < d; ++k) {
            CHECK(std::abs(c.r_k(k) - oracle::r(d, k)) < 1e-15);
            // Both printed forms of r_k agree.
            const auto alt = oracle::cd(0.5, -0.5) * oracle::omega(d, k / 4.0);
            CHECK(std::abs(c.r_k(k) - alt) < 1e-15);
            CHECK(std::abs(c.r_bar(k) - c.r_k(d - k)) < 1e-15);
        }
    }
}

TEST_CASE("canonical observables equal the explicit formulas")
{
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto c = satwap::canonical_satwap(d);
        const auto o = oracle::satwap_canonical(d);
        CHECK(oracle::max_abs(c.strategy.a0 - o.a0) < 1e-14);
        CHECK(oracle::max_abs(c.strategy.a1 - o.a1) < 1e-14);
        CHECK(oracle::max_abs(c.strategy.b0 - o.b0) < 1e-14);
        CHECK(oracle::max_abs(c.strategy.b1 - o.b1) < 1e-14);
        CHECK((c.strategy.state.amplitudes() - o.phi).norm() < 1e-14);
        for (const auto* m : {&o.a0, &o.a1, &o.b0, &o.b1}) {
            CHECK(oracle::max_abs(oracle::mpow(*m, int(d)) - oracle::Mat::Identity(d, d)) < 1e-12);
        }
    }
}

TEST_CASE("operator matches the defining sum and canonical value is 2(d-1)")
{
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto o = oracle::satwap_canonical(d);
        const auto c = satwap::canonical_satwap(d);
        const ComplexMatrix op = satwap::satwap_operator(d, c.strategy.a0, c.strategy.a1,
                                                         c.strategy.b0, c.strategy.b1);
        const oracle::Mat ref = oracle::satwap_operator(d, o.a0, o.a1, o.b0, o.b1);
        CHECK(oracle::max_abs(op - ref) < 1e-12);
        CHECK(oracle::max_abs(ref - ref.adjoint()) < 1e-12);
        CHECK(std::abs(o.phi.dot(ref * o.phi).real() - 2.0 * (d - 1)) < 1e-12);
        CHECK(std::abs(satwap::satwap_value(c.strategy) - 2.0 * (d - 1)) < 1e-12);
        CHECK(satwap::quantum_bound(d) == 2.0 * (d - 1));
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(ref);
        CHECK(std::abs(es.eigenvalues()(d * d - 1) - 2.0 * (d - 1)) < 1e-9);
    }
}

TEST_CASE("functional on correlations equals the operator expectation")
{
    std::mt19937_64 rng(101);
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto f = satwap::satwap_functional(d);
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = satwap::random_observable_strategy(d, d + 1, rng);
            const double via_table = bell_value(f, correlation_from_strategy(s.to_strategy()));
            const auto g = oracle_gap(d, s.a0, s.a1, s.b0, s.b1, s.state.amplitudes());
            CHECK(std::abs(via_table - g.value) < 1e-10);
            CHECK(std::abs(satwap::satwap_value(s) - g.value) < 1e-10);
            // Imaginary part vanishes for the Hermitian functional.
            CHECK(std::abs(evaluate(f, correlation_from_strategy(s.to_strategy())).imag()) < 1e-12);
        }
    }
}

TEST_CASE("functional coefficients follow c(a,b,s,t) = sum_k coef_st,k w^{k(a-b)}")
{
    const std::size_t d = 3;
    const auto f = satwap::satwap_functional(d);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    oracle::cd c = 0;
                    for (std::size_t k = 1; k < d; ++k) {
                        const auto rk = oracle::r(d, k), rb = std::conj(rk);
                        const oracle::cd coef = s == 0 ? (t == 0 ? rk : rb * oracle::omega(d, k))
                                                       : (t == 0 ? rb : rk);
                        c += coef * oracle::omega(d, double(k) * (double(a) - double(b)));
                    }
                    CHECK(std::abs(f.coefficient(a, b, s, t) - c) < 1e-12);
                }
}

TEST_CASE("SOS gap identity on random strategies")
{
    std::mt19937_64 rng(202);
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = satwap::random_observable_strategy(d, 2 + trial % 3, rng);
            const auto cert = satwap::sos_certificate(s);
            const auto g = oracle_gap(d, s.a0, s.a1, s.b0, s.b1, s.state.amplitudes());
            CHECK(std::abs(cert.value - g.value) < 1e-10);
            CHECK(std::abs(cert.sos_value - g.sos) < 1e-10);
            CHECK(cert.identity_error() < 1e-9);
            CHECK(std::abs(2.0 * (d - 1) - g.value - g.sos) < 1e-9);
            CHECK(cert.gap >= -1e-9);
            CHECK(cert.gram_error < 1e-10);
        }
    }
}

TEST_CASE("canonical certificate residuals vanish")
{
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto cert = satwap::sos_certificate(satwap::canonical_satwap(d).strategy, true);
        CHECK(cert.max_residual() < 1e-10);
        CHECK(std::abs(cert.gap) < 1e-10);
        REQUIRE(cert.m.size() == 2);
        REQUIRE(cert.m[0].size() == d - 1);
    }
}

TEST_CASE("operator identities hold to 1e-12")
{
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto rep = satwap::operator_identities(d);
        CHECK(rep.max_residual() < 1e-12);
        const auto c = satwap::canonical_satwap(d);
        for (std::size_t k = 1; k <= d; ++k) {
            const int ki = int(k);
            CHECK(oracle::max_abs(satwap::closed_form_b1_power(d, k) -
                                  oracle::mpow(c.strategy.b1, ki)) < 1e-12);
            CHECK(oracle::max_abs(satwap::closed_form_a_power(d, 0, k) -
                                  oracle::mpow(c.strategy.a0, ki)) < 1e-12);
            CHECK(oracle::max_abs(satwap::closed_form_a_power(d, 1, k) -
                                  oracle::mpow(c.strategy.a1, ki)) < 1e-12);
        }
    }
}

TEST_CASE("C_{s,k}^T = A_s^{-k} and the Gram sum is 2(d-1) I")
{
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto o = oracle::satwap_canonical(d);
        oracle::Mat gram = oracle::Mat::Zero(d, d);
        for (std::size_t k = 1; k < d; ++k) {
            const int ki = int(k);
            const auto rk = oracle::r(d, k), rb = std::conj(rk);
            const oracle::Mat c0 = rk * oracle::mpow(o.b0, -ki) +
                                   rb * oracle::omega(d, double(k)) * oracle::mpow(o.b1, -ki);
            const oracle::Mat c1 = rb * oracle::mpow(o.b0, -ki) + rk * oracle::mpow(o.b1, -ki);
            CHECK(oracle::max_abs(oracle::Mat(c0.transpose()) - oracle::mpow(o.a0, -ki)) < 1e-12);
            CHECK(oracle::max_abs(oracle::Mat(c1.transpose()) - oracle::mpow(o.a1, -ki)) < 1e-12);
            gram += c0.adjoint() * c0 + c1.adjoint() * c1;
        }
        CHECK(oracle::max_abs(gram - 2.0 * (d - 1) * oracle::Mat::Identity(d, d)) < 1e-12);
    }
}

TEST_CASE("local bound by enumeration is strictly below 2(d-1)")
{
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto f = satwap::satwap_functional(d);
        std::vector<double> c;
        for (const auto& x : f.coefficients) c.push_back(x.real());
        const double ref = oracle::lhv_full(2, 2, d, d, c);
        CHECK(std::abs(lhv_max_bruteforce(f).value - ref) < 1e-12);
        CHECK(ref < 2.0 * (d - 1) - 1e-3);
    }
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(satwap::coefficients(1), Error);
    const auto c = satwap::canonical_satwap(3);
    try {
        satwap::satwap_operator(3, c.strategy.a0, c.strategy.a1, c.strategy.b0,
                                oracle::Mat::Identity(3, 3) * oracle::cd(0, 1));
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDValuedObservable);
    }
}

}  // TEST_SUITE
