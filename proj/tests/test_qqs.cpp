// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "bellkit/error.hpp"
#include "bellkit/qqs_witness.hpp"
#include "oracles.hpp"

using namespace bellkit;

namespace {

// Index i in [-2K, 2K+1] sits at position i + 2K.
struct Geo {
    std::size_t K;
    double alpha;
    long lo() const { return -2 * long(K); }
    long hi() const { return 2 * long(K) + 1; }
    std::size_t dim() const { return std::size_t(hi() - lo() + 1); }
    std::size_t pos(long i) const { return std::size_t(i - lo()); }
    double amp(long i) const { return std::abs(i) <= long(K) ? std::pow(alpha, std::abs(i)) : 0.0; }
};

// Pairs (near, far) of the two pairings, the near member carrying bit 0.
std::vector<std::pair<long, long>> pairs(const Geo& g, int variant)
{
    std::vector<std::pair<long, long>> out;
    const long K = long(g.K);
    if (variant == 0) {
        for (long j = -K; j <= K; ++j)
            out.push_back(j >= 0 ? std::pair{2 * j, 2 * j + 1} : std::pair{2 * j + 1, 2 * j});
    } else {
        for (long j = -K + 1; j <= K; ++j)
            out.push_back(j > 0 ? std::pair{2 * j - 1, 2 * j} : std::pair{2 * j, 2 * j - 1});
    }
    return out;
}

// W (o (x) I) W^dagger, identity on indices outside every pair.
oracle::Mat lifted(const Geo& g, int variant, const oracle::Mat& o)
{
    oracle::Mat m = oracle::Mat::Identity(g.dim(), g.dim());
    for (const auto& [n, f] : pairs(g, variant)) {
        const std::size_t idx[2] = {g.pos(n), g.pos(f)};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) m(idx[x], idx[y]) = o(x, y);
    }
    return m;
}

// Full (4,4,2,2) table via p = tr(M^dagger P M Q^T).
std::vector<double> witness_table(const Geo& g)
{
    const auto t = oracle::tilted(tilted::params_from_alpha(g.alpha).beta);
    oracle::Mat psi = oracle::Mat::Zero(g.dim(), g.dim());
    double c = 0;
    for (long i = g.lo(); i <= g.hi(); ++i) {
        psi(g.pos(i), g.pos(i)) = g.amp(i);
        c += g.amp(i) * g.amp(i);
    }
    psi /= std::sqrt(c);
    const oracle::Mat alice_obs[2] = {oracle::sz(), oracle::sx()};
    const oracle::Mat bob_obs[2] = {std::cos(t.mu) * oracle::sz() + std::sin(t.mu) * oracle::sx(),
                                    std::cos(t.mu) * oracle::sz() - std::sin(t.mu) * oracle::sx()};
    std::vector<oracle::Mat> a(4), b(4);
    for (int s = 0; s < 4; ++s) {
        a[s] = lifted(g, s < 2 ? 0 : 2, alice_obs[s % 2]);
        b[s] = lifted(g, s < 2 ? 0 : 2, bob_obs[s % 2]);
    }
    const oracle::Mat id = oracle::Mat::Identity(g.dim(), g.dim());
    std::vector<double> out;
    for (int s = 0; s < 4; ++s)
        for (int tt = 0; tt < 4; ++tt)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    const oracle::Mat p = (id + (x ? -1.0 : 1.0) * a[s]) / 2.0;
                    const oracle::Mat q = (id + (y ? -1.0 : 1.0) * b[tt]) / 2.0;
                    out.push_back((psi.adjoint() * p * psi * q.transpose()).trace().real());
                }
    return out;
}

}  // namespace

TEST_SUITE("qqs_witness") {

TEST_CASE("truncated normalization")
{
    for (double alpha : {0.3, 0.5, 0.8}) {
        for (std::size_t K : {2, 4, 12}) {
            double c = 0;
            for (long i = -long(K); i <= long(K); ++i) c += std::pow(alpha, 2 * std::abs(i));
            CHECK(std::abs(qqs::truncated_normalization(alpha, K) - c) < 1e-14);
            const auto psi = qqs::truncated_psi(alpha, K);
            CHECK(psi.state.dim_a() == qqs::index_dimension(K));
            CHECK(qqs::index_dimension(K) == 4 * K + 2);
        }
        CHECK(std::abs(qqs::limit_normalization(alpha) - (1 + alpha * alpha) / (1 - alpha * alpha)) <
              1e-14);
    }
}

TEST_CASE("pairing isometries follow the defining cases")
{
    const Geo g{3, 0.5};
    for (int variant : {0, 2}) {
        const auto w = qqs::pairing_isometry(variant == 0 ? qqs::Pairing::W0 : qqs::Pairing::W2, g.K);
        const oracle::Mat& m = w.matrix;
        CHECK(oracle::max_abs(m.adjoint() * m - oracle::Mat::Identity(m.cols(), m.cols())) < 1e-15);
        for (const auto& [n, f] : pairs(g, variant)) {
            const long j = variant == 0 ? (n >= 0 ? n / 2 : (n - 1) / 2) : (n > 0 ? (n + 1) / 2 : n / 2);
            CHECK(std::abs(m(g.pos(n), w.column(0, j)) - 1.0) < 1e-15);
            CHECK(std::abs(m(g.pos(f), w.column(1, j)) - 1.0) < 1e-15);
        }
    }
    const auto w2 = qqs::pairing_isometry(qqs::Pairing::W2, 3);
    CHECK(w2.unpaired == std::vector<long>{-6, 7});
}

TEST_CASE("witness correlation matches the direct construction")
{
    for (double alpha : {0.4, 0.5, 0.7}) {
        for (std::size_t K : {2, 3, 6}) {
            const Geo g{K, alpha};
            const auto ref = witness_table(g);
            const auto p = qqs::witness_correlation(qqs::witness_model(alpha, K));
            double err = 0;
            for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::abs(ref[i] - p.table()[i]));
            CHECK(err < 1e-13);
            CHECK(p.check().passes(1e-12));
        }
    }
}

TEST_CASE("blocks converge to the tilted table and the marginal to alpha^2/(1+alpha^2)")
{
    const double alpha = 0.5;
    const auto t = oracle::tilted(tilted::params_from_alpha(alpha).beta);
    const auto tilted_ref = oracle::correlation(t.psi, t.alice, t.bob);
    const auto rep = qqs::witness_report(alpha, 12);
    CHECK(std::abs(rep.marginal_a1_s0 - 0.2) < 1e-6);
    const auto& p = rep.p;
    for (std::size_t offset : {0, 2}) {
        double err = 0;
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t tt = 0; tt < 2; ++tt)
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b)
                        err = std::max(err, std::abs(p(a, b, s + offset, tt + offset) -
                                                     tilted_ref[((s * 2 + tt) * 2 + a) * 2 + b]));
        CHECK(err < 1e-5);
        CHECK(std::abs(err - (offset ? rep.block23_distance : rep.block01_distance)) < 1e-12);
    }
    const double qmax = tilted::quantum_maximum(tilted::params_from_alpha(alpha).beta);
    CHECK(std::abs(rep.block01_value - qmax) < 1e-5);
    CHECK(std::abs(rep.block23_value - qmax) < 1e-5);
}

TEST_CASE("truncation drift decays like alpha^{2K}")
{
    const double alpha = 0.5;
    double prev = 1.0;
    for (std::size_t K : {4, 6, 8, 10}) {
        const auto rep = qqs::witness_report(alpha, K);
        CHECK(rep.truncation_drift < prev);
        prev = rep.truncation_drift;
        CHECK(rep.drift_constant < 1.0);
    }
    // Direct sup distance between K = 10 and K = 12 tables.
    const auto a = witness_table(Geo{10, alpha});
    const auto b = witness_table(Geo{12, alpha});
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    CHECK(d < 1e-5);
    CHECK(std::abs(d - qqs::witness_report(alpha, 10).truncation_drift) < 1e-13);
}

TEST_CASE("proof identities and the overlap 1/C_K")
{
    for (double alpha : {0.5, 0.6}) {
        const std::size_t K = 12;
        const auto id = qqs::proof_identity_report(alpha, K);
        double c = 0;
        for (long i = -long(K); i <= long(K); ++i) c += std::pow(alpha, 2 * std::abs(i));
        CHECK(std::abs(id.overlap_value - 1.0 / c) < 1e-10);
        CHECK(id.a01_identity_residual < 1e-8);
        CHECK(id.marginal_identity_residual < 1e-8);
        CHECK(id.correlation_identity_residual < 1e-8);
        CHECK(id.m_square_residual < 1e-12);
        const double climit = (1 + alpha * alpha) / (1 - alpha * alpha);
        CHECK(std::abs(id.overlap_lower_bound - 1.0 / (climit * climit)) < 1e-14);
        CHECK(id.overlap_value >= id.overlap_lower_bound);
    }
}

TEST_CASE("ternary variant relations")
{
    const auto rep = qqs::ternary_report(0.5, 8);
    CHECK(rep.q.check().passes(1e-12));
    CHECK(rep.outcome2_binary_inputs < 1e-12);
    for (double r : rep.relation_residuals) CHECK(r < 1e-10);
    for (double r : rep.projector_relation_residuals) CHECK(r < 1e-10);
    CHECK(rep.binary_input_residual < 1e-12);
    CHECK(rep.completeness_residual < 1e-12);
    CHECK(rep.q.scenario() == Scenario{3, 4, 3, 2});
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(qqs::truncated_psi(1.0, 3), Error);
    CHECK_THROWS_AS(qqs::truncated_psi(0.5, 0), Error);
}

}  // TEST_SUITE
