// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// its budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bellkit/embezzlement.hpp"
#include "bellkit/qqs_witness.hpp"
#include "bellkit/satwap.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/selftest.hpp"
#include "bellkit/tilted_chsh.hpp"
#include "oracles.hpp"

using namespace bellkit;

namespace {

// Correlation checks and observable residuals gathered by criteria 1-9 for
// the global property suite.
struct Ledger {
    std::vector<std::pair<std::string, CorrelationCheck>> correlations;
    std::vector<std::pair<std::string, double>> observables;

    void correlation(const std::string& name, const Correlation& p)
    {
        correlations.emplace_back(name, p.check());
    }
    void observable(const std::string& name, const ComplexMatrix& u, std::size_t d)
    {
        observables.emplace_back(name,
                                 DValuedObservable::from_unitary(u, d, 1e-8).invariant_residual());
    }
    void measurement(const std::string& name, const Measurement& m)
    {
        observables.emplace_back(name, DValuedObservable::from_projectors(m, 1e-8).invariant_residual());
    }
};

Ledger ledger;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double max_err(const std::vector<double>& a, const std::vector<double>& b)
{
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

void criterion1(Outcome& o)
{
    double worst_q = 0, worst_l = 0;
    for (int i = 0; i < 8; ++i) {
        const double beta = 0.25 * i;
        const auto canon = tilted::canonical_strategy(tilted::params_from_beta(beta));
        const auto p = correlation_from_strategy(canon.strategy);
        ledger.correlation("tilted beta=" + std::to_string(beta), p);
        for (const auto& m : canon.strategy.alice) ledger.measurement("tilted A", m);
        for (const auto& m : canon.strategy.bob) ledger.measurement("tilted B", m);
        const auto f = tilted::tilted_functional(beta);
        worst_q = std::max(worst_q, std::abs(bell_value(f, p) - std::sqrt(8 + 2 * beta * beta)));
        worst_l = std::max(worst_l, std::abs(lhv_max_bruteforce(f).value - (2 + beta)));
    }
    o.detail << "max |value - sqrt(8+2b^2)| = " << worst_q << ", max |local - (2+b)| = " << worst_l;
    o.require(worst_q <= 1e-12, "quantum value");
    o.require(worst_l <= 1e-12, "local bound");
}

void criterion2(Outcome& o)
{
    const auto c = satwap::canonical_satwap(3);
    const auto& s = c.strategy;
    const auto p = correlation_from_strategy(s.to_strategy());
    ledger.correlation("satwap d=3", p);
    for (const auto* u : {&s.a0, &s.a1, &s.b0, &s.b1}) ledger.observable("satwap d=3", *u, 3);
    const auto f = satwap::satwap_functional(3);
    const double value = bell_value(f, p);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        satwap::satwap_operator(3, s.a0, s.a1, s.b0, s.b1), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues()(8);
    const LhvResult lhv = lhv_max_bruteforce(f);
    const double formula = satwap::local_bound_formula(3);
    o.detail << "value = " << value << ", top eigenvalue = " << top << ", local bound = " << lhv.value
             << " over " << lhv.deterministic_strategies << " strategies, printed formula = " << formula
             << " (reference (2 sqrt3 - 1)/2 = " << (2 * std::sqrt(3.0) - 1) / 2 << ")";
    o.require(std::abs(value - 4) <= 1e-12, "canonical value");
    o.require(std::abs(top - 4) <= 1e-9, "top eigenvalue");
    o.require(lhv.deterministic_strategies == 81, "81 strategies");
    o.require(lhv.value < 4, "local bound below 4");
    o.require(std::abs(formula - (2 * std::sqrt(3.0) - 1) / 2) < 1e-12, "formula reported");
}

void criterion3(Outcome& o)
{
    double worst = 0, canon = 0;
    std::mt19937_64 rng(2026);
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int i = 0; i < 100; ++i) {
            const auto s = satwap::random_observable_strategy(d, d + i % 3, rng);
            worst = std::max(worst, satwap::sos_certificate(s).identity_error());
        }
        canon = std::max(canon, satwap::sos_certificate(satwap::canonical_satwap(d).strategy).max_residual());
    }
    o.detail << "max gap identity error = " << worst << " (300 strategies), canonical residual = " << canon;
    o.require(worst <= 1e-9, "gap identity");
    o.require(canon < 1e-10, "canonical residuals");
}

void criterion4(Outcome& o)
{
    double worst = 0;
    for (std::size_t d = 2; d <= 5; ++d) {
        worst = std::max(worst, satwap::operator_identities(d).max_residual());
        const auto c = satwap::canonical_satwap(d);
        for (const auto* u : {&c.strategy.a0, &c.strategy.a1, &c.strategy.b0, &c.strategy.b1})
            ledger.observable("satwap d=" + std::to_string(d), *u, d);
    }
    o.detail << "max identity residual over d = 2..5: " << worst;
    o.require(worst <= 1e-12, "identities");
}

void criterion5(Outcome& o)
{
    const std::vector<double> junk{0.8, 0.6};
    double worst_res = 0, worst_fid = 0, worst_spec = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto planted = selftest::planted_instance(3, junk, 1, 1, seed);
        const auto ex = selftest::extract_isometry(planted.strategy);
        worst_res = std::max(worst_res, ex.max_operator_residual());
        worst_fid = std::max(worst_fid, 1 - ex.state_fidelity);
        const auto& got = ex.junk_spectrum.coefficients;
        for (std::size_t i = 0; i < junk.size(); ++i)
            worst_spec = std::max(worst_spec, std::abs((i < got.size() ? got[i] : 0.0) - junk[i]));
        for (std::size_t i = junk.size(); i < got.size(); ++i) worst_spec = std::max(worst_spec, got[i]);
        ledger.correlation("planted seed " + std::to_string(seed),
                           correlation_from_strategy(planted.strategy.to_strategy()));
    }
    o.detail << "max residual = " << worst_res << ", max 1 - fidelity = " << worst_fid
             << ", max junk spectrum error = " << worst_spec << " (10 seeds)";
    o.require(worst_res < 1e-7, "residuals");
    o.require(worst_fid < 1e-7, "fidelity");
    o.require(worst_spec < 1e-7, "junk spectrum");
}

void criterion6(Outcome& o)
{
    const double alpha = 0.5;
    const auto w = qqs::witness_report(alpha, 12);
    const auto id = qqs::proof_identity_report(alpha, 12);
    ledger.correlation("witness K=12", w.p);
    const auto model = qqs::witness_model(alpha, 12);
    for (const auto& m : model.strategy().alice) ledger.measurement("witness A", m);
    for (const auto& m : model.strategy().bob) ledger.measurement("witness B", m);
    const double ck = qqs::truncated_normalization(alpha, 12);
    const double drift =
        qqs::witness_correlation(qqs::witness_model(alpha, 10)).max_distance(w.p);
    o.detail << "p(a=1|s=0) = " << w.marginal_a1_s0 << ", block distances " << w.block01_distance << " / "
             << w.block23_distance << ", identities " << id.a01_identity_residual << " / "
             << id.marginal_identity_residual << ", overlap = " << id.overlap_value << " vs 1/C_K = " << 1 / ck
             << " (lower bound " << id.overlap_lower_bound << "), drift K=10->12 = " << drift;
    o.require(std::abs(w.marginal_a1_s0 - 0.2) <= 1e-6, "marginal");
    o.require(w.block01_distance <= 1e-5 && w.block23_distance <= 1e-5, "blocks");
    o.require(id.a01_identity_residual < 1e-8 && id.marginal_identity_residual < 1e-8, "proof identities");
    o.require(std::abs(id.overlap_value - 1 / ck) <= 1e-10, "overlap = 1/C_K");
    o.require(id.overlap_value >= 0.36 && std::abs(id.overlap_lower_bound - 0.36) < 1e-12, "overlap >= 0.36");
    o.require(drift < 1e-5, "truncation drift");
}

void criterion7(Outcome& o)
{
    const auto t = qqs::ternary_report(0.5, 12);
    ledger.correlation("ternary K=12", t.q);
    for (const auto& m : qqs::ternary_measurements(qqs::witness_model(0.5, 12)))
        ledger.measurement("ternary A", m);
    double rel = 0;
    for (double r : t.relation_residuals) rel = std::max(rel, r);
    o.detail << "q(a=2|s in {1,3}) = " << t.outcome2_binary_inputs << ", max relation residual = " << rel;
    o.require(t.outcome2_binary_inputs <= 1e-12, "outcome 2 on binary inputs");
    o.require(rel < 1e-10, "relations");
}

void criterion8(Outcome& o)
{
    std::vector<double> dist;
    double third = 0, out2 = 0, sat = 0, epsform = 0;
    bool bound = true;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto r = embezzle::correlation_pn(n);
        ledger.correlations.emplace_back("embezzle n=" + std::to_string(n), r.check);
        third = std::max({third, std::abs(r.p11_20 - 1.0 / 3), std::abs(r.marginal_a1_s2 - 1.0 / 3),
                          std::abs(r.marginal_b1_t0 - 1.0 / 3)});
        out2 = std::max(out2, r.outcome2_block23);
        sat = std::max(sat, std::abs(r.satwap_block_value - 4));
        const auto id = embezzle::embezzle_identity_check(n);
        epsform = std::max(epsform, std::abs(id.epsilon_norm_squared - id.closed_form));
        bound = bound && id.epsilon_norm_squared <= 2.0 / n;
        dist.push_back(r.block23_distance);
    }
    const auto reg = embezzle::register_measurements();
    for (const auto& m : reg.alice) ledger.measurement("embezzle register A", m);
    for (const auto& m : reg.bob) ledger.measurement("embezzle register B", m);
    bool decreasing = true;
    for (std::size_t i = 1; i < dist.size(); ++i) decreasing = decreasing && dist[i] < dist[i - 1];
    o.detail << "max |1/3 entries| err = " << third << ", outcome-2 = " << out2 << ", SATWAP block err = " << sat
             << ", |eps^2 - closed form| = " << epsform << ", d_n =";
    for (double d : dist) o.detail << " " << d;
    o.require(third <= 1e-12, "one-third entries");
    o.require(out2 <= 1e-12, "outcome 2");
    o.require(sat <= 1e-12, "SATWAP block");
    o.require(epsform <= 1e-12 && bound, "eps norm");
    o.require(decreasing && dist[4] < dist[0] / 2, "distance decreasing, d5 < d1/2");
}

void criterion9(Outcome& o)
{
    seesaw::SeesawConfig cfg;
    cfg.restarts = 20;
    struct Case {
        const char* name;
        BellFunctional f;
        double target;
        std::size_t dim;
    };
    const std::vector<Case> cases{
        {"CHSH", tilted::chsh_functional(), 2 * std::sqrt(2.0), 2},
        {"tilted beta=1", tilted::tilted_functional(1.0), std::sqrt(10.0), 2},
        {"SATWAP d=3", satwap::satwap_functional(3), 4.0, 3},
    };
    bool monotone = true;
    for (const auto& c : cases) {
        cfg.dim_a = cfg.dim_b = c.dim;
        const auto r = seesaw::seesaw_maximize(c.f, cfg);
        ledger.correlation(std::string("seesaw ") + c.name, correlation_from_strategy(r.strategy));
        monotone = monotone && r.max_trace_decrease <= 1e-12;
        o.detail << c.name << " " << r.value << " (gap " << c.target - r.value << ") ";
        o.require(std::abs(r.value - c.target) <= 1e-6, c.name);
        o.require(r.value <= c.target + 1e-9, std::string(c.name) + " above bound");
    }
    o.require(monotone, "monotone trace");
}

void criterion10(Outcome& o)
{
    double corr = 0, obs = 0;
    std::string worst_corr, worst_obs;
    for (const auto& [name, c] : ledger.correlations) {
        const double e = std::max({c.normalization_error, c.signaling_error, -c.min_entry, c.max_entry - 1});
        if (e > corr) {
            corr = e;
            worst_corr = name;
        }
    }
    for (const auto& [name, r] : ledger.observables) {
        if (r > obs) {
            obs = r;
            worst_obs = name;
        }
    }
    std::mt19937_64 rng(10);
    double local = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t da = 1 + trial % 8, db = 1 + (trial / 8) % 8;
        const auto psi = BipartiteState::normalized(da, db, gaussian_vector(da * db, rng));
        const ComplexMatrix a = ComplexMatrix::Random(da, da), b = ComplexMatrix::Random(db, db);
        local = std::max(local, (apply_local(a, Side::A, psi) -
                                 oracle::kron(a, oracle::Mat::Identity(db, db)) * psi.amplitudes())
                                    .cwiseAbs()
                                    .maxCoeff());
        local = std::max(local, (apply_local(b, Side::B, psi) -
                                 oracle::kron(oracle::Mat::Identity(da, da), b) * psi.amplitudes())
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    o.detail << ledger.correlations.size() << " correlations, worst " << corr << " (" << worst_corr << "); "
             << ledger.observables.size() << " observables, worst " << obs << " (" << worst_obs
             << "); apply_local max error " << local;
    o.require(corr <= 1e-9, "correlations");
    o.require(obs <= 1e-10, "observables");
    o.require(local <= 1e-12, "apply_local");
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        double budget;  // seconds
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> all{
        {1, 1, criterion1},  {2, 1, criterion2},   {3, 30, criterion3}, {4, 5, criterion4},
        {5, 30, criterion5}, {6, 10, criterion6},  {7, 10, criterion7}, {8, 120, criterion8},
        {9, 60, criterion9}, {10, 60, criterion10},
    };
    int failed = 0;
    for (const auto& c : all) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget) {
            o.pass = false;
            o.detail << " [over time budget " << c.budget << " s]";
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2d: %s (%.3f s / %.0f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, c.budget,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed;
}
