// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <Eigen/Eigenvalues>

#include "bellkit/embezzlement.hpp"
#include "bellkit/error.hpp"
#include "bellkit/qqs_witness.hpp"
#include "bellkit/satwap.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/selftest.hpp"
#include "bellkit/tilted_chsh.hpp"

namespace bellkit {

namespace {

constexpr std::size_t kMaxSatwapD = 12;
constexpr std::size_t kMaxWitnessK = 200;

// Typed access to the parameter object. Every key read is recorded so that
// leftovers can be rejected, and the resolved values end up in the report.
class Params {
public:
    explicit Params(const Json& raw) : raw_(raw.is_null() ? Json::object() : raw)
    {
        if (!raw_.is_object()) {
            throw ParameterError("parameters", "a JSON object");
        }
    }

    bool has(const std::string& key) const { return raw_.contains(key); }

    double real(const std::string& key, double fallback)
    {
        double v = fallback;
        if (raw_.contains(key)) {
            if (!raw_.at(key).is_number()) {
                throw ParameterError(key, "a number");
            }
            v = raw_.at(key).get<double>();
        }
        if (!std::isfinite(v)) {
            throw ParameterError(key, "finite");
        }
        resolved_[key] = v;
        return v;
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback)
    {
        std::uint64_t v = fallback;
        if (raw_.contains(key)) {
            const Json& j = raw_.at(key);
            if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                           j.get<std::int64_t>() < 0)) {
                throw ParameterError(key, "a non-negative integer");
            }
            v = j.get<std::uint64_t>();
        }
        resolved_[key] = v;
        return v;
    }

    bool flag(const std::string& key, bool fallback)
    {
        bool v = fallback;
        if (raw_.contains(key)) {
            if (!raw_.at(key).is_boolean()) {
                throw ParameterError(key, "a boolean");
            }
            v = raw_.at(key).get<bool>();
        }
        resolved_[key] = v;
        return v;
    }

    std::string text(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed)
    {
        std::string v = fallback;
        if (raw_.contains(key)) {
            if (!raw_.at(key).is_string()) {
                throw ParameterError(key, "a string");
            }
            v = raw_.at(key).get<std::string>();
        }
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) {
                list += (list.empty() ? "" : ", ") + a;
            }
            throw ParameterError(key, "one of " + list);
        }
        resolved_[key] = v;
        return v;
    }

    std::vector<double> reals(const std::string& key, const std::vector<double>& fallback)
    {
        std::vector<double> v = fallback;
        if (raw_.contains(key)) {
            const Json& j = raw_.at(key);
            if (!j.is_array() || j.empty() ||
                !std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); })) {
                throw ParameterError(key, "a non-empty array of numbers");
            }
            v = j.get<std::vector<double>>();
        }
        resolved_[key] = v;
        return v;
    }

    /// Throws InvalidParameter for keys outside `known`.
    void reject_unknown(const std::string& command, const std::set<std::string>& known) const
    {
        for (const auto& [key, value] : raw_.items()) {
            if (!known.count(key)) {
                throw ParameterError(key, "a known parameter of " + command);
            }
        }
    }

    const Json& resolved() const { return resolved_; }

private:
    Json raw_;
    Json resolved_ = Json::object();
};

void require(bool ok, const std::string& field, const std::string& constraint)
{
    if (!ok) {
        throw ParameterError(field, constraint);
    }
}

double top_eigenvalue(const ComplexMatrix& op)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (op + op.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues()(op.rows() - 1);
}

Json lhv_json(const LhvResult& r)
{
    return Json{{"value", r.value},
                {"alice_outputs", r.alice_outputs},
                {"bob_outputs", r.bob_outputs},
                {"deterministic_strategies", r.deterministic_strategies}};
}

Json check_json(const CorrelationCheck& c)
{
    return Json{{"normalization_error", c.normalization_error},
                {"signaling_error", c.signaling_error},
                {"min_entry", c.min_entry},
                {"max_entry", c.max_entry}};
}

void run_chsh_tilted(Params& p, Report& r)
{
    if (p.has("beta") || p.has("alpha")) {
        require(!(p.has("beta") && p.has("alpha")), "alpha", "not given together with beta");
        tilted::TiltedParams tp;
        if (p.has("alpha")) {
            const double alpha = p.real("alpha", 1.0);
            require(alpha > 0.0 && alpha <= 1.0, "alpha", "in (0, 1]");
            tp = tilted::params_from_alpha(alpha);
        } else {
            const double beta = p.real("beta", 0.0);
            require(beta >= 0.0 && beta < 2.0, "beta", "in [0, 2)");
            tp = tilted::params_from_beta(beta);
        }
        const auto canon = tilted::canonical_strategy(tp);
        const Correlation corr = correlation_from_strategy(canon.strategy);
        const BellFunctional f = tilted::tilted_functional(tp.beta);
        const double canonical_value = bell_value(f, corr);
        const double qmax = tilted::quantum_maximum(tp.beta);
        const LhvResult lhv = lhv_max_bruteforce(f);
        r.add("beta", Claim::Diagnostic, tp.beta);
        r.add("alpha", Claim::Diagnostic, tp.alpha);
        r.add("mu", Claim::Diagnostic, tp.mu);
        r.add("theta", Claim::Diagnostic, tp.theta);
        r.add("quantum_value", Claim::QuantumMaximum, qmax);
        r.add("canonical_value", Claim::QuantumMaximum, canonical_value);
        r.add("canonical_residual", Claim::QuantumMaximum, std::abs(canonical_value - qmax));
        r.add("operator_top_eigenvalue", Claim::QuantumMaximum,
              top_eigenvalue(tilted::tilted_operator(tp.beta, canon.a0, canon.a1, canon.b0,
                                                     canon.b1)));
        r.add("local_bound", Claim::LocalBound, lhv.value);
        r.add("local_bound_formula", Claim::LocalBound, tilted::local_maximum(tp.beta));
        r.add("local_strategy", Claim::LocalBound, lhv_json(lhv));
        r.add("gap", Claim::QuantumMaximum, qmax - lhv.value);
        r.add("correlation_check", Claim::Diagnostic, check_json(corr.check()));
        r.add("correlation", Claim::QuantumMaximum, correlation_table(corr));
        r.csv_table = "correlation";
        return;
    }
    const auto points = p.integer("points", 17);
    require(points >= 1 && points <= 10000, "points", "in [1, 10000]");
    const auto rows = tilted::sweep(tilted::beta_grid(points));
    std::vector<std::vector<double>> table;
    for (const auto& row : rows) {
        table.push_back({row.beta, row.alpha, row.quantum_value, row.local_bound, row.gap});
    }
    r.add("sweep", Claim::QuantumMaximum,
          table_json({"beta", "alpha", "quantum_value", "local_bound", "gap"}, table));
    r.csv_table = "sweep";
}

void run_satwap(Params& p, Report& r)
{
    const auto d = p.integer("d", 3);
    require(d >= 2 && d <= kMaxSatwapD, "d", "in [2, " + std::to_string(kMaxSatwapD) + "]");
    const bool certify = p.flag("certify", false);
    const auto canon = satwap::canonical_satwap(d);
    const auto& s = canon.strategy;
    const BellFunctional f = satwap::satwap_functional(d);
    const Correlation corr = correlation_from_strategy(s.to_strategy());
    r.add("d", Claim::Diagnostic, d);
    r.add("value", Claim::QuantumMaximum, satwap::satwap_value(s));
    r.add("functional_value", Claim::QuantumMaximum, bell_value(f, corr));
    r.add("quantum_bound", Claim::QuantumMaximum, satwap::quantum_bound(d));
    r.add("operator_top_eigenvalue", Claim::QuantumMaximum,
          top_eigenvalue(satwap::satwap_operator(d, s.a0, s.a1, s.b0, s.b1)));
    const LhvResult lhv = lhv_max_bruteforce(f);
    r.add("local_bound", Claim::LocalBound, lhv.value);
    r.add("local_strategy", Claim::LocalBound, lhv_json(lhv));
    r.add("local_bound_formula", Claim::Diagnostic, satwap::local_bound_formula(d));
    r.add("correlation_check", Claim::Diagnostic, check_json(corr.check()));
    r.add("correlation", Claim::QuantumMaximum, correlation_table(corr));
    r.csv_table = "correlation";
    if (!certify) {
        return;
    }
    const auto cert = satwap::sos_certificate(s);
    Json residuals = Json::array();
    for (std::size_t si = 0; si < cert.residuals.size(); ++si) {
        for (std::size_t k = 0; k < cert.residuals[si].size(); ++k) {
            residuals.push_back({{"s", si}, {"k", k + 1}, {"residual", cert.residuals[si][k]}});
        }
    }
    const auto ids = satwap::operator_identities(d);
    Json identity = Json::array();
    for (const auto& e : ids.entries) {
        identity.push_back({{"name", e.name}, {"k", e.k}, {"residual", e.residual}});
    }
    r.add("certificate", Claim::SosCertificate,
          Json{{"d", d},
               {"value", cert.value},
               {"gap", cert.gap},
               {"sos_value", cert.sos_value},
               {"identity_error", cert.identity_error()},
               {"gram_error", cert.gram_error},
               {"max_residual", cert.max_residual()},
               {"residuals", residuals},
               {"identity_residuals", identity},
               {"max_identity_residual", ids.max_residual()}});
}

void run_selftest(Params& p, Report& r)
{
    const auto d = p.integer("d", 3);
    require(d >= 2 && d <= 6, "d", "in [2, 6]");
    const auto seed = p.integer("seed", 1);
    const auto junk = p.reals("junk", {std::sqrt(0.7), std::sqrt(0.3)});
    require(junk.size() <= 8, "junk", "at most 8 coefficients");
    for (double c : junk) {
        require(c > 0.0, "junk", "strictly positive coefficients");
    }
    const auto pad = p.integer("pad", 1);
    require(pad <= 8, "pad", "in [0, 8]");
    const auto planted = selftest::planted_instance(d, junk, pad, pad, seed);
    const auto ex = selftest::extract_isometry(planted.strategy);
    double spectrum_distance = 0.0;
    const auto& a = ex.junk_spectrum.coefficients;
    const auto& b = planted.junk.coefficients;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        spectrum_distance = std::max(spectrum_distance, std::abs(x - y));
    }
    r.add("certificate", Claim::SelfTest,
          Json{{"d", d},
               {"gap", ex.gap},
               {"support_a", ex.support_a},
               {"support_b", ex.support_b},
               {"junk_dim", ex.junk_dim},
               {"residuals",
                {{"invariance_a", ex.invariance_a},
                 {"invariance_b", ex.invariance_b},
                 {"semigroup", ex.semigroup_residual},
                 {"isometry", ex.isometry_residual},
                 {"b0", ex.residual_b0},
                 {"b1", ex.residual_b1},
                 {"f", ex.residual_f},
                 {"p1", ex.residual_p1},
                 {"a0", ex.residual_a0},
                 {"a1", ex.residual_a1},
                 {"reduced_state", ex.reduced_state_residual}}},
               {"max_operator_residual", ex.max_operator_residual()},
               {"fidelity", ex.state_fidelity},
               {"junk_spectrum", a},
               {"planted_spectrum", b},
               {"spectrum_distance", spectrum_distance}});
}

void run_witness(Params& p, Report& r)
{
    const double alpha = p.real("alpha", 0.5);
    require(alpha > 0.0 && alpha < 1.0, "alpha", "in (0, 1)");
    const auto K = p.integer("K", 12);
    require(K >= 2 && K <= kMaxWitnessK, "K", "in [2, " + std::to_string(kMaxWitnessK) + "]");
    r.boundary_policies.push_back(qqs::kBoundaryPolicy);
    const auto w = qqs::witness_report(alpha, K);
    const auto id = qqs::proof_identity_report(alpha, K);
    r.add("correlation", Claim::WitnessCorrelation, correlation_table(w.p));
    r.csv_table = "correlation";
    r.add("correlation_check", Claim::Diagnostic, check_json(w.p.check()));
    r.add("marginal_a1_s0", Claim::WitnessCorrelation, w.marginal_a1_s0);
    r.add("marginal_a1_s0_limit", Claim::WitnessCorrelation,
          alpha * alpha / (1.0 + alpha * alpha));
    r.add("block_values", Claim::WitnessCorrelation,
          Json{{"block01", w.block01_value},
               {"block23", w.block23_value},
               {"tilted_maximum",
                tilted::quantum_maximum(tilted::params_from_alpha(alpha).beta)}});
    r.add("block_distances", Claim::WitnessCorrelation,
          Json{{"block01", w.block01_distance}, {"block23", w.block23_distance}});
    r.add("block_marginal_spread", Claim::WitnessCorrelation, w.block_marginal_spread);
    r.add("truncation", Claim::Truncation,
          Json{{"drift_to_K_plus_2", w.truncation_drift}, {"drift_constant", w.drift_constant}});
    r.add("proof_identities", Claim::ProofIdentity,
          Json{{"c_k", id.c_k},
               {"c_limit", id.c_limit},
               {"m_square", id.m_square_residual},
               {"m_structure", id.m_structure_residual},
               {"d0_structure", id.d0_structure_residual},
               {"a01_identity", id.a01_identity_residual},
               {"marginal_identity_value", id.marginal_identity_value},
               {"marginal_identity", id.marginal_identity_residual},
               {"correlation_identity", id.correlation_identity_residual},
               {"overlap_value", id.overlap_value},
               {"overlap_residual", id.overlap_residual},
               {"overlap_lower_bound", id.overlap_lower_bound}});
}

void run_ternary(Params& p, Report& r)
{
    const double alpha = p.real("alpha", 0.5);
    require(alpha > 0.0 && alpha < 1.0, "alpha", "in (0, 1)");
    const auto K = p.integer("K", 12);
    require(K >= 2 && K <= kMaxWitnessK, "K", "in [2, " + std::to_string(kMaxWitnessK) + "]");
    r.boundary_policies.push_back(qqs::kBoundaryPolicy);
    const auto t = qqs::ternary_report(alpha, K);
    r.add("correlation", Claim::TernaryRelations, correlation_table(t.q));
    r.csv_table = "correlation";
    r.add("correlation_check", Claim::Diagnostic, check_json(t.q.check()));
    r.add("outcome2_binary_inputs", Claim::TernaryRelations, t.outcome2_binary_inputs);
    r.add("completeness_residual", Claim::TernaryRelations, t.completeness_residual);
    r.add("outcome2_star", Claim::TernaryRelations, t.outcome2_star);
    r.add("relation_residuals", Claim::TernaryRelations, t.relation_residuals);
    r.add("binary_input_residual", Claim::TernaryRelations, t.binary_input_residual);
    r.add("projector_relation_residuals", Claim::TernaryRelations,
          t.projector_relation_residuals);
}

void run_embezzle(Params& p, Report& r)
{
    const auto n = p.integer("n", 3);
    require(n >= 1 && n <= embezzle::kDefaultMaxLevel, "n",
            "in [1, " + std::to_string(embezzle::kDefaultMaxLevel) + "]");
    const auto pn = embezzle::correlation_pn(n);
    const auto id = embezzle::embezzle_identity_check(n);
    const auto sr = embezzle::schmidt_report(n);
    r.add("correlation", Claim::EmbezzlementCorrelation, correlation_table(pn.p));
    r.csv_table = "correlation";
    r.add("correlation_check", Claim::Diagnostic, check_json(pn.check));
    r.add("p_11_20", Claim::EmbezzlementCorrelation, pn.p11_20);
    r.add("marginal_a1_s2", Claim::EmbezzlementCorrelation, pn.marginal_a1_s2);
    r.add("marginal_b1_t0", Claim::EmbezzlementCorrelation, pn.marginal_b1_t0);
    r.add("outcome2_block23", Claim::EmbezzlementCorrelation, pn.outcome2_block23);
    r.add("satwap_block_value", Claim::EmbezzlementCorrelation, pn.satwap_block_value);
    r.add("block23_distance", Claim::EmbezzlementCorrelation,
          Json{{"distance", pn.block23_distance},
               {"epsilon_norm", pn.epsilon_norm},
               {"bound", pn.distance_bound}});
    r.add("epsilon", Claim::EmbezzlementIdentity,
          Json{{"identity_residual", id.residual},
               {"identity_residual_flipped_sign", id.residual_flipped_sign},
               {"norm_squared", id.epsilon_norm_squared},
               {"closed_form", id.closed_form},
               {"bound", id.bound},
               {"normalization", embezzle::normalization(n)}});
    r.add("schmidt", Claim::SchmidtSpectrum,
          Json{{"psi", spectrum_json(sr.psi)},
               {"shifted", spectrum_json(sr.shifted)},
               {"chi", spectrum_json(sr.chi)},
               {"sup_psi", sr.sup_psi},
               {"sup_chi", sr.sup_chi},
               {"multiplicativity_residual", sr.multiplicativity_residual},
               {"invariance_residual", sr.invariance_residual},
               {"tilted_side", sr.tilted_side},
               {"maximal_side", sr.maximal_side}});
}

// Functional and reference maximum for the seesaw and lhv-bound targets.
struct Target {
    BellFunctional functional;
    double quantum_bound;
    double local_formula;
    std::size_t dim;
    // The closed-form SATWAP local bound disagrees with enumeration for this
    // operator, so it is only reported as a diagnostic.
    Claim formula_claim = Claim::LocalBound;
};

Target read_target(Params& p)
{
    const auto name = p.text("target", "chsh-tilted", {"chsh-tilted", "satwap"});
    if (name == "chsh-tilted") {
        const double beta = p.real("param", 0.0);
        require(beta >= 0.0 && beta < 2.0, "param", "a beta in [0, 2)");
        return {tilted::tilted_functional(beta), tilted::quantum_maximum(beta),
                tilted::local_maximum(beta), 2};
    }
    const double raw = p.real("param", 3.0);
    require(raw >= 2.0 && raw <= 8.0 && raw == std::floor(raw), "param",
            "an integer d in [2, 8]");
    const auto d = static_cast<std::size_t>(raw);
    return {satwap::satwap_functional(d), satwap::quantum_bound(d),
            satwap::local_bound_formula(d), d, Claim::Diagnostic};
}

void run_seesaw(Params& p, Report& r)
{
    Target target = read_target(p);
    seesaw::SeesawConfig cfg;
    cfg.restarts = p.integer("restarts", cfg.restarts);
    require(cfg.restarts >= 1 && cfg.restarts <= 10000, "restarts", "in [1, 10000]");
    cfg.seed = p.integer("seed", cfg.seed);
    cfg.max_iters = p.integer("max_iters", cfg.max_iters);
    require(cfg.max_iters >= 1, "max_iters", ">= 1");
    cfg.tol = p.real("tol", cfg.tol);
    cfg.dim_a = cfg.dim_b = p.integer("dim", target.dim);
    require(cfg.dim_a <= 16, "dim", "<= 16");
    const auto res = seesaw::seesaw_maximize(target.functional, cfg);
    const Correlation corr = correlation_from_strategy(res.strategy);
    r.add("value", Claim::SeesawOptimum, res.value);
    r.add("quantum_bound", Claim::QuantumMaximum, target.quantum_bound);
    r.add("bound_gap", Claim::SeesawOptimum, target.quantum_bound - res.value);
    r.add("converged", Claim::Diagnostic, res.converged);
    r.add("best_restart", Claim::Diagnostic, res.best_restart);
    r.add("restart_seeds", Claim::Diagnostic, res.restart_seeds);
    r.add("restart_values", Claim::SeesawOptimum, res.restart_values);
    r.add("trace", Claim::Diagnostic, res.trace);
    r.add("max_trace_decrease", Claim::Diagnostic, res.max_trace_decrease);
    r.add("correlation", Claim::SeesawOptimum, correlation_table(corr));
    r.csv_table = "correlation";
}

void run_lhv(Params& p, Report& r)
{
    Target target = read_target(p);
    const auto cap = p.integer("cap", kDefaultLhvCap);
    const LhvResult lhv = lhv_max_bruteforce(target.functional, cap);
    r.add("local_bound", Claim::LocalBound, lhv.value);
    r.add("local_strategy", Claim::LocalBound, lhv_json(lhv));
    r.add("local_bound_formula", target.formula_claim, target.local_formula);
    r.add("quantum_bound", Claim::QuantumMaximum, target.quantum_bound);
}

struct Pipeline {
    std::set<std::string> keys;
    std::function<void(Params&, Report&)> run;
};

const std::map<std::string, Pipeline>& pipelines()
{
    static const std::map<std::string, Pipeline> table{
        {"chsh-tilted", {{"beta", "alpha", "points"}, run_chsh_tilted}},
        {"satwap", {{"d", "certify"}, run_satwap}},
        {"selftest-extract", {{"d", "seed", "junk", "pad"}, run_selftest}},
        {"witness-qqs", {{"alpha", "K"}, run_witness}},
        {"ternary-variant", {{"alpha", "K"}, run_ternary}},
        {"embezzle", {{"n"}, run_embezzle}},
        {"seesaw",
         {{"target", "param", "restarts", "seed", "max_iters", "tol", "dim"}, run_seesaw}},
        {"lhv-bound", {{"target", "param", "cap"}, run_lhv}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : pipelines()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

Report dispatch(const std::string& command, const Json& parameters)
{
    const auto it = pipelines().find(command);
    if (it == pipelines().end()) {
        throw Error(ErrorCode::UnknownCommand, "no subcommand named '" + command + "'");
    }
    Params params(parameters);
    params.reject_unknown(command, it->second.keys);
    Report report;
    report.command = command;
    it->second.run(params, report);
    report.parameters = params.resolved();
    return report;
}

}  // namespace bellkit
