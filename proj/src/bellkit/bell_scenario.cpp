// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/bell_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellkit/error.hpp"
#include "bellkit/parallel.hpp"

namespace bellkit {

void Scenario::validate() const
{
    if (inputs_a < 2 || inputs_b < 2 || outputs_a < 2 || outputs_b < 2) {
        throw Error(ErrorCode::OutOfRange, "scenario counts must all be at least 2");
    }
}

Scenario Strategy::scenario() const
{
    return {alice.size(), bob.size(), alice.empty() ? 0 : alice.front().size(),
            bob.empty() ? 0 : bob.front().size()};
}

void Strategy::validate(double tol) const
{
    const auto check_party = [tol](const std::vector<Measurement>& party, std::size_t dim,
                                   const char* name) {
        if (party.empty()) {
            throw Error(ErrorCode::InvalidMeasurement, std::string(name) + " has no measurements");
        }
        for (const auto& m : party) {
            if (m.size() != party.front().size()) {
                throw Error(ErrorCode::InvalidMeasurement,
                            std::string(name) + " measurements have differing outcome counts");
            }
            if (static_cast<std::size_t>(m.front().rows()) != dim) {
                throw Error(ErrorCode::DimensionMismatch,
                            std::string(name) + " projectors do not match the local dimension");
            }
            validate_measurement(m, tol);
        }
    };
    check_party(alice, state.dim_a(), "alice");
    check_party(bob, state.dim_b(), "bob");
}

Correlation::Correlation(Scenario scenario, std::vector<double> table)
    : scenario_(scenario), table_(std::move(table))
{
    if (table_.size() != scenario_.table_size()) {
        throw Error(ErrorCode::DimensionMismatch, "correlation table size does not match scenario");
    }
}

CorrelationCheck Correlation::check() const
{
    const auto& sc = scenario_;
    CorrelationCheck out;
    out.min_entry = *std::min_element(table_.begin(), table_.end());
    out.max_entry = *std::max_element(table_.begin(), table_.end());
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        for (std::size_t t = 0; t < sc.inputs_b; ++t) {
            double total = 0.0;
            for (std::size_t a = 0; a < sc.outputs_a; ++a) {
                for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                    total += (*this)(a, b, s, t);
                }
            }
            out.normalization_error = std::max(out.normalization_error, std::abs(total - 1.0));
        }
    }
    // Alice's marginal across Bob's inputs.
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        for (std::size_t a = 0; a < sc.outputs_a; ++a) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t t = 0; t < sc.inputs_b; ++t) {
                double m = 0.0;
                for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                    m += (*this)(a, b, s, t);
                }
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            out.signaling_error = std::max(out.signaling_error, hi - lo);
        }
    }
    for (std::size_t t = 0; t < sc.inputs_b; ++t) {
        for (std::size_t b = 0; b < sc.outputs_b; ++b) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t s = 0; s < sc.inputs_a; ++s) {
                double m = 0.0;
                for (std::size_t a = 0; a < sc.outputs_a; ++a) {
                    m += (*this)(a, b, s, t);
                }
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            out.signaling_error = std::max(out.signaling_error, hi - lo);
        }
    }
    return out;
}

Correlation Correlation::restrict_inputs(const std::vector<std::size_t>& alice_inputs,
                                         const std::vector<std::size_t>& bob_inputs) const
{
    Scenario sub{alice_inputs.size(), bob_inputs.size(), scenario_.outputs_a, scenario_.outputs_b};
    std::vector<double> table(sub.table_size());
    for (std::size_t s = 0; s < alice_inputs.size(); ++s) {
        for (std::size_t t = 0; t < bob_inputs.size(); ++t) {
            if (alice_inputs[s] >= scenario_.inputs_a || bob_inputs[t] >= scenario_.inputs_b) {
                throw Error(ErrorCode::OutOfRange, "restricted input index out of range");
            }
            for (std::size_t a = 0; a < sub.outputs_a; ++a) {
                for (std::size_t b = 0; b < sub.outputs_b; ++b) {
                    table[sub.index(a, b, s, t)] = (*this)(a, b, alice_inputs[s], bob_inputs[t]);
                }
            }
        }
    }
    return {sub, std::move(table)};
}

double Correlation::max_distance(const Correlation& other) const
{
    if (!(scenario_ == other.scenario_)) {
        throw Error(ErrorCode::ScenarioMismatch, "correlations live in different scenarios");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        worst = std::max(worst, std::abs(table_[i] - other.table_[i]));
    }
    return worst;
}

Correlation correlation_from_actions(const Scenario& sc, const LocalAction& alice,
                                     const LocalAction& bob, std::size_t cache_bytes)
{
    const std::size_t bob_count = sc.inputs_b * sc.outputs_b;
    std::vector<ComplexVector> bob_vectors;
    bool cached = false;
    {
        const ComplexVector probe = bob(0, 0);
        const std::size_t bytes =
            bob_count * static_cast<std::size_t>(probe.size()) * sizeof(Complex);
        if (bytes <= cache_bytes) {
            bob_vectors.resize(bob_count);
            bob_vectors[0] = probe;
            parallel_for(1, bob_count, [&](std::size_t i) {
                bob_vectors[i] = bob(i / sc.outputs_b, i % sc.outputs_b);
            });
            cached = true;
        }
    }

    std::vector<double> table(sc.table_size());
    parallel_for(0, sc.inputs_a * sc.outputs_a, [&](std::size_t i) {
        const std::size_t s = i / sc.outputs_a;
        const std::size_t a = i % sc.outputs_a;
        const ComplexVector x = alice(s, a);
        for (std::size_t t = 0; t < sc.inputs_b; ++t) {
            for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                const Complex overlap =
                    cached ? x.dot(bob_vectors[t * sc.outputs_b + b]) : x.dot(bob(t, b));
                table[sc.index(a, b, s, t)] = overlap.real();
            }
        }
    });
    return {sc, std::move(table)};
}

Correlation correlation_from_strategy(const Strategy& strategy)
{
    strategy.validate();
    const Scenario sc = strategy.scenario();
    const auto& psi = strategy.state;
    return correlation_from_actions(
        sc,
        [&](std::size_t s, std::size_t a) { return apply_local(strategy.alice[s][a], Side::A, psi); },
        [&](std::size_t t, std::size_t b) { return apply_local(strategy.bob[t][b], Side::B, psi); });
}

Correlation deterministic_correlation(const Scenario& sc,
                                      const std::vector<std::size_t>& alice_outputs,
                                      const std::vector<std::size_t>& bob_outputs)
{
    if (alice_outputs.size() != sc.inputs_a || bob_outputs.size() != sc.inputs_b) {
        throw Error(ErrorCode::DimensionMismatch, "one output per input is required");
    }
    std::vector<double> table(sc.table_size(), 0.0);
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        for (std::size_t t = 0; t < sc.inputs_b; ++t) {
            table[sc.index(alice_outputs[s], bob_outputs[t], s, t)] = 1.0;
        }
    }
    return {sc, std::move(table)};
}

BellFunctional BellFunctional::restrict_inputs(const std::vector<std::size_t>& alice_inputs,
                                               const std::vector<std::size_t>& bob_inputs) const
{
    BellFunctional sub(Scenario{alice_inputs.size(), bob_inputs.size(), scenario.outputs_a,
                                scenario.outputs_b});
    sub.hermitian = hermitian;
    for (std::size_t s = 0; s < alice_inputs.size(); ++s) {
        for (std::size_t t = 0; t < bob_inputs.size(); ++t) {
            for (std::size_t a = 0; a < scenario.outputs_a; ++a) {
                for (std::size_t b = 0; b < scenario.outputs_b; ++b) {
                    sub.coefficient(a, b, s, t) = coefficient(a, b, alice_inputs[s], bob_inputs[t]);
                }
            }
        }
    }
    return sub;
}

Complex evaluate(const BellFunctional& f, const Correlation& p)
{
    if (!(f.scenario == p.scenario())) {
        throw Error(ErrorCode::ScenarioMismatch, "functional and correlation scenarios differ");
    }
    Complex total{};
    for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
        total += f.coefficients[i] * p.table()[i];
    }
    return total;
}

double bell_value(const BellFunctional& f, const Correlation& p) { return evaluate(f, p).real(); }

ComplexMatrix bell_operator(const BellFunctional& f, const std::vector<Measurement>& alice,
                            const std::vector<Measurement>& bob)
{
    const auto& sc = f.scenario;
    if (alice.size() != sc.inputs_a || bob.size() != sc.inputs_b) {
        throw Error(ErrorCode::ScenarioMismatch, "measurement counts do not match the functional");
    }
    const auto da = alice.front().front().rows();
    const auto db = bob.front().front().rows();
    ComplexMatrix op = ComplexMatrix::Zero(da * db, da * db);
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        for (std::size_t a = 0; a < sc.outputs_a; ++a) {
            for (std::size_t t = 0; t < sc.inputs_b; ++t) {
                ComplexMatrix q = ComplexMatrix::Zero(db, db);
                for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                    q += f.coefficient(a, b, s, t).real() * bob[t][b];
                }
                op += tensor_product(alice[s][a], q);
            }
        }
    }
    return op;
}

namespace {

double saturating_power(double base, std::size_t exp)
{
    return std::pow(base, static_cast<double>(exp));
}

}  // namespace

LhvResult lhv_max_bruteforce(const BellFunctional& f, std::uint64_t cap)
{
    const auto& sc = f.scenario;
    sc.validate();
    const double total = saturating_power(static_cast<double>(sc.outputs_a), sc.inputs_a) *
                         saturating_power(static_cast<double>(sc.outputs_b), sc.inputs_b);
    if (total > static_cast<double>(cap)) {
        throw Error(ErrorCode::TooLarge, "deterministic strategy count exceeds the cap");
    }
    std::uint64_t alice_count = 1;
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        alice_count *= sc.outputs_a;
    }

    std::vector<double> re(f.coefficients.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        re[i] = f.coefficients[i].real();
    }

    struct Best {
        double value = -std::numeric_limits<double>::infinity();
        std::uint64_t alice_code = 0;
    };
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::uint64_t>(thread_count(), alice_count));
    std::vector<Best> best(blocks);
    const std::uint64_t per_block = (alice_count + blocks - 1) / blocks;

    const auto score = [&](std::uint64_t code, std::vector<std::size_t>& outs,
                           std::vector<std::size_t>* bob_out) {
        for (std::size_t s = 0; s < sc.inputs_a; ++s) {
            outs[s] = code % sc.outputs_a;
            code /= sc.outputs_a;
        }
        double value = 0.0;
        for (std::size_t t = 0; t < sc.inputs_b; ++t) {
            double best_b = -std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t b = 0; b < sc.outputs_b; ++b) {
                double v = 0.0;
                for (std::size_t s = 0; s < sc.inputs_a; ++s) {
                    v += re[sc.index(outs[s], b, s, t)];
                }
                if (v > best_b) {
                    best_b = v;
                    arg = b;
                }
            }
            value += best_b;
            if (bob_out) {
                (*bob_out)[t] = arg;
            }
        }
        return value;
    };

    parallel_for(0, blocks, [&](std::size_t blk) {
        const std::uint64_t lo = blk * per_block;
        const std::uint64_t hi = std::min<std::uint64_t>(alice_count, lo + per_block);
        std::vector<std::size_t> outs(sc.inputs_a);
        for (std::uint64_t code = lo; code < hi; ++code) {
            const double v = score(code, outs, nullptr);
            if (v > best[blk].value) {
                best[blk] = {v, code};
            }
        }
    });

    Best overall;
    for (const auto& b : best) {
        if (b.value > overall.value) {
            overall = b;
        }
    }

    LhvResult result;
    result.value = overall.value;
    result.deterministic_strategies = static_cast<std::uint64_t>(total);
    result.alice_outputs.resize(sc.inputs_a);
    std::uint64_t code = overall.alice_code;
    for (std::size_t s = 0; s < sc.inputs_a; ++s) {
        result.alice_outputs[s] = code % sc.outputs_a;
        code /= sc.outputs_a;
    }
    result.bob_outputs.resize(sc.inputs_b);
    std::vector<std::size_t> scratch(sc.inputs_a);
    score(overall.alice_code, scratch, &result.bob_outputs);
    return result;
}

std::vector<std::vector<double>> marginal(const Correlation& p, Side side, double tol)
{
    const auto& sc = p.scenario();
    const bool alice = side == Side::A;
    const std::size_t inputs = alice ? sc.inputs_a : sc.inputs_b;
    const std::size_t outputs = alice ? sc.outputs_a : sc.outputs_b;
    const std::size_t other_inputs = alice ? sc.inputs_b : sc.inputs_a;
    const std::size_t other_outputs = alice ? sc.outputs_b : sc.outputs_a;

    std::vector<std::vector<double>> out(inputs, std::vector<double>(outputs, 0.0));
    for (std::size_t x = 0; x < inputs; ++x) {
        for (std::size_t o = 0; o < outputs; ++o) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
            for (std::size_t y = 0; y < other_inputs; ++y) {
                double m = 0.0;
                for (std::size_t r = 0; r < other_outputs; ++r) {
                    m += alice ? p(o, r, x, y) : p(r, o, y, x);
                }
                lo = std::min(lo, m);
                hi = std::max(hi, m);
                sum += m;
            }
            if (hi - lo > tol) {
                throw Error(ErrorCode::SignalingDetected,
                            "marginal depends on the other party's input");
            }
            out[x][o] = sum / static_cast<double>(other_inputs);
        }
    }
    return out;
}

}  // namespace bellkit
