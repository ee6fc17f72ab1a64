// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bellkit/linalg.hpp"

namespace bellkit {

/// Bell scenario (n_A, n_B, m_A, m_B): input and output counts per party.
struct Scenario {
    std::size_t inputs_a = 2;
    std::size_t inputs_b = 2;
    std::size_t outputs_a = 2;
    std::size_t outputs_b = 2;

    /// Throws OutOfRange unless every count is at least 2.
    void validate() const;

    std::size_t table_size() const noexcept { return inputs_a * inputs_b * outputs_a * outputs_b; }
    std::size_t index(std::size_t a, std::size_t b, std::size_t s, std::size_t t) const noexcept
    {
        return ((s * inputs_b + t) * outputs_a + a) * outputs_b + b;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Projective measurement: one projector per outcome.
using Measurement = std::vector<ComplexMatrix>;

struct Strategy {
    BipartiteState state;
    std::vector<Measurement> alice;
    std::vector<Measurement> bob;

    Scenario scenario() const;
    /// Throws InvalidMeasurement or DimensionMismatch.
    void validate(double tol = kConstructionTol) const;
};

struct CorrelationCheck {
    double normalization_error = 0.0;  // max_{s,t} |sum_ab p - 1|
    double signaling_error = 0.0;      // max marginal spread across the other party's input
    double min_entry = 0.0;
    double max_entry = 0.0;

    bool passes(double tol) const noexcept
    {
        return normalization_error <= tol && signaling_error <= tol && min_entry >= -tol &&
               max_entry <= 1.0 + tol;
    }
};

/// Table p(a, b | s, t).
class Correlation {
public:
    Correlation(Scenario scenario, std::vector<double> table);

    const Scenario& scenario() const noexcept { return scenario_; }
    const std::vector<double>& table() const noexcept { return table_; }

    double operator()(std::size_t a, std::size_t b, std::size_t s, std::size_t t) const
    {
        return table_[scenario_.index(a, b, s, t)];
    }

    CorrelationCheck check() const;

    /// Sub-table on the listed inputs, relabelled 0.. in list order.
    Correlation restrict_inputs(const std::vector<std::size_t>& alice_inputs,
                                const std::vector<std::size_t>& bob_inputs) const;

    /// Largest |p - q| over all entries. Throws ScenarioMismatch.
    double max_distance(const Correlation& other) const;

private:
    Scenario scenario_;
    std::vector<double> table_;
};

/// (P_s^(a) (x) I)|psi> for Alice or (I (x) Q_t^(b))|psi> for Bob.
using LocalAction = std::function<ComplexVector(std::size_t input, std::size_t outcome)>;

/// p(a,b|s,t) = <(P (x) I) psi | (I (x) Q) psi>, which equals <psi|P (x) Q|psi>
/// for Hermitian projectors. Bob's vectors are cached when they fit in
/// `cache_bytes`, otherwise recomputed per Alice outcome.
Correlation correlation_from_actions(const Scenario& scenario, const LocalAction& alice,
                                     const LocalAction& bob,
                                     std::size_t cache_bytes = std::size_t{1} << 29);

Correlation correlation_from_strategy(const Strategy& strategy);

/// Deterministic local correlation s -> alice_outputs[s], t -> bob_outputs[t].
Correlation deterministic_correlation(const Scenario& scenario,
                                      const std::vector<std::size_t>& alice_outputs,
                                      const std::vector<std::size_t>& bob_outputs);

/// Linear functional sum c(a,b,s,t) p(a,b|s,t).
struct BellFunctional {
    Scenario scenario;
    std::vector<Complex> coefficients;
    bool hermitian = true;

    explicit BellFunctional(Scenario sc)
        : scenario(sc), coefficients(sc.table_size(), Complex{})
    {}

    Complex& coefficient(std::size_t a, std::size_t b, std::size_t s, std::size_t t)
    {
        return coefficients[scenario.index(a, b, s, t)];
    }
    Complex coefficient(std::size_t a, std::size_t b, std::size_t s, std::size_t t) const
    {
        return coefficients[scenario.index(a, b, s, t)];
    }

    BellFunctional restrict_inputs(const std::vector<std::size_t>& alice_inputs,
                                   const std::vector<std::size_t>& bob_inputs) const;
};

/// Full complex evaluation. Throws ScenarioMismatch.
Complex evaluate(const BellFunctional& f, const Correlation& p);

/// Real part of evaluate(); the imaginary part vanishes for Hermitian functionals.
double bell_value(const BellFunctional& f, const Correlation& p);

/// Operator sum Re c(a,b,s,t) P_s^(a) (x) Q_t^(b).
ComplexMatrix bell_operator(const BellFunctional& f, const std::vector<Measurement>& alice,
                            const std::vector<Measurement>& bob);

struct LhvResult {
    double value = 0.0;
    std::vector<std::size_t> alice_outputs;
    std::vector<std::size_t> bob_outputs;
    std::uint64_t deterministic_strategies = 0;
};

inline constexpr std::uint64_t kDefaultLhvCap = 100'000'000;

/// Exact local bound: maximum of the functional over all deterministic
/// assignments. Alice's m_A^{n_A} assignments are enumerated and Bob answers
/// each one with his best reply per input, which reaches the same maximum as
/// the full product enumeration. Throws TooLarge when m_A^{n_A} m_B^{n_B}
/// exceeds cap.
LhvResult lhv_max_bruteforce(const BellFunctional& f, std::uint64_t cap = kDefaultLhvCap);

/// Marginal table p(a|s) (side A) or p(b|t) (side B), indexed [input][outcome].
/// Throws SignalingDetected if the marginal depends on the other party's
/// input by more than tol.
std::vector<std::vector<double>> marginal(const Correlation& p, Side side, double tol = 1e-9);

}  // namespace bellkit
