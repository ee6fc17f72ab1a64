// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Two tilted-CHSH games played on one geometric state
//   Psi ~ sum_i alpha^|i| |i>|i>,  i in Z,
// through two different pairings of the integers, {2j, 2j+1} and {2j-1, 2j}.
//
// The integers are truncated to {-2K, ..., 2K+1} (position i + 2K) and the
// state to |i| <= K. The first pairing closes exactly on that range; the
// second leaves -2K and 2K+1 unpaired, and observables built from it act as
// the identity there.

#include <array>
#include <string>
#include <vector>

#include "bellkit/bell_scenario.hpp"
#include "bellkit/linalg.hpp"
#include "bellkit/tilted_chsh.hpp"

namespace bellkit::qqs {

inline constexpr const char* kBoundaryPolicy =
    "index range -2K..2K+1; state support |i| <= K; W0 pairs {2j, 2j+1} for j in "
    "[-K, K] and closes exactly; W2 pairs {2j-1, 2j} for j in [-K+1, K] and leaves -2K "
    "and 2K+1 unpaired, where W2-based observables act as the identity";

/// 4K + 2.
std::size_t index_dimension(std::size_t K);
/// Position of integer i in the truncated basis, i + 2K.
std::size_t position(long i, std::size_t K);

struct TruncatedGeoState {
    double alpha = 0.0;
    std::size_t K = 0;
    double c_k = 0.0;  // sum_{|i|<=K} alpha^{2|i|}
    BipartiteState state;
};

/// (1 + alpha^2) / (1 - alpha^2).
double limit_normalization(double alpha);
/// (1 + alpha^2 - 2 alpha^{2K+2}) / (1 - alpha^2).
double truncated_normalization(double alpha, std::size_t K);

/// Throws OutOfRange unless alpha in (0, 1) and K >= 2.
TruncatedGeoState truncated_psi(double alpha, std::size_t K);

enum class Pairing { W0, W2 };

/// Image of |bit>|j> on the untruncated integers.
long pair_target(Pairing variant, int bit, long j);

struct PairingIsometry {
    Pairing variant = Pairing::W0;
    std::size_t K = 0;
    long j_min = 0;
    long j_max = 0;
    std::vector<long> unpaired;
    /// (4K+2) x 2(j_max - j_min + 1); column bit * (j_max - j_min + 1) + (j - j_min).
    ComplexMatrix matrix;

    std::size_t column(int bit, long j) const;
    /// Projector onto the image, i.e. the paired part of the range.
    ComplexMatrix range_projector() const;
};

/// Throws OutOfRange for K < 2.
PairingIsometry pairing_isometry(Pairing variant, std::size_t K);

/// W (op (x) I) W^dagger, plus the identity on unpaired positions.
ComplexMatrix lift(const PairingIsometry& w, const ComplexMatrix& op);

struct WitnessModel {
    TruncatedGeoState psi;
    tilted::TiltedParams params;
    PairingIsometry w0;
    PairingIsometry w2;
    std::array<ComplexMatrix, 4> a;  // A_0..A_3
    std::array<ComplexMatrix, 4> b;  // B_0..B_3

    Strategy strategy() const;
};

/// A_0 = W0 (sz (x) I) W0^dagger, A_1 = W0 (sx (x) I) W0^dagger, B_0, B_1 the same with
/// the tilted observables, and A_2, A_3, B_2, B_3 likewise through W2.
WitnessModel witness_model(double alpha, std::size_t K);

/// Scenario (4,4,2,2).
Correlation witness_correlation(const WitnessModel& model);

struct WitnessReport {
    Correlation p;
    double marginal_a1_s0 = 0.0;     // p(a=1|s=0)
    double block01_distance = 0.0;   // to the canonical tilted-CHSH table
    double block23_distance = 0.0;
    double block01_value = 0.0;      // tilted-CHSH functional on the block
    double block23_value = 0.0;
    double block_marginal_spread = 0.0;  // max |p(a|s) from t in {0,1} - from t in {2,3}|
    double truncation_drift = 0.0;   // sup |p(K) - p(K+2)|
    double drift_constant = 0.0;     // truncation_drift / alpha^{2K}
};

WitnessReport witness_report(double alpha, std::size_t K);

struct ProofIdentityReport {
    double c_k = 0.0;
    double c_limit = 0.0;
    double m_square_residual = 0.0;       // ||Pi (M^2 - I) Pi|| on the paired range
    double m_structure_residual = 0.0;    // ||Pi (M - W2 (sz (x) I) W2^dagger) Pi||
    double d0_structure_residual = 0.0;   // ||Pi (D0 - W2 (|0><0| (x) I) W2^dagger) Pi||
    double a01_identity_residual = 0.0;   // ||Pi (A_0^(1) - (D0 - |0><0|)) Pi||
    double marginal_identity_value = 0.0;       // <Psi|A_0^(1) (x) D0|Psi>
    double marginal_identity_residual = 0.0;    // vs p(a=1|s=0)
    double correlation_identity_residual = 0.0; // vs 1/2 p(a=1|s=0) + sum_t [...] / (4 cos mu)
    double overlap_value = 0.0;                 // <Psi|A_0^(0) (x) D0|Psi>
    double overlap_residual = 0.0;              // vs 1/C_K
    double overlap_lower_bound = 0.0;           // 1/C^2
};

ProofIdentityReport proof_identity_report(double alpha, std::size_t K);

/// Alice's measurements for inputs (*, 1, 3), each with three outcomes:
///   *: W0(|0><0| (x) I)W0^dagger - |0><0|,  W0(|1><1| (x) I)W0^dagger,  |0><0|
///   1, 3: the binary measurements of A_1, A_3 with an empty third outcome.
std::array<Measurement, 3> ternary_measurements(const WitnessModel& model);

/// Scenario (3,4,3,2).
Correlation ternary_correlation(const WitnessModel& model);

struct TernaryReport {
    Correlation q;
    double outcome2_binary_inputs = 0.0;   // max_{s in {1,3}} q(a=2|s)
    double completeness_residual = 0.0;    // max_s ||sum_a A~_s^(a) - I||
    double outcome2_star = 0.0;            // sum_b q(2,b|*,t=0)
    std::array<double, 4> relation_residuals{};  // p(0,.|0,.), p(1,.|0,.), p(0,.|2,.), p(1,.|2,.)
    double binary_input_residual = 0.0;    // p(a,b|s,t) - q(a,b|s,t), s in {1,3}
    std::array<double, 4> projector_relation_residuals{};  // same four at operator level
};

TernaryReport ternary_report(double alpha, std::size_t K);

}  // namespace bellkit::qqs
