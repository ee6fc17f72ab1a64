// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Embezzlement family
//   chi_n = C_n^-1/2 sum_{j=1}^n |00>^{(x) j} (x) tau^{(x)(n-j)},  tau = (|00> + |22>)/sqrt 2,
// the shared state psi_n = Phi_3 (x) chi_n, and the cyclic shifts Gamma_n, Lambda_n
// that move the game register to the end of the string when every symbol is
// 0 or 2. Local spaces are C^3 (x) (C^3)^{(x) n}; register 0 is the most
// significant base-3 digit of the local index.

#include <array>
#include <cstdint>
#include <vector>

#include "bellkit/bell_scenario.hpp"
#include "bellkit/linalg.hpp"

namespace bellkit::embezzle {

inline constexpr std::size_t kDefaultMaxLevel = 6;
/// Largest level for which table2_strategy() builds dense operators.
inline constexpr std::size_t kDenseMaxLevel = 4;

/// n + 2 sum_{1<=j<j'<=n} 2^{-(j'-j)/2}.
double normalization(std::size_t n);
/// (2 - 2 * 2^{-n/2}) / C_n.
double epsilon_norm_squared(std::size_t n);

BipartiteState tau_state();
BipartiteState zero_pair();  // |00> in C^3 (x) C^3

struct EmbezzleState {
    std::size_t n = 0;
    double c_n = 0.0;
    BipartiteState chi;  // 3^n x 3^n
    BipartiteState psi;  // 3^{n+1} x 3^{n+1}
};

/// Throws TooLarge for n > max_level and OutOfRange for n = 0.
EmbezzleState build_embezzle_state(std::size_t n, std::size_t max_level = kDefaultMaxLevel);

/// Gamma_n (side A) or Lambda_n (side B) as an index permutation.
struct ShiftUnitary {
    std::size_t n = 0;
    Side side = Side::A;
    std::vector<std::uint32_t> image;  // |x> -> |image[x]>

    std::size_t dimension() const noexcept { return image.size(); }
    bool is_fixed(std::size_t x) const { return image[x] == x; }
    /// Permutation matrix. Throws TooLarge above 3^{kDenseMaxLevel + 1}.
    ComplexMatrix dense() const;
};

ShiftUnitary shift_unitary(std::size_t n, Side side, std::size_t max_level = kDefaultMaxLevel);

/// (Gamma (x) I)|v> for side A, (I (x) Lambda)|v> for side B; the inverse
/// permutation when inverse is set.
ComplexVector apply_shift(const ShiftUnitary& shift, std::size_t dim_a, std::size_t dim_b,
                          const ComplexVector& amplitudes, bool inverse = false);

/// (op (x) I_rest) on register 0 of one party; op is 3 x 3.
ComplexVector apply_register0(const ComplexMatrix& op, Side side, std::size_t dim_a,
                              std::size_t dim_b, const ComplexVector& amplitudes);

/// eps_n = (tau^{(x)n} - |00>^{(x)n}) / sqrt(C_n).
struct IdentityCheck {
    std::size_t n = 0;
    double residual = 0.0;  // ||(Gamma (x) Lambda)(tau (x) chi) - 00 (x) chi - 00 (x) eps||
    // Same with eps replaced by -eps, i.e. eps = (00^n - tau^n)/sqrt(C_n).
    double residual_flipped_sign = 0.0;
    double epsilon_norm_squared = 0.0;  // from the vector
    double closed_form = 0.0;           // (2 - 2 * 2^{-n/2}) / C_n
    double bound = 0.0;                 // 2 / n
};

IdentityCheck embezzle_identity_check(std::size_t n, std::size_t max_level = kDefaultMaxLevel);

/// Register operators of the (4,4,3,3) strategy, indexed [input][outcome].
/// Inputs 0, 1: projectors of the canonical 3-outcome SATWAP observables.
/// Inputs 2, 3: projectors of sz, sx (Alice) or the tilted pair at
/// alpha = 1/sqrt 2 (Bob) on span{|0>, |1>}, and |2><2| as outcome 2. These
/// act after the shift; the party's operator is shift^dagger (op (x) I) shift.
struct RegisterMeasurements {
    std::array<Measurement, 4> alice;
    std::array<Measurement, 4> bob;
};

RegisterMeasurements register_measurements();

/// Dense Strategy. Throws TooLarge for n > kDenseMaxLevel.
Strategy table2_strategy(std::size_t n);

/// The canonical tilted-CHSH table at alpha = 1/sqrt 2 padded with a zero third outcome.
Correlation padded_tilted_reference();

struct PnReport {
    std::size_t n = 0;
    Correlation p;
    CorrelationCheck check;
    double p11_20 = 0.0;            // p(1,1|2,0)
    double marginal_a1_s2 = 0.0;    // p(a=1|s=2)
    double marginal_b1_t0 = 0.0;    // p(b=1|t=0)
    double outcome2_block23 = 0.0;  // max p(a,b|s,t) with a or b = 2, s,t in {2,3}
    double satwap_block_value = 0.0;
    double block23_distance = 0.0;  // d_n, max-entry distance to the tilted reference
    double epsilon_norm = 0.0;
    double distance_bound = 0.0;    // 4 ||eps_n||
};

/// Structured evaluation: shifts as permutations, operators on register 0.
PnReport correlation_pn(std::size_t n, std::size_t max_level = kDefaultMaxLevel);

struct SchmidtReport {
    std::size_t n = 0;
    SchmidtSpectrum psi;
    SchmidtSpectrum shifted;  // of (Gamma (x) Lambda) psi_n
    SchmidtSpectrum chi;
    double sup_psi = 0.0;
    double sup_chi = 0.0;
    double multiplicativity_residual = 0.0;  // psi spectrum vs {1/sqrt 3} x chi spectrum
    double invariance_residual = 0.0;        // shifted vs psi
    double tilted_side = 0.0;                // sqrt(2/3) sup S
    double maximal_side = 0.0;               // (1/sqrt 3) sup S
};

SchmidtReport schmidt_report(std::size_t n, std::size_t max_level = kDefaultMaxLevel);

}  // namespace bellkit::embezzle
