// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Extraction of the canonical SATWAP strategy from a maximally violating one.
// Bob's side: D_k = w^{k/2} B0^k B1^-k is a Hermitian unitary, P_k = (I - D_k)/2,
// F = sum_l w^-l B0^l P1 B0^-l permutes the eigenspaces H^(k) of B0, and
// V maps F^k H^(0) to |k> (x) H^(0). Alice's unitary U then follows from the
// reduced state of (I (x) V)psi.

#include <cstdint>
#include <vector>

#include "bellkit/linalg.hpp"
#include "bellkit/satwap.hpp"

namespace bellkit::selftest {

inline constexpr double kGapTol = 1e-8;
inline constexpr double kResidualTol = 1e-7;

struct DkPk {
    ComplexMatrix d_k;
    ComplexMatrix p_k;
};

/// Throws NotSelfAdjoint when ||D_k - D_k^dagger|| > tol.
DkPk build_dk_pk(const ComplexMatrix& b0, const ComplexMatrix& b1, std::size_t d, std::size_t k,
                 double tol = kGapTol);

/// sum_{l<k} B0^l P1 B0^-l.
ComplexMatrix conjugated_projector_sum(const ComplexMatrix& b0, const ComplexMatrix& p1,
                                       std::size_t k);

/// Throws NotUnitary when the result is not unitary within tol.
ComplexMatrix build_f(const ComplexMatrix& b0, const ComplexMatrix& p1, std::size_t d,
                      double tol = kGapTol);

/// Orthonormal basis of the eigenvalue-1 eigenspace of B0, obtained by
/// projecting the computational basis and orthonormalizing with column pivoting.
ComplexMatrix eigenspace_basis(const ComplexMatrix& b0, std::size_t d, double tol = kGapTol);

/// Strategy restricted to the supports of the reduced states.
struct RestrictedStrategy {
    satwap::ObservableStrategy strategy;
    ComplexMatrix basis_a;  // columns span supp(tr_B psi psi^dagger)
    ComplexMatrix basis_b;  // columns span supp(tr_A psi psi^dagger)
    double invariance_a = 0.0;  // max_s ||(I - Pi_A) A_s Pi_A||
    double invariance_b = 0.0;  // max_t ||(I - Pi_B) B_t Pi_B||
};

/// Throws SupportMismatch when a support is not invariant within tol.
RestrictedStrategy restrict_to_support(const satwap::ObservableStrategy& strategy,
                                       double tol = kResidualTol);

struct ExtractionResult {
    std::size_t d = 0;
    double gap = 0.0;
    std::size_t support_a = 0;
    std::size_t support_b = 0;
    std::size_t junk_dim = 0;  // dim H^(0)

    ComplexMatrix v;  // (d * junk_dim) x support_b
    ComplexMatrix u;  // (d * junk_dim) x support_a
    ComplexMatrix f;
    ComplexMatrix p1;

    double invariance_a = 0.0;
    double invariance_b = 0.0;
    double semigroup_residual = 0.0;  // max ||C_{s,k} C_{s,l} - C_{s,k+l}||
    double isometry_residual = 0.0;   // ||V^dagger V - I||
    double residual_b0 = 0.0;         // ||V B0 V^dagger - Z (x) I||
    double residual_b1 = 0.0;         // ||V B1 V^dagger - w^1/2 (I - 2|J><J|) Z (x) I||
    double residual_f = 0.0;          // ||V F V^dagger - X (x) I||
    double residual_p1 = 0.0;         // ||V P1 V^dagger - |J><J| (x) I||
    double residual_a0 = 0.0;         // ||U A0 U^dagger - canonical A0 (x) I||
    double residual_a1 = 0.0;
    double reduced_state_residual = 0.0;  // ||tr_A (I (x) V)psi - (1/d) I (x) rho'||
    double state_fidelity = 0.0;          // |<Phi_d (x) psi'|(U (x) V) psi>|^2
    SchmidtSpectrum junk_spectrum;

    double max_operator_residual() const;
};

/// Throws NotMaximal when the SATWAP gap exceeds gap_tol, SupportMismatch when
/// the support restriction or the eigenspace dimensions are inconsistent.
ExtractionResult extract_isometry(const satwap::ObservableStrategy& strategy,
                                  double gap_tol = kGapTol);

/// Canonical strategy (x) junk state, optionally padded with unused local
/// dimensions, conjugated by Haar-random local unitaries drawn from seed.
struct PlantedInstance {
    satwap::ObservableStrategy strategy;
    SchmidtSpectrum junk;
};

/// junk_coefficients are the planted Schmidt coefficients (normalized here).
PlantedInstance planted_instance(std::size_t d, const std::vector<double>& junk_coefficients,
                                 std::size_t pad_a, std::size_t pad_b, std::uint64_t seed);

}  // namespace bellkit::selftest
