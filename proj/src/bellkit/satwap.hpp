// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Two-input, d-outcome SATWAP Bell operator
//
//   O_d = sum_{k=1}^{d-1} r_k A0^k B0^-k + conj(r_k) w^k A0^k B1^-k
//                       + conj(r_k) A1^k B0^-k + r_k A1^k B1^-k,
//
// with w = exp(2 pi i / d) and r_k = w^{(2k-d)/8} / sqrt(2). Its quantum
// maximum is 2(d-1), certified by the sum of squares built here.

#include <random>
#include <string>
#include <vector>

#include "bellkit/bell_scenario.hpp"
#include "bellkit/linalg.hpp"

namespace bellkit::satwap {

struct SatwapCoefficients {
    std::size_t d = 0;
    std::vector<Complex> r;  // r[k - 1] = r_k, k = 1..d-1

    Complex r_k(std::size_t k) const { return r.at(k - 1); }
    /// conj(r_k), which equals r_{d-k}.
    Complex r_bar(std::size_t k) const { return std::conj(r.at(k - 1)); }
};

/// Throws OutOfRange for d < 2.
SatwapCoefficients coefficients(std::size_t d);

/// Shared state and the four d-valued observables of a (2,2,d,d) strategy.
struct ObservableStrategy {
    std::size_t d = 0;
    BipartiteState state;
    ComplexMatrix a0, a1, b0, b1;

    const ComplexMatrix& alice(std::size_t s) const { return s == 0 ? a0 : a1; }
    const ComplexMatrix& bob(std::size_t t) const { return t == 0 ? b0 : b1; }

    /// Projective form; outcome a belongs to eigenvalue w^a.
    Strategy to_strategy(double tol = kConstructionTol) const;
};

struct SatwapCanonical {
    std::size_t d = 0;
    ComplexMatrix z;            // sum_i w^i |i><i|
    ComplexMatrix x;            // |i> -> |i+1 mod d>
    ComplexVector j;            // (1/sqrt d) sum_i |i>
    ComplexMatrix j_projector;  // |J><J|
    ObservableStrategy strategy;
};

/// Maximally entangled state with
///   A0 = w^-1/4 Z (I - (1-i)|J><J|),  A1 = w^1/4 Z (I - (1+i)|J><J|),
///   B0 = Z,                           B1 = w^1/2 (I - 2|J><J|) Z.
SatwapCanonical canonical_satwap(std::size_t d);

/// Throws NotDValuedObservable unless u is unitary with u^d = I.
void require_d_valued(const ComplexMatrix& u, std::size_t d, double tol = kConstructionTol);

/// Dense O_d. Throws NotDValuedObservable.
ComplexMatrix satwap_operator(std::size_t d, const ComplexMatrix& a0, const ComplexMatrix& a1,
                              const ComplexMatrix& b0, const ComplexMatrix& b1,
                              double tol = kConstructionTol);

/// O_d as a functional on (2,2,d,d) correlations:
/// c(a,b,s,t) = sum_k coef_{s,t,k} w^{k(a-b)}, which is real.
BellFunctional satwap_functional(std::size_t d);

/// Re <psi|O_d|psi>, evaluated with local actions.
double satwap_value(const ObservableStrategy& strategy);

/// 2(d-1).
double quantum_bound(std::size_t d);

/// [2 cot(pi/4d) - cot(3pi/4d) - 4] / 2. Agrees with enumeration at d = 3.
double local_bound_formula(std::size_t d);

/// C_{0,k} = r_k B0^-k + conj(r_k) w^k B1^-k,  C_{1,k} = conj(r_k) B0^-k + r_k B1^-k.
ComplexMatrix c_operator(const SatwapCoefficients& coeffs, std::size_t s, std::size_t k,
                         const ComplexMatrix& b0, const ComplexMatrix& b1);

struct SosCertificate {
    std::size_t d = 0;
    /// Indexed [s][k - 1].
    std::vector<std::vector<ComplexMatrix>> c;
    std::vector<std::vector<ComplexMatrix>> m;  // A_s^k (x) I - I (x) C_{s,k}^dagger
    std::vector<std::vector<double>> residuals;  // ||M_{s,k}^dagger psi||
    double value = 0.0;       // <psi|O_d|psi>
    double gap = 0.0;         // 2(d-1) - value
    double sos_value = 0.0;   // (1/2) sum residuals^2
    double gram_error = 0.0;  // ||sum_{s,k} C^dagger C - 2(d-1) I||

    double identity_error() const { return std::abs(gap - sos_value); }
    double max_residual() const;
};

/// Evaluates both sides of 2(d-1) - <O_d> = (1/2) sum ||M^dagger psi||^2.
/// Dense M_{s,k} are kept only when keep_operators is set.
SosCertificate sos_certificate(const ObservableStrategy& strategy, bool keep_operators = false);

struct IdentityResidual {
    std::string name;
    std::size_t k = 0;
    double residual = 0.0;
};

struct IdentityReport {
    std::size_t d = 0;
    std::vector<IdentityResidual> entries;

    double max_residual() const;
};

/// Closed-form powers of the canonical observables against direct powers,
/// transpose relations C_{s,k}^T = A_s^-k, <J|Z^k|J> = 0, the Gram collapse
/// and the coefficient relations.
IdentityReport operator_identities(std::size_t d);

/// Closed forms, with J_l = Z^l J:
///   B1^k = w^{k/2} (I - 2 sum_{l<k} |J_l><J_l|) Z^k
///   A0^k = w^{-k/4} Z^k (I - (1-i) sum_{l<k} |J_-l><J_-l|)
///   A1^k = w^{k/4}  Z^k (I - (1+i) sum_{l<k} |J_-l><J_-l|)
ComplexMatrix closed_form_b1_power(std::size_t d, std::size_t k);
ComplexMatrix closed_form_a_power(std::size_t d, std::size_t s, std::size_t k);

/// V diag(w^{c_i}) V^dagger with Haar V and uniformly random labels c_i.
ComplexMatrix random_d_valued(std::size_t dim, std::size_t d, std::mt19937_64& rng);

/// Gaussian state and Haar-conjugated d-valued observables on C^dim (x) C^dim.
ObservableStrategy random_observable_strategy(std::size_t d, std::size_t dim,
                                              std::mt19937_64& rng);

}  // namespace bellkit::satwap
