// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bellkit/bell_scenario.hpp"
#include "bellkit/linalg.hpp"

namespace bellkit::tilted {

/// Parametrisation of the tilted CHSH family:
///   tan(mu) = sin(2 theta) = sqrt((4 - beta^2) / (4 + beta^2)),  alpha = tan(theta).
struct TiltedParams {
    double beta = 0.0;   // [0, 2)
    double theta = 0.0;  // (0, pi/4]
    double mu = 0.0;     // (0, pi/4]
    double alpha = 1.0;  // (0, 1]
};

/// Throws OutOfRange for alpha outside (0, 1].
TiltedParams params_from_alpha(double alpha);
/// Throws OutOfRange for beta outside [0, 2).
TiltedParams params_from_beta(double beta);

ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
/// cos(mu) sigma_z + sin(mu) sigma_x.
ComplexMatrix sigma_z_tilted(double mu);
/// cos(mu) sigma_z - sin(mu) sigma_x.
ComplexMatrix sigma_x_tilted(double mu);

/// cos(theta)|00> + sin(theta)|11>.
BipartiteState tilted_state(double alpha);

/// Projectors {(I + A)/2, (I - A)/2} of a binary observable; outcome a has
/// eigenvalue (-1)^a. Throws NotBinaryObservable.
Measurement binary_measurement(const ComplexMatrix& observable, double tol = kConstructionTol);

struct TiltedCanonicalStrategy {
    TiltedParams params;
    ComplexMatrix a0, a1, b0, b1;
    Strategy strategy;
};

TiltedCanonicalStrategy canonical_strategy(const TiltedParams& params);

/// beta A0 (x) I + A0 (x) B0 + A0 (x) B1 + A1 (x) B0 - A1 (x) B1.
/// Throws NotBinaryObservable unless every input is Hermitian and squares to I.
ComplexMatrix tilted_operator(double beta, const ComplexMatrix& a0, const ComplexMatrix& a1,
                              const ComplexMatrix& b0, const ComplexMatrix& b1,
                              double tol = kConstructionTol);

/// The same expression as a functional on (2,2,2,2) correlations, with
/// <A_s B_t> = sum (-1)^{a+b} p(a,b|s,t) and <A_0> read from the t = 0 column.
BellFunctional tilted_functional(double beta);
inline BellFunctional chsh_functional() { return tilted_functional(0.0); }

/// sqrt(8 + 2 beta^2).
double quantum_maximum(double beta);
/// 2 + beta.
double local_maximum(double beta);

struct SweepRow {
    double beta = 0.0;
    double alpha = 0.0;
    double quantum_value = 0.0;  // canonical strategy, evaluated on its correlation
    double local_bound = 0.0;    // brute-force deterministic maximum
    double gap = 0.0;            // quantum_value - local_bound
};

/// Evenly spaced beta in [0, 2): beta_i = 2 i / points.
std::vector<double> beta_grid(std::size_t points);

std::vector<SweepRow> sweep(const std::vector<double>& betas);

}  // namespace bellkit::tilted
