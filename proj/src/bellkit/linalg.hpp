// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dense complex linear algebra shared by every module: tensor products,
// d-valued observables, bipartite states, partial traces and Schmidt analysis.
//
// Composite index convention: a bipartite basis vector |a>|b> with local
// dimensions (d_A, d_B) sits at position a * d_B + b. tensor_product() follows
// the same convention, so (X (x) Y) acts on |a>|b> as X on a and Y on b.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace bellkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kConstructionTol = 1e-10;
inline constexpr double kAcceptanceTol = 1e-8;

enum class Side { A, B };

/// exp(2 pi i q / d), the principal branch for rational exponents q.
Complex root_of_unity(std::size_t d, double q);

ComplexMatrix identity(std::size_t n);

/// Frobenius norm of a - b. All matrix residuals in the library use it.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& m, double tol = kConstructionTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kConstructionTol);
bool is_projector(const ComplexMatrix& m, double tol = kConstructionTol);

/// u^k for a unitary u; negative k uses the adjoint.
ComplexMatrix unitary_power(const ComplexMatrix& u, int k);

/// Kronecker product with the composite index convention above.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectral projectors P_a = (1/d) sum_l omega^{-a l} U^l of a unitary with U^d = I.
/// Throws NotUnitary or NotDthRoot.
std::vector<ComplexMatrix> projectors_from_observable(const ComplexMatrix& u, std::size_t d,
                                                      double tol = kConstructionTol);

/// Unitary O with O^d = I together with its eigenprojectors; outcome a is the
/// eigenvalue omega^a.
class DValuedObservable {
public:
    static DValuedObservable from_unitary(ComplexMatrix u, std::size_t d,
                                          double tol = kConstructionTol);
    /// Builds O = sum_a omega^a P_a. Throws InvalidMeasurement if the list is
    /// not a complete family of orthogonal projectors.
    static DValuedObservable from_projectors(std::vector<ComplexMatrix> projectors,
                                             double tol = kConstructionTol);

    std::size_t d() const noexcept { return projectors_.size(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }

    /// Max violation over unitarity, O^d = I, projector and completeness checks.
    double invariant_residual() const;

private:
    DValuedObservable(ComplexMatrix m, std::vector<ComplexMatrix> p)
        : matrix_(std::move(m)), projectors_(std::move(p))
    {}

    ComplexMatrix matrix_;
    std::vector<ComplexMatrix> projectors_;
};

/// Checks that the projectors are Hermitian idempotents, mutually orthogonal
/// and complete. Throws InvalidMeasurement.
void validate_measurement(const std::vector<ComplexMatrix>& projectors,
                          double tol = kConstructionTol);

/// Unit vector in C^{d_A} (x) C^{d_B}.
class BipartiteState {
public:
    /// Throws DimensionMismatch on a length mismatch and OutOfRange when the
    /// norm differs from 1 by more than tol.
    BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
                   double tol = 1e-12);

    /// Rescales to unit norm. Throws OutOfRange for the zero vector.
    static BipartiteState normalized(std::size_t dim_a, std::size_t dim_b,
                                     ComplexVector amplitudes);
    static BipartiteState product(const ComplexVector& a, const ComplexVector& b);

    std::size_t dim_a() const noexcept { return dim_a_; }
    std::size_t dim_b() const noexcept { return dim_b_; }
    std::size_t dimension() const noexcept { return dim_a_ * dim_b_; }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::size_t a, std::size_t b) const { return amplitudes_[a * dim_b_ + b]; }

    /// d_A x d_B coefficient matrix, entry (a, b) = <ab|psi>.
    ComplexMatrix matrix() const;

private:
    std::size_t dim_a_;
    std::size_t dim_b_;
    ComplexVector amplitudes_;
};

/// (1/sqrt d) sum_i |ii>.
BipartiteState maximally_entangled(std::size_t d);

/// Joint state of two bipartite states, regrouped as (A1 A2)(B1 B2).
BipartiteState tensor_states(const BipartiteState& first, const BipartiteState& second);

/// Conjugates a state by local unitaries: (u (x) v)|psi>.
BipartiteState apply_local_unitaries(const ComplexMatrix& u, const ComplexMatrix& v,
                                     const BipartiteState& psi);

struct SchmidtSpectrum {
    std::vector<double> coefficients;  // nonincreasing, squares sum to 1

    std::size_t rank(double tol = 1e-12) const;
    double sum_of_squares() const;
};

/// psi = sum_i s_i basis_a.col(i) (x) basis_b.col(i).
struct SchmidtDecomposition {
    SchmidtSpectrum spectrum;
    ComplexMatrix basis_a;
    ComplexMatrix basis_b;

    ComplexVector reconstruct() const;
};

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi);

/// Schmidt coefficients only. States whose coefficient matrix has at most one
/// nonzero per row and column are read off directly; others go through SVD.
SchmidtSpectrum schmidt_spectrum(const BipartiteState& psi);

/// Reduced density matrix after tracing out `traced`.
ComplexMatrix partial_trace(const BipartiteState& psi, Side traced);

/// (op (x) I)|psi> or (I (x) op)|psi> without forming the Kronecker product.
ComplexVector apply_local(const ComplexMatrix& op, Side side, const BipartiteState& psi);
ComplexVector apply_local(const ComplexMatrix& op, Side side, std::size_t dim_a,
                          std::size_t dim_b, const ComplexVector& amplitudes);

/// Orthonormal basis (columns) of the eigenvectors of a Hermitian PSD matrix
/// with eigenvalue above tol.
ComplexMatrix support_basis(const ComplexMatrix& psd, double tol = 1e-10);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);

/// Vector of i.i.d. standard complex Gaussians.
ComplexVector gaussian_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace bellkit
