// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> as_rows(const ComplexVector& v, std::size_t rows,
                                         std::size_t cols)
{
    return {v.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

ComplexVector flatten(const RowMajorMatrix& m)
{
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

void require_square(const ComplexMatrix& m, const char* what)
{
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
    }
}

}  // namespace

Complex root_of_unity(std::size_t d, double q)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * q / static_cast<double>(d));
}

ComplexMatrix identity(std::size_t n)
{
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "distance between differently shaped matrices");
    }
    return (a - b).norm();
}

bool is_unitary(const ComplexMatrix& m, double tol)
{
    return m.rows() == m.cols() && distance(m.adjoint() * m, identity(m.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    return m.rows() == m.cols() && distance(m, m.adjoint()) <= tol;
}

bool is_projector(const ComplexMatrix& m, double tol)
{
    return is_hermitian(m, tol) && distance(m * m, m) <= tol;
}

ComplexMatrix unitary_power(const ComplexMatrix& u, int k)
{
    require_square(u, "unitary_power operand");
    ComplexMatrix base = k < 0 ? ComplexMatrix(u.adjoint()) : u;
    ComplexMatrix result = identity(u.rows());
    for (int i = 0; i < std::abs(k); ++i) {
        result = result * base;
    }
    return result;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::vector<ComplexMatrix> projectors_from_observable(const ComplexMatrix& u, std::size_t d,
                                                      double tol)
{
    require_square(u, "observable");
    if (d < 2) {
        throw Error(ErrorCode::OutOfRange, "outcome count must be at least 2");
    }
    const auto n = u.rows();
    if (distance(u.adjoint() * u, identity(n)) > tol) {
        throw Error(ErrorCode::NotUnitary, "observable is not unitary");
    }
    std::vector<ComplexMatrix> powers;
    powers.reserve(d + 1);
    powers.push_back(identity(n));
    for (std::size_t l = 1; l <= d; ++l) {
        powers.push_back(powers.back() * u);
    }
    if (distance(powers[d], identity(n)) > tol) {
        throw Error(ErrorCode::NotDthRoot, "U^d differs from the identity");
    }

    std::vector<ComplexMatrix> projectors;
    projectors.reserve(d);
    for (std::size_t a = 0; a < d; ++a) {
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (std::size_t l = 0; l < d; ++l) {
            p += root_of_unity(d, -static_cast<double>((a * l) % d)) * powers[l];
        }
        projectors.push_back(p / static_cast<double>(d));
    }
    return projectors;
}

void validate_measurement(const std::vector<ComplexMatrix>& projectors, double tol)
{
    if (projectors.empty()) {
        throw Error(ErrorCode::InvalidMeasurement, "measurement has no outcomes");
    }
    const auto n = projectors.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t a = 0; a < projectors.size(); ++a) {
        const auto& p = projectors[a];
        if (p.rows() != n || p.cols() != n) {
            throw Error(ErrorCode::InvalidMeasurement, "projector dimensions differ");
        }
        if (!is_projector(p, tol)) {
            throw Error(ErrorCode::InvalidMeasurement,
                        "outcome " + std::to_string(a) + " is not an orthogonal projector");
        }
        for (std::size_t b = a + 1; b < projectors.size(); ++b) {
            if ((p * projectors[b]).norm() > tol) {
                throw Error(ErrorCode::InvalidMeasurement,
                            "outcomes " + std::to_string(a) + " and " + std::to_string(b) +
                                " are not orthogonal");
            }
        }
        sum += p;
    }
    if (distance(sum, identity(n)) > tol) {
        throw Error(ErrorCode::InvalidMeasurement, "projectors do not sum to the identity");
    }
}

DValuedObservable DValuedObservable::from_unitary(ComplexMatrix u, std::size_t d, double tol)
{
    auto projectors = projectors_from_observable(u, d, tol);
    return {std::move(u), std::move(projectors)};
}

DValuedObservable DValuedObservable::from_projectors(std::vector<ComplexMatrix> projectors,
                                                     double tol)
{
    validate_measurement(projectors, tol);
    const std::size_t d = projectors.size();
    const auto n = projectors.front().rows();
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t a = 0; a < d; ++a) {
        m += root_of_unity(d, static_cast<double>(a)) * projectors[a];
    }
    return {std::move(m), std::move(projectors)};
}

double DValuedObservable::invariant_residual() const
{
    const auto n = matrix_.rows();
    const std::size_t dd = d();
    double worst = distance(matrix_.adjoint() * matrix_, identity(n));
    worst = std::max(worst, distance(unitary_power(matrix_, static_cast<int>(dd)), identity(n)));
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
    for (std::size_t a = 0; a < dd; ++a) {
        const auto& p = projectors_[a];
        worst = std::max(worst, distance(p, p.adjoint()));
        worst = std::max(worst, distance(p * p, p));
        for (std::size_t b = a + 1; b < dd; ++b) {
            worst = std::max(worst, (p * projectors_[b]).norm());
        }
        sum += p;
        rebuilt += root_of_unity(dd, static_cast<double>(a)) * p;
    }
    worst = std::max(worst, distance(sum, identity(n)));
    return std::max(worst, distance(rebuilt, matrix_));
}

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
                               double tol)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes))
{
    if (dim_a == 0 || dim_b == 0 ||
        static_cast<std::size_t>(amplitudes_.size()) != dim_a * dim_b) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count must equal d_A * d_B");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > tol) {
        throw Error(ErrorCode::OutOfRange, "state vector is not normalized");
    }
}

BipartiteState BipartiteState::normalized(std::size_t dim_a, std::size_t dim_b,
                                          ComplexVector amplitudes)
{
    const double n = amplitudes.norm();
    if (n == 0.0) {
        throw Error(ErrorCode::OutOfRange, "cannot normalize the zero vector");
    }
    amplitudes /= n;
    return {dim_a, dim_b, std::move(amplitudes)};
}

BipartiteState BipartiteState::product(const ComplexVector& a, const ComplexVector& b)
{
    ComplexVector amps(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        amps.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return normalized(a.size(), b.size(), std::move(amps));
}

ComplexMatrix BipartiteState::matrix() const
{
    return as_rows(amplitudes_, dim_a_, dim_b_);
}

BipartiteState maximally_entangled(std::size_t d)
{
    ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) {
        amps[static_cast<Eigen::Index>(i * d + i)] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return {d, d, std::move(amps)};
}

BipartiteState tensor_states(const BipartiteState& first, const BipartiteState& second)
{
    const std::size_t a1 = first.dim_a(), b1 = first.dim_b();
    const std::size_t a2 = second.dim_a(), b2 = second.dim_b();
    const std::size_t db = b1 * b2;
    ComplexVector amps(static_cast<Eigen::Index>(a1 * a2 * db));
    for (std::size_t i1 = 0; i1 < a1; ++i1) {
        for (std::size_t j1 = 0; j1 < b1; ++j1) {
            const Complex x = first.amplitude(i1, j1);
            for (std::size_t i2 = 0; i2 < a2; ++i2) {
                for (std::size_t j2 = 0; j2 < b2; ++j2) {
                    amps[static_cast<Eigen::Index>((i1 * a2 + i2) * db + j1 * b2 + j2)] =
                        x * second.amplitude(i2, j2);
                }
            }
        }
    }
    return BipartiteState::normalized(a1 * a2, db, std::move(amps));
}

BipartiteState apply_local_unitaries(const ComplexMatrix& u, const ComplexMatrix& v,
                                     const BipartiteState& psi)
{
    if (!is_unitary(u) || !is_unitary(v)) {
        throw Error(ErrorCode::NotUnitary, "local conjugation requires unitaries");
    }
    ComplexVector out = apply_local(u, Side::A, psi);
    out = apply_local(v, Side::B, psi.dim_a(), psi.dim_b(), out);
    return BipartiteState::normalized(psi.dim_a(), psi.dim_b(), std::move(out));
}

std::size_t SchmidtSpectrum::rank(double tol) const
{
    return static_cast<std::size_t>(
        std::count_if(coefficients.begin(), coefficients.end(), [tol](double c) { return c > tol; }));
}

double SchmidtSpectrum::sum_of_squares() const
{
    double s = 0.0;
    for (double c : coefficients) {
        s += c * c;
    }
    return s;
}

ComplexVector SchmidtDecomposition::reconstruct() const
{
    const auto da = basis_a.rows();
    const auto db = basis_b.rows();
    RowMajorMatrix m = RowMajorMatrix::Zero(da, db);
    for (std::size_t i = 0; i < spectrum.coefficients.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        m += spectrum.coefficients[i] * basis_a.col(k) * basis_b.col(k).transpose();
    }
    return flatten(m);
}

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi)
{
    const ComplexMatrix m = psi.matrix();
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    const auto& s = svd.singularValues();
    out.spectrum.coefficients.assign(s.data(), s.data() + s.size());
    out.basis_a = svd.matrixU();
    out.basis_b = svd.matrixV().conjugate();
    return out;
}

SchmidtSpectrum schmidt_spectrum(const BipartiteState& psi)
{
    const std::size_t da = psi.dim_a(), db = psi.dim_b();
    const auto& amps = psi.amplitudes();
    std::vector<int> row_hits(da, 0), col_hits(db, 0);
    std::vector<double> values;
    bool monomial = true;
    for (std::size_t a = 0; a < da && monomial; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
            const Complex x = amps[static_cast<Eigen::Index>(a * db + b)];
            if (x == Complex{}) {
                continue;
            }
            if (++row_hits[a] > 1 || ++col_hits[b] > 1) {
                monomial = false;
                break;
            }
            values.push_back(std::abs(x));
        }
    }
    if (!monomial) {
        return schmidt_decompose(psi).spectrum;
    }
    values.resize(std::min(da, db), 0.0);
    std::sort(values.begin(), values.end(), std::greater<>());
    return {std::move(values)};
}

ComplexMatrix partial_trace(const BipartiteState& psi, Side traced)
{
    const ComplexMatrix m = psi.matrix();
    if (traced == Side::B) {
        return m * m.adjoint();
    }
    return (m.adjoint() * m).transpose();
}

ComplexVector apply_local(const ComplexMatrix& op, Side side, std::size_t dim_a,
                          std::size_t dim_b, const ComplexVector& amplitudes)
{
    const std::size_t dim = side == Side::A ? dim_a : dim_b;
    if (static_cast<std::size_t>(op.rows()) != dim || static_cast<std::size_t>(op.cols()) != dim ||
        static_cast<std::size_t>(amplitudes.size()) != dim_a * dim_b) {
        throw Error(ErrorCode::DimensionMismatch, "local operator does not match the subsystem");
    }
    const auto m = as_rows(amplitudes, dim_a, dim_b);
    RowMajorMatrix out = side == Side::A ? RowMajorMatrix(op * m) : RowMajorMatrix(m * op.transpose());
    return flatten(out);
}

ComplexVector apply_local(const ComplexMatrix& op, Side side, const BipartiteState& psi)
{
    return apply_local(op, side, psi.dim_a(), psi.dim_b(), psi.amplitudes());
}

ComplexMatrix support_basis(const ComplexMatrix& psd, double tol)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(psd);
    const auto& values = eig.eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = values.size(); i-- > 0;) {
        if (values[i] > tol) {
            keep.push_back(i);
        }
    }
    ComplexMatrix basis(psd.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]);
    }
    return basis;
}

ComplexVector gaussian_vector(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) {
        const double re = normal(rng);
        const double im = normal(rng);
        x = Complex(re, im) / std::sqrt(2.0);
    }
    return v;
}

ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng)
{
    const auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix g(k, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        g.col(c) = gaussian_vector(n, rng);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < k; ++c) {
        const double mag = std::abs(r(c, c));
        if (mag > 0.0) {
            q.col(c) *= r(c, c) / mag;
        }
    }
    return q;
}

}  // namespace bellkit
