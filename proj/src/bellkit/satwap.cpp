// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/satwap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellkit/error.hpp"

namespace bellkit::satwap {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_d(std::size_t d)
{
    if (d < 2) {
        throw Error(ErrorCode::OutOfRange, "d must be at least 2");
    }
}

ComplexMatrix clock(std::size_t d)
{
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        z(i, i) = root_of_unity(d, static_cast<double>(i));
    }
    return z;
}

ComplexVector uniform(std::size_t d)
{
    return ComplexVector::Constant(d, Complex{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
}

// sum_{l<k} |J_sign*l><J_sign*l| with J_l = Z^l J.
ComplexMatrix shifted_j_sum(std::size_t d, std::size_t k, int sign)
{
    const ComplexMatrix z = clock(d);
    const ComplexVector j = uniform(d);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t l = 0; l < k; ++l) {
        const ComplexVector jl = unitary_power(z, sign * static_cast<int>(l)) * j;
        sum += jl * jl.adjoint();
    }
    return sum;
}

// tr(M^dagger (a (x) b) M) for the coefficient matrix M of psi.
Complex expectation(const ComplexMatrix& psi, const ComplexMatrix& a, const ComplexMatrix& b)
{
    return (psi.adjoint() * a * psi * b.transpose()).trace();
}

}  // namespace

SatwapCoefficients coefficients(std::size_t d)
{
    require_d(d);
    SatwapCoefficients c;
    c.d = d;
    c.r.reserve(d - 1);
    for (std::size_t k = 1; k < d; ++k) {
        const double q = (2.0 * static_cast<double>(k) - static_cast<double>(d)) / 8.0;
        c.r.push_back(root_of_unity(d, q) / std::numbers::sqrt2);
    }
    return c;
}

Strategy ObservableStrategy::to_strategy(double tol) const
{
    Strategy s{state, {}, {}};
    s.alice = {projectors_from_observable(a0, d, tol), projectors_from_observable(a1, d, tol)};
    s.bob = {projectors_from_observable(b0, d, tol), projectors_from_observable(b1, d, tol)};
    return s;
}

SatwapCanonical canonical_satwap(std::size_t d)
{
    require_d(d);
    const ComplexMatrix z = clock(d);
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        x((i + 1) % d, i) = 1.0;
    }
    const ComplexVector j = uniform(d);
    const ComplexMatrix jj = j * j.adjoint();
    const ComplexMatrix id = identity(d);
    const auto w = [d](double q) { return root_of_unity(d, q); };
    return SatwapCanonical{
        d,
        z,
        x,
        j,
        jj,
        ObservableStrategy{
            d,
            maximally_entangled(d),
            w(-0.25) * z * (id - (1.0 - kI) * jj),
            w(0.25) * z * (id - (1.0 + kI) * jj),
            z,
            w(0.5) * (id - 2.0 * jj) * z,
        },
    };
}

void require_d_valued(const ComplexMatrix& u, std::size_t d, double tol)
{
    if (u.rows() != u.cols() || !is_unitary(u, tol) ||
        distance(unitary_power(u, static_cast<int>(d)), identity(u.rows())) > tol) {
        throw Error(ErrorCode::NotDValuedObservable,
                    "observable is not unitary with O^" + std::to_string(d) + " = I");
    }
}

ComplexMatrix satwap_operator(std::size_t d, const ComplexMatrix& a0, const ComplexMatrix& a1,
                              const ComplexMatrix& b0, const ComplexMatrix& b1, double tol)
{
    const auto coeffs = coefficients(d);
    for (const ComplexMatrix* m : {&a0, &a1, &b0, &b1}) {
        require_d_valued(*m, d, tol);
    }
    ComplexMatrix o = ComplexMatrix::Zero(a0.rows() * b0.rows(), a0.rows() * b0.rows());
    for (std::size_t k = 1; k < d; ++k) {
        const int ki = static_cast<int>(k);
        const ComplexMatrix a0k = unitary_power(a0, ki);
        const ComplexMatrix a1k = unitary_power(a1, ki);
        const ComplexMatrix b0k = unitary_power(b0, -ki);
        const ComplexMatrix b1k = unitary_power(b1, -ki);
        const Complex r = coeffs.r_k(k);
        const Complex rb = coeffs.r_bar(k);
        o += r * tensor_product(a0k, b0k);
        o += rb * root_of_unity(d, static_cast<double>(k)) * tensor_product(a0k, b1k);
        o += rb * tensor_product(a1k, b0k);
        o += r * tensor_product(a1k, b1k);
    }
    return o;
}

BellFunctional satwap_functional(std::size_t d)
{
    const auto coeffs = coefficients(d);
    BellFunctional f(Scenario{2, 2, d, d});
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t t = 0; t < 2; ++t) {
            for (std::size_t k = 1; k < d; ++k) {
                Complex coef;
                if (s == 0 && t == 0) {
                    coef = coeffs.r_k(k);
                } else if (s == 0) {
                    coef = coeffs.r_bar(k) * root_of_unity(d, static_cast<double>(k));
                } else if (t == 0) {
                    coef = coeffs.r_bar(k);
                } else {
                    coef = coeffs.r_k(k);
                }
                for (std::size_t a = 0; a < d; ++a) {
                    for (std::size_t b = 0; b < d; ++b) {
                        const double phase = static_cast<double>((k * (a + d - b)) % d);
                        f.coefficient(a, b, s, t) += coef * root_of_unity(d, phase);
                    }
                }
            }
        }
    }
    // Conjugate k and d-k terms pair up; drop the rounding residue.
    for (auto& c : f.coefficients) {
        c = Complex{c.real(), 0.0};
    }
    return f;
}

double satwap_value(const ObservableStrategy& strategy)
{
    const auto coeffs = coefficients(strategy.d);
    const ComplexMatrix psi = strategy.state.matrix();
    Complex total{};
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 1; k < strategy.d; ++k) {
            const ComplexMatrix ask = unitary_power(strategy.alice(s), static_cast<int>(k));
            const ComplexMatrix c = c_operator(coeffs, s, k, strategy.b0, strategy.b1);
            total += expectation(psi, ask, c);
        }
    }
    return total.real();
}

double quantum_bound(std::size_t d) { return 2.0 * (static_cast<double>(d) - 1.0); }

double local_bound_formula(std::size_t d)
{
    require_d(d);
    const double x = std::numbers::pi / (4.0 * static_cast<double>(d));
    return (2.0 / std::tan(x) - 1.0 / std::tan(3.0 * x) - 4.0) / 2.0;
}

ComplexMatrix c_operator(const SatwapCoefficients& coeffs, std::size_t s, std::size_t k,
                         const ComplexMatrix& b0, const ComplexMatrix& b1)
{
    const int ki = static_cast<int>(k);
    const ComplexMatrix b0k = unitary_power(b0, -ki);
    const ComplexMatrix b1k = unitary_power(b1, -ki);
    if (s == 0) {
        return coeffs.r_k(k) * b0k +
               coeffs.r_bar(k) * root_of_unity(coeffs.d, static_cast<double>(k)) * b1k;
    }
    return coeffs.r_bar(k) * b0k + coeffs.r_k(k) * b1k;
}

double SosCertificate::max_residual() const
{
    double m = 0.0;
    for (const auto& row : residuals) {
        for (double r : row) {
            m = std::max(m, r);
        }
    }
    return m;
}

SosCertificate sos_certificate(const ObservableStrategy& strategy, bool keep_operators)
{
    const std::size_t d = strategy.d;
    const auto coeffs = coefficients(d);
    const ComplexMatrix psi = strategy.state.matrix();
    const std::size_t db = strategy.b0.rows();

    SosCertificate cert;
    cert.d = d;
    cert.c.assign(2, {});
    cert.m.assign(2, {});
    cert.residuals.assign(2, {});
    ComplexMatrix gram = ComplexMatrix::Zero(db, db);
    Complex value{};
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 1; k < d; ++k) {
            const int ki = static_cast<int>(k);
            const ComplexMatrix c = c_operator(coeffs, s, k, strategy.b0, strategy.b1);
            const ComplexMatrix ask = unitary_power(strategy.alice(s), ki);
            // M^dagger psi = (A_s^-k (x) I - I (x) C) psi.
            const ComplexMatrix mdag_psi = ask.adjoint() * psi - psi * c.transpose();
            cert.residuals[s].push_back(mdag_psi.norm());
            value += expectation(psi, ask, c);
            gram += c.adjoint() * c;
            if (keep_operators) {
                cert.m[s].push_back(tensor_product(ask, identity(db)) -
                                    tensor_product(identity(ask.rows()), c.adjoint()));
            }
            cert.c[s].push_back(c);
        }
    }
    cert.value = value.real();
    cert.gap = quantum_bound(d) - cert.value;
    double sos = 0.0;
    for (const auto& row : cert.residuals) {
        for (double r : row) {
            sos += r * r;
        }
    }
    cert.sos_value = 0.5 * sos;
    cert.gram_error = distance(gram, quantum_bound(d) * identity(db));
    return cert;
}

double IdentityReport::max_residual() const
{
    double m = 0.0;
    for (const auto& e : entries) {
        m = std::max(m, e.residual);
    }
    return m;
}

ComplexMatrix closed_form_b1_power(std::size_t d, std::size_t k)
{
    const ComplexMatrix z = clock(d);
    return root_of_unity(d, 0.5 * static_cast<double>(k)) *
           (identity(d) - 2.0 * shifted_j_sum(d, k, 1)) * unitary_power(z, static_cast<int>(k));
}

ComplexMatrix closed_form_a_power(std::size_t d, std::size_t s, std::size_t k)
{
    const ComplexMatrix z = clock(d);
    const double kd = static_cast<double>(k);
    const Complex phase = root_of_unity(d, s == 0 ? -0.25 * kd : 0.25 * kd);
    const Complex weight = s == 0 ? 1.0 - kI : 1.0 + kI;
    return phase * unitary_power(z, static_cast<int>(k)) *
           (identity(d) - weight * shifted_j_sum(d, k, -1));
}

IdentityReport operator_identities(std::size_t d)
{
    const auto canon = canonical_satwap(d);
    const auto coeffs = coefficients(d);
    const auto& st = canon.strategy;
    IdentityReport report;
    report.d = d;
    auto add = [&](const char* name, std::size_t k, double r) {
        report.entries.push_back({name, k, r});
    };
    for (std::size_t k = 1; k <= d; ++k) {
        const int ki = static_cast<int>(k);
        add("a0_power", k, distance(closed_form_a_power(d, 0, k), unitary_power(st.a0, ki)));
        add("a1_power", k, distance(closed_form_a_power(d, 1, k), unitary_power(st.a1, ki)));
        add("b1_power", k, distance(closed_form_b1_power(d, k), unitary_power(st.b1, ki)));
    }
    ComplexMatrix gram = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 1; k < d; ++k) {
        const int ki = static_cast<int>(k);
        const ComplexMatrix c0 = c_operator(coeffs, 0, k, st.b0, st.b1);
        const ComplexMatrix c1 = c_operator(coeffs, 1, k, st.b0, st.b1);
        add("c0_transpose", k, distance(c0.transpose(), unitary_power(st.a0, -ki)));
        add("c1_transpose", k, distance(c1.transpose(), unitary_power(st.a1, -ki)));
        add("j_clock_overlap", k,
            std::abs(canon.j.dot(unitary_power(canon.z, ki) * canon.j)));
        const double q = (2.0 * static_cast<double>(d - k) - static_cast<double>(d)) / 8.0;
        const Complex r_dk = root_of_unity(d, q) / std::numbers::sqrt2;
        add("r_conjugate", k, std::abs(coeffs.r_bar(k) - r_dk));
        const Complex rb = coeffs.r_bar(k);
        const Complex r = coeffs.r_k(k);
        add("r_square_cancel", k,
            std::abs(rb * rb * root_of_unity(d, static_cast<double>(k)) + r * r));
        gram += c0.adjoint() * c0 + c1.adjoint() * c1;
    }
    add("c_gram", 0, distance(gram, quantum_bound(d) * identity(d)));
    return report;
}

ComplexMatrix random_d_valued(std::size_t dim, std::size_t d, std::mt19937_64& rng)
{
    const ComplexMatrix v = haar_unitary(dim, rng);
    std::uniform_int_distribution<std::size_t> label(0, d - 1);
    ComplexVector diag(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        diag[i] = root_of_unity(d, static_cast<double>(label(rng)));
    }
    return v * diag.asDiagonal() * v.adjoint();
}

ObservableStrategy random_observable_strategy(std::size_t d, std::size_t dim,
                                              std::mt19937_64& rng)
{
    require_d(d);
    auto state = BipartiteState::normalized(dim, dim, gaussian_vector(dim * dim, rng));
    ComplexMatrix a0 = random_d_valued(dim, d, rng);
    ComplexMatrix a1 = random_d_valued(dim, d, rng);
    ComplexMatrix b0 = random_d_valued(dim, d, rng);
    ComplexMatrix b1 = random_d_valued(dim, d, rng);
    return ObservableStrategy{d, std::move(state), std::move(a0), std::move(a1), std::move(b0),
                              std::move(b1)};
}

}  // namespace bellkit::satwap
