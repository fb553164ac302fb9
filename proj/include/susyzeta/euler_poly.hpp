#ifndef SUSYZETA_EULER_POLY_HPP
#define SUSYZETA_EULER_POLY_HPP

// Polynomials in the Euler operator D = x d/dx.
//
// Every operator built from the seed x^(-S0) is scale-homogeneous: it can be written as
// x^(-k) P(D) for an integer weight k and a polynomial P with complex coefficients.
// Monomials are eigenfunctions, D x^(-S) = -S x^(-S), so P acts on them by P(-S).

#include <susyzeta/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace susyzeta {

using complex = std::complex<double>;

class EulerPoly {
public:
    // Second-order operators compose into fourth-order ones (intertwining relations,
    // quadratic algebra); nothing in the construction goes beyond that.
    static constexpr std::size_t max_degree = 4;

    EulerPoly() = default;

    // Coefficients c_0, c_1, ... of sum c_j D^j.
    EulerPoly(std::initializer_list<complex> coeffs) : EulerPoly(std::span<const complex>(coeffs.begin(), coeffs.size())) {}

    explicit EulerPoly(std::span<const complex> coeffs)
    {
        if (coeffs.size() > max_degree + 1) {
            // trailing zeros beyond the cap are harmless
            for (std::size_t j = max_degree + 1; j < coeffs.size(); ++j) {
                if (coeffs[j] != complex{}) {
                    throw DomainError("EulerPoly: degree exceeds " + std::to_string(max_degree));
                }
            }
        }
        const std::size_t n = std::min(coeffs.size(), max_degree + 1);
        std::copy_n(coeffs.begin(), n, coeffs_.begin());
        trim();
    }

    static EulerPoly constant(complex c) { return EulerPoly{c}; }
    // D + c
    static EulerPoly linear(complex d_coeff, complex c) { return EulerPoly{c, d_coeff}; }
    static EulerPoly euler() { return EulerPoly{0.0, 1.0}; }

    // -1 for the zero polynomial.
    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return degree_ < 0; }

    complex operator[](std::size_t j) const noexcept { return j <= max_degree ? coeffs_[j] : complex{}; }
    std::span<const complex> coefficients() const noexcept
    {
        return {coeffs_.data(), static_cast<std::size_t>(degree_ + 1)};
    }

    // P(z) by Horner's rule.
    complex evaluate(complex z) const noexcept
    {
        complex acc{};
        for (int j = degree_; j >= 0; --j) {
            acc = acc * z + coeffs_[static_cast<std::size_t>(j)];
        }
        return acc;
    }

    // P(D + c).
    EulerPoly shifted(complex c) const
    {
        // Taylor shift by repeated synthetic division.
        std::array<complex, max_degree + 1> a = coeffs_;
        const int n = degree_;
        for (int i = 0; i < n; ++i) {
            for (int j = n - 1; j >= i; --j) {
                a[static_cast<std::size_t>(j)] += c * a[static_cast<std::size_t>(j + 1)];
            }
        }
        return EulerPoly(std::span<const complex>(a.data(), a.size()));
    }

    friend EulerPoly operator+(const EulerPoly& p, const EulerPoly& q)
    {
        std::array<complex, max_degree + 1> out{};
        for (std::size_t j = 0; j <= max_degree; ++j) {
            out[j] = p.coeffs_[j] + q.coeffs_[j];
        }
        return EulerPoly(std::span<const complex>(out.data(), out.size()));
    }

    friend EulerPoly operator*(complex k, const EulerPoly& p)
    {
        std::array<complex, max_degree + 1> out{};
        for (std::size_t j = 0; j <= max_degree; ++j) {
            out[j] = k * p.coeffs_[j];
        }
        return EulerPoly(std::span<const complex>(out.data(), out.size()));
    }

    friend bool operator==(const EulerPoly& p, const EulerPoly& q) noexcept { return p.coeffs_ == q.coeffs_; }

private:
    void trim() noexcept
    {
        degree_ = -1;
        for (std::size_t j = 0; j <= max_degree; ++j) {
            if (coeffs_[j] != complex{}) {
                degree_ = static_cast<int>(j);
            }
        }
    }

    std::array<complex, max_degree + 1> coeffs_{};
    int degree_ = -1;
};

// a2 d^2/dx^2 + (b / x) d/dx + c / x^2
struct RationalDiffOp {
    complex a2;
    complex b_over_x;
    complex c_over_x2;

    friend bool operator==(const RationalDiffOp&, const RationalDiffOp&) = default;
};

// d_coeff d/dx + c / x, the shape of the first-order intertwiners.
struct FirstOrderDiffOp {
    complex d_coeff;
    complex c_over_x;

    friend bool operator==(const FirstOrderDiffOp&, const FirstOrderDiffOp&) = default;
};

// x^(-weight) P(D)
struct HomogeneousOp {
    int weight = 0;
    EulerPoly poly;
};

// Eigenvalue of p on x^(-S): p(-S).
inline complex euler_apply(const EulerPoly& p, complex S) noexcept { return p.evaluate(-S); }

inline EulerPoly euler_multiply(const EulerPoly& p, const EulerPoly& q)
{
    if (p.is_zero() || q.is_zero()) {
        return {};
    }
    if (static_cast<std::size_t>(p.degree() + q.degree()) > EulerPoly::max_degree) {
        throw DomainError("euler_multiply: product degree exceeds " + std::to_string(EulerPoly::max_degree));
    }
    std::array<complex, EulerPoly::max_degree + 1> out{};
    for (int i = 0; i <= p.degree(); ++i) {
        for (int j = 0; j <= q.degree(); ++j) {
            out[static_cast<std::size_t>(i + j)] += p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)];
        }
    }
    return EulerPoly(std::span<const complex>(out.data(), out.size()));
}

inline EulerPoly operator*(const EulerPoly& p, const EulerPoly& q) { return euler_multiply(p, q); }

// x^2 (a2 d^2 + b/x d + c/x^2) = a2 (D^2 - D) + b D + c
inline EulerPoly rational_to_euler(const RationalDiffOp& op)
{
    return EulerPoly{op.c_over_x2, op.b_over_x - op.a2, op.a2};
}

// x (d_coeff d + c/x) = d_coeff D + c
inline EulerPoly first_order_to_euler(const FirstOrderDiffOp& op) { return EulerPoly{op.c_over_x, op.d_coeff}; }

inline HomogeneousOp as_homogeneous(const RationalDiffOp& op) { return {2, rational_to_euler(op)}; }
inline HomogeneousOp as_homogeneous(const FirstOrderDiffOp& op) { return {1, first_order_to_euler(op)}; }

// (x^-a P(D)) (x^-b Q(D)) = x^-(a+b) P(D - b) Q(D), from D x^-b = x^-b (D - b).
inline HomogeneousOp compose(const HomogeneousOp& left, const HomogeneousOp& right)
{
    return {left.weight + right.weight, euler_multiply(left.poly.shifted(-static_cast<double>(right.weight)), right.poly)};
}

struct FactorizationCheck {
    bool holds;
    double max_deviation;
};

// Relative tolerance for "exact" coefficient agreement.
inline constexpr double exact_tolerance = 1e-14;

inline FactorizationCheck verify_factorization(const EulerPoly& lhs, std::span<const EulerPoly> factors)
{
    EulerPoly product = EulerPoly::constant(1.0);
    for (const EulerPoly& f : factors) {
        product = euler_multiply(product, f);
    }
    double deviation = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j <= EulerPoly::max_degree; ++j) {
        deviation = std::max(deviation, std::abs(lhs[j] - product[j]));
        scale = std::max({scale, std::abs(lhs[j]), std::abs(product[j])});
    }
    return {deviation <= exact_tolerance * scale, deviation};
}

inline FactorizationCheck verify_factorization(const EulerPoly& lhs, std::initializer_list<EulerPoly> factors)
{
    return verify_factorization(lhs, std::span<const EulerPoly>(factors.begin(), factors.size()));
}

} // namespace susyzeta

#endif
