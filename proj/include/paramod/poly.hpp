#pragma once

#include "paramod/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace paramod {

/**
 * @brief Univariate polynomial in z with an explicit degree bound.
 *
 * Coefficients are stored trimmed (no trailing zeros); the bound is the
 * declared space the polynomial lives in and is carried through arithmetic.
 */
class Poly {
public:
    Poly() = default;
    /// bound defaults to coeffs.size() - 1.
    explicit Poly(std::vector<Scalar> coeffs, std::optional<int> bound = std::nullopt);

    static Poly constant(const Scalar& c, int bound = 0);
    static Poly monomial(int k, const Scalar& c = Scalar(1));
    /// z - a
    static Poly linear(const Scalar& a);
    static Poly from_roots(const std::vector<Scalar>& roots);

    int bound() const { return bound_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Scalar coeff(int k) const;
    const std::vector<Scalar>& coeffs() const { return c_; }
    /// Coefficients 0..bound, zero padded.
    std::vector<Scalar> padded() const;

    Scalar operator()(const Scalar& z) const;
    Poly derivative() const;
    Poly with_bound(int b) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Scalar& s, const Poly& p);
    Poly operator-() const;

    /// Coefficientwise equality; bounds are ignored.
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division; the divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;

    /// Human readable form such as "z^2-3*z+1/2".
    std::string str() const;

private:
    void trim();

    std::vector<Scalar> c_;
    int bound_ = -1;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);

/// prod_{j != i} (z - z_j)
Poly lagrange_denominator_poly(const std::vector<Scalar>& z, std::size_t i);

/**
 * @brief Minimal-degree interpolant through the points, if its degree fits the bound.
 *
 * Returns nullopt when no polynomial of degree <= bound passes through all points.
 * Throws on repeated abscissae.
 */
std::optional<Poly> interpolate(const std::vector<std::pair<Scalar, Scalar>>& points, int degree_bound);

} // namespace paramod
