#include "paramod/poly.hpp"

#include "paramod/error.hpp"

#include <algorithm>

namespace paramod {

Poly::Poly(std::vector<Scalar> coeffs, std::optional<int> bound)
    : c_(std::move(coeffs)), bound_(bound ? *bound : static_cast<int>(c_.size()) - 1) {
    trim();
    if (degree() > bound_) fail_precondition("polynomial exceeds its degree bound");
}

Poly Poly::constant(const Scalar& c, int bound) {
    return Poly({c}, bound);
}

Poly Poly::monomial(int k, const Scalar& c) {
    std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const Scalar& a) {
    return Poly({-a, Scalar(1)});
}

Poly Poly::from_roots(const std::vector<Scalar>& roots) {
    Poly p = constant(Scalar(1));
    for (const auto& r : roots) p = p * linear(r);
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<std::size_t>(k)];
}

std::vector<Scalar> Poly::padded() const {
    std::vector<Scalar> out(static_cast<std::size_t>(std::max(bound_ + 1, 0)));
    for (std::size_t k = 0; k < c_.size() && k < out.size(); ++k) out[k] = c_[k];
    return out;
}

Scalar Poly::operator()(const Scalar& z) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= z;
        acc += *it;
    }
    return acc;
}

Poly Poly::derivative() const {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(Scalar(static_cast<long>(k)) * c_[k]);
    return Poly(std::move(d), std::max(bound_ - 1, -1));
}

Poly Poly::with_bound(int b) const {
    if (degree() > b) fail_precondition("polynomial exceeds requested degree bound");
    Poly p = *this;
    p.bound_ = b;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    bound_ = std::max(bound_, o.bound_);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    bound_ = std::max(bound_, o.bound_);
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.bound_ = (a.bound_ < 0 || b.bound_ < 0) ? std::max(a.bound_, b.bound_) : a.bound_ + b.bound_;
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.trim();
    return out;
}

Poly operator*(const Scalar& s, const Poly& p) {
    Poly out = p;
    for (auto& c : out.c_) c *= s;
    out.trim();
    return out;
}

Poly Poly::operator-() const {
    return Scalar(-1) * *this;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) fail_precondition("polynomial division by zero");
    std::vector<Scalar> rem = c_;
    int dd = d.degree();
    int qd = degree() - dd;
    std::vector<Scalar> quot(static_cast<std::size_t>(std::max(qd + 1, 0)));
    const Scalar& lead = d.c_.back();
    for (int k = qd; k >= 0; --k) {
        Scalar f = rem[static_cast<std::size_t>(k + dd)] / lead;
        quot[static_cast<std::size_t>(k)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    Poly q(std::move(quot));
    Poly r(std::move(rem));
    return {q, r};
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs = c.is_real() ? c.str() : "(" + c.str() + ")";
        bool unit = k > 0 && (c == Scalar(1) || c == Scalar(-1));
        if (unit) cs = c == Scalar(1) ? "" : "-";
        if (!out.empty() && (cs.empty() || cs.front() != '-')) out += '+';
        out += cs;
        if (k > 0) {
            if (!unit) out += '*';
            out += 'z';
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Scalar(1) / a.coeff(a.degree())) * a;
}

Poly lagrange_denominator_poly(const std::vector<Scalar>& z, std::size_t i) {
    Poly p = Poly::constant(Scalar(1));
    for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) p = p * Poly::linear(z[j]);
    return p;
}

std::optional<Poly> interpolate(const std::vector<std::pair<Scalar, Scalar>>& points, int degree_bound) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first) fail_precondition("repeated interpolation abscissa");
    if (n == 0) return Poly({}, degree_bound);

    // Newton divided differences.
    std::vector<Scalar> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

    Poly result;
    Poly basis = Poly::constant(Scalar(1));
    for (std::size_t i = 0; i < n; ++i) {
        result += dd[i] * basis;
        basis = basis * Poly::linear(points[i].first);
    }
    if (result.degree() > degree_bound) return std::nullopt;
    return result.with_bound(degree_bound);
}

} // namespace paramod
