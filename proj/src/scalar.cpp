#include "paramod/scalar.hpp"

#include "paramod/error.hpp"

#include <ostream>
#include <regex>

namespace paramod {

namespace {

mpq_class parse_rational(std::string_view text) {
    static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
    std::string s(text);
    if (!std::regex_match(s, pattern)) fail_schema("malformed rational: '" + s + "'");
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto slash = s.find('/');
    if (slash != std::string::npos && mpz_class(s.substr(slash + 1)) == 0)
        fail_schema("zero denominator: '" + s + "'");
    mpq_class q(s);
    q.canonicalize();
    return q;
}

} // namespace

Scalar::Scalar(long num, long den) {
    if (den == 0) fail_precondition("zero denominator");
    re_ = mpq_class(num, den);
    re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
    if (text.size() >= 2 && text.substr(text.size() - 2) == "*i") {
        auto body = text.substr(0, text.size() - 2);
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') {
                split = k;
                break;
            }
        }
        if (split == std::string_view::npos) return Scalar(0, parse_rational(body));
        return Scalar(parse_rational(body.substr(0, split)), parse_rational(body.substr(split)));
    }
    return Scalar(parse_rational(text), 0);
}

bool Scalar::is_integer() const {
    return sgn(im_) == 0 && re_.get_den() == 1;
}

std::string Scalar::str() const {
    if (is_real()) return re_.get_str();
    std::string out = re_.get_str();
    if (sgn(im_) > 0) out += '+';
    out += im_.get_str();
    out += "*i";
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) fail_precondition("division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar Scalar::operator-() const {
    return Scalar(mpq_class(-re_), mpq_class(-im_));
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (!a.is_real() || !b.is_real()) fail_precondition("order comparison of non-real scalars");
    return a.re_ < b.re_;
}

bool Scalar::lex_less(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
}

int Scalar::sign() const {
    if (!is_real()) fail_precondition("sign of a non-real scalar");
    return sgn(re_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

Scalar pow(const Scalar& base, unsigned e) {
    Scalar out(1);
    for (unsigned k = 0; k < e; ++k) out *= base;
    return out;
}

mpz_class floor(const Scalar& x) {
    if (!x.is_real()) fail_precondition("floor of a non-real scalar");
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.re().get_num_mpz_t(), x.re().get_den_mpz_t());
    return q;
}

} // namespace paramod
