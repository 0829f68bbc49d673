#include "paramod/projective.hpp"

#include "paramod/error.hpp"

namespace paramod {

ProjectivePoint::ProjectivePoint(const Scalar& kappa, const Scalar& lambda) {
    if (kappa.is_zero()) {
        if (lambda.is_zero()) fail_precondition("projective point [0:0]");
        kappa_ = Scalar(0);
        lambda_ = Scalar(1);
    } else {
        kappa_ = Scalar(1);
        lambda_ = lambda / kappa;
    }
}

ProjectivePoint ProjectivePoint::parse(std::string_view text) {
    if (text == "inf") return infinity();
    return finite(Scalar::parse(text));
}

const Scalar& ProjectivePoint::value() const {
    if (is_infinite()) fail_precondition("affine value of the point at infinity");
    return lambda_;
}

std::string ProjectivePoint::str() const {
    return is_infinite() ? std::string("inf") : lambda_.str();
}

bool ProjectivePoint::less(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
    if (a.is_infinite()) return false;
    return Scalar::lex_less(a.lambda_, b.lambda_);
}

} // namespace paramod
