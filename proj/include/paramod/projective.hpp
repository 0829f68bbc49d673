#pragma once

#include "paramod/scalar.hpp"

#include <string>
#include <string_view>

namespace paramod {

/**
 * @brief Point [kappa : lambda] of the projective line.
 *
 * Stored canonically: kappa = 1 for finite points, (0, 1) for infinity.
 * A finite point is identified with its affine value lambda/kappa.
 */
class ProjectivePoint {
public:
    ProjectivePoint() : kappa_(1), lambda_(0) {}
    ProjectivePoint(const Scalar& kappa, const Scalar& lambda);

    static ProjectivePoint finite(const Scalar& value) { return {Scalar(1), value}; }
    static ProjectivePoint infinity() { return {Scalar(0), Scalar(1)}; }
    static ProjectivePoint parse(std::string_view text);

    const Scalar& kappa() const { return kappa_; }
    const Scalar& lambda() const { return lambda_; }

    bool is_infinite() const { return kappa_.is_zero(); }
    /// Affine value; throws at infinity.
    const Scalar& value() const;

    std::string str() const;

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.kappa_ == b.kappa_ && a.lambda_ == b.lambda_;
    }

    /// Finite points in lexicographic order, infinity last.
    static bool less(const ProjectivePoint& a, const ProjectivePoint& b);

private:
    Scalar kappa_;
    Scalar lambda_;
};

} // namespace paramod
