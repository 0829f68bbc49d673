#pragma once

#include "paramod/connection.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paramod {

/**
 * @brief Nilpotent Higgs field [[0, theta], [0, 0]] on O(first) + O(second).
 *
 * theta maps the second summand into the first twisted by the log canonical
 * bundle, so its degree is at most first - second + 3. Flags are written in
 * (first, second) coordinates: 0 is the first fiber, inf the second. The split
 * need not be sorted.
 */
struct StronglyParabolicHiggs {
    int first = 0;
    int second = 1;
    std::array<ProjectivePoint, kPoints> flags;
    Poly theta;

    int degree() const { return first + second; }
    int theta_bound() const { return first - second + 3; }
    ParabolicStructure structure() const { return {BundleType{first, second}, flags}; }
};

std::vector<std::string> higgs_violations(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg);

/// Stability over theta-invariant line subbundles; throws "on-wall" on ties.
bool higgs_is_stable(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg, const WeightVector& w);

enum class Component { F0, F1, NotFixed, Other };
enum class Chart { Top, Bottom };

std::string component_name(Component c);
std::string chart_name(Chart c);

/**
 * @brief A point of the glued fixed-locus model.
 *
 * For F1 the divisor is [theta2 : theta1 : theta0] in the plane of quadrics; the
 * tangent is the coordinate on the exceptional curve over a double marked zero.
 */
struct FixedLocusPoint {
    Component component = Component::NotFixed;
    Chart chart = Chart::Top;
    std::vector<Scalar> divisor;
    std::optional<ProjectivePoint> tangent;

    friend bool operator==(const FixedLocusPoint&, const FixedLocusPoint&) = default;
};

/// Requires sum w < 1.
Component fixed_component(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg, const WeightVector& w);

/// Coordinates of a C*-fixed Higgs datum; Other when outside F0 and F1.
FixedLocusPoint fixed_point_of(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg);
/// Inverse of fixed_point_of on F0 and F1.
StronglyParabolicHiggs higgs_from_point(const FixedLocusPoint& p, const MarkedConfiguration& cfg);

/// Divisor of the quadric with zeros a and b.
std::vector<Scalar> tau(const ProjectivePoint& a, const ProjectivePoint& b);
/// Zeros of a divisor when they are rational; empty otherwise.
std::vector<ProjectivePoint> divisor_zeros(const std::vector<Scalar>& divisor);

struct CanonicalPoint {
    FixedLocusPoint point;
    /// Index of the removed curve the class lies on.
    std::optional<std::size_t> gamma;
};

CanonicalPoint fixedpoint_canonicalize(const FixedLocusPoint& p, const MarkedConfiguration& cfg);

struct LabeledPoint {
    std::string label;
    std::vector<Scalar> coords;
};

struct SpecialLoci {
    std::vector<LabeledPoint> points;
    /// Lines as coefficient vectors (a, b, c) of a X2 + b X1 + c X0 = 0 on [X2 : X1 : X0].
    std::vector<LabeledPoint> lines;
};

SpecialLoci special_loci(const MarkedConfiguration& cfg);

struct LimitCandidate {
    std::string name;
    StronglyParabolicHiggs higgs;
    bool stable = false;
};

struct CStarLimit {
    std::string candidate;
    StronglyParabolicHiggs higgs;
    FixedLocusPoint point;
    std::vector<LimitCandidate> candidates;
};

std::vector<LimitCandidate> limit_candidates(const FlatTriple& t, const MarkedConfiguration& cfg, const WeightVector& w);
CStarLimit cstar_limit(const FlatTriple& t, const MarkedConfiguration& cfg, const WeightVector& w);

/// Splits (first, second) allowed for fixed points with theta != 0.
std::vector<std::pair<int, int>> nonzero_higgs_splits(int d, const WeightVector& w);

struct FiberDimension {
    std::size_t before_gauge = 0;
    std::size_t gauge_rank = 0;
    std::size_t dimension = 0;
};

FiberDimension fiber_dimension(const FixedLocusPoint& p, const MarkedConfiguration& cfg, const SpectrumRank2& nu);

} // namespace paramod
