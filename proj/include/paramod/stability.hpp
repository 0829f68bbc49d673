#pragma once

#include "paramod/parastruct.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace paramod {

using WeightVector = std::array<Scalar, kPoints>;

/// Contact sets are bitmasks over the five marked points (bit i = point i+1).
using ContactSet = unsigned;

std::vector<std::size_t> contact_indices(ContactSet s);
ContactSet contact_from_indices(const std::vector<std::size_t>& idx);

void validate_weight(const WeightVector& w);

/// (d + sum eps_i w_i)/2 is never an integer.
bool weight_is_kostov_generic(const WeightVector& w, int d);
/// 0 < w_i < 1 for all i.
bool weight_is_non_resonant(const WeightVector& w);

/// d - 2 degF + sum_{not in contact} w_i - sum_{in contact} w_i
Scalar s_value(int d, int degF, ContactSet contact, const WeightVector& w);

/**
 * @brief A map O(degree) -> O(d0) + O(d1), s = q e + r f.
 *
 * A witness is a subbundle when q and r share no zero on the projective line.
 */
struct LineSubbundleWitness {
    int degree = 0;
    Poly q;
    Poly r;
    ContactSet contact = 0;
};

/// Contact set of (q, r) against the flags of L.
ContactSet contact_of(const Poly& q, const Poly& r, const ParabolicStructure& L, const MarkedConfiguration& cfg);

/// True when q and r have no common zero, including at infinity relative to the bounds.
bool is_saturated(const Poly& q, const Poly& r, int q_bound, int r_bound);

/// Lowest subbundle degree that can destabilize a bundle of total degree d.
int lowest_relevant_degree(int d);

struct Candidate {
    int degree = 0;
    ContactSet contact = 0;
    LineSubbundleWitness witness;
};

/**
 * @brief Inclusion-maximal contact sets realized by saturated line subbundles, per degree.
 *
 * Works on any split type (d0, d1); the summand order is not required to be sorted.
 * When require_second_zero is set, only subbundles inside the first summand (r = 0) count.
 */
std::vector<Candidate> destabilizing_candidates(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                bool require_second_zero = false);

/// A saturated subbundle of the given degree whose contact set is exactly `contact`, if any.
std::optional<LineSubbundleWitness> find_subbundle(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                   int degree, ContactSet contact);

struct StabilityReport {
    bool stable = false;
    Candidate worst;
    Scalar margin;
};

/// Throws a precondition error ("on-wall") when a candidate has s = 0.
StabilityReport is_stable(const ParabolicStructure& L, const MarkedConfiguration& cfg, const WeightVector& w);

WeightVector stabilizing_weight(const StratumId& stratum);

bool no_stable_structure(const WeightVector& w, const BundleType& bundle);

/// One wall family: lower < sum eps_i w_i < lower + 2, with walls at integers of parity d.
struct WallInterval {
    std::array<int, kPoints> eps{};
    int lower = 0;
};

struct ChamberDescriptor {
    int d = 0;
    std::vector<WallInterval> intervals;
};

/// Throws a precondition error ("on-wall") when some functional hits a wall.
ChamberDescriptor chamber_classify(const WeightVector& w, int d);

} // namespace paramod
