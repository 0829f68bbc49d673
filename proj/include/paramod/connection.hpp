#pragma once

#include "paramod/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paramod {

/**
 * @brief d + sum A_i/(z - z_i) dz + G dz on O(d0) + O(d1).
 *
 * Acts on coefficient columns (q, r) of q e + r f. Only the (21) entry of G
 * can be nonzero on a holomorphic-at-infinity connection, so only it is stored.
 */
struct LogConnection {
    BundleType bundle;
    std::array<Mat, kPoints> A;
    Poly G21;

    int tail_size() const { return std::max(bundle.gap() - 1, 0); }
};

struct FlatTriple {
    ParabolicStructure L;
    SpectrumRank2 nu;
    LogConnection c;
};

/// Range of summand degrees of an irreducible rank-2 flat bundle of degree d.
std::pair<int, int> degree_bounds(int d);
/// Splits (d0, d1), d0 <= d1, admitted by degree_bounds.
std::vector<BundleType> irreducible_splits(int d);

/**
 * @brief Linear system whose solutions are the connections compatible with (L, nu).
 *
 * Unknowns: A_i entries at 4i + {0: (11), 1: (12), 2: (21), 3: (22)}, then the
 * coefficients of G21. Callers may append rows before solving.
 */
struct ConnectionSystem {
    BundleType bundle;
    Mat M;
    Vec rhs;

    static std::size_t var(std::size_t point, int row, int col) { return 4 * point + 2 * row + col; }
    std::size_t tail_var(std::size_t k) const { return 4 * kPoints + k; }
    std::size_t unknowns() const { return M.cols(); }
    void add_row(const Vec& row, const Scalar& value);
};

ConnectionSystem connection_system(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                   const SpectrumRank2& nu);

LogConnection connection_from_vector(const BundleType& bundle, const Vec& x);

struct ConnectionSpace {
    AffineSpace space;
    std::size_t stabilizer_dimension = 0;

    std::size_t dimension() const { return space.dimension(); }
    std::size_t dimension_mod_gauge() const;
    /// particular + sum t_k basis_k
    Vec point(const std::vector<Scalar>& t) const;
};

std::optional<ConnectionSpace> solve_connection_space(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                      const SpectrumRank2& nu);
std::optional<ConnectionSpace> solve_system(const ConnectionSystem& sys, const ParabolicStructure& L,
                                            const MarkedConfiguration& cfg);

struct TripleValidation {
    bool valid = true;
    std::vector<std::string> violations;
};

TripleValidation validate_triple(const FlatTriple& t, const MarkedConfiguration& cfg);

struct IrreducibilityScreen {
    bool irreducible = true;
    /// Sign patterns (+1 picks nu+) whose sum is an integer admissible as minus a subbundle degree.
    std::vector<std::array<int, kPoints>> patterns;
};

IrreducibilityScreen irreducibility_screen(const FlatTriple& t);

/// 2x2 polynomial matrix, P(z) times the connection matrix with P = prod (z - z_i).
using PolyMat = std::array<std::array<Poly, 2>, 2>;
PolyMat cleared_connection_matrix(const LogConnection& c, const MarkedConfiguration& cfg);

/// P(z) [(nabla s)_1 r - (nabla s)_2 q] for s = (q, r); zero iff s spans an invariant line.
Poly invariance_defect(const LogConnection& c, const MarkedConfiguration& cfg, const Poly& q, const Poly& r);
bool verify_invariant_line(const FlatTriple& t, const MarkedConfiguration& cfg, const LineSubbundleWitness& F);

/// sum A_i^(12) prod_{j != i}(z - z_j) on B, bounded by degree 2.
Poly theta_from_connection(const LogConnection& c, const MarkedConfiguration& cfg);

/// Transports the triple along the automorphism (structure moves by act()).
FlatTriple gauge_transform(const FlatTriple& t, const Automorphism& g, const MarkedConfiguration& cfg);

/// Elementary transformation of the parabolic structure at j (bundle degree drops by one).
ParabolicStructure elm_structure(const ParabolicStructure& L, const MarkedConfiguration& cfg, std::size_t j);
/// The saturated image of a line subbundle in the elementary transform at j.
LineSubbundleWitness elm_subbundle(const LineSubbundleWitness& F, const ParabolicStructure& L,
                                   const MarkedConfiguration& cfg, std::size_t j);
FlatTriple elm_triple(const FlatTriple& t, const MarkedConfiguration& cfg, std::size_t j);

} // namespace paramod
