#pragma once

#include "paramod/matrix.hpp"
#include "paramod/poly.hpp"
#include "paramod/projective.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace paramod {

constexpr std::size_t kPoints = 5;

/// Split type O(d0) + O(d1) with frame (e, f); e spans O(d0), f spans O(d1).
struct BundleType {
    int d0 = 0;
    int d1 = 1;

    static BundleType B() { return {0, 1}; }
    static BundleType Bprime() { return {-1, 2}; }
    static BundleType parse(const std::string& name);

    int degree() const { return d0 + d1; }
    int gap() const { return d1 - d0; }
    bool is_B() const { return d0 == 0 && d1 == 1; }
    bool is_Bprime() const { return d0 == -1 && d1 == 2; }
    std::string name() const;

    friend bool operator==(const BundleType&, const BundleType&) = default;
};

/// Five distinct real marked points on the affine line.
class MarkedConfiguration {
public:
    explicit MarkedConfiguration(std::array<Scalar, kPoints> z);

    const Scalar& operator[](std::size_t i) const { return z_[i]; }
    const std::array<Scalar, kPoints>& points() const { return z_; }
    std::vector<Scalar> as_vector() const { return {z_.begin(), z_.end()}; }

    /// prod_{j != i} (z_i - z_j)
    Scalar lagrange_weight(std::size_t i) const;
    /// prod_i (z - z_i)
    Poly vanishing_poly() const;

private:
    std::array<Scalar, kPoints> z_;
};

/// Flags u_i = [kappa : lambda] spanning kappa e(z_i) + lambda f(z_i).
struct ParabolicStructure {
    BundleType bundle;
    std::array<ProjectivePoint, kPoints> u;

    unsigned infinite_mask() const;
    int n_infinite() const;
    friend bool operator==(const ParabolicStructure&, const ParabolicStructure&) = default;
};

/// Bundle automorphism e -> a e + p(z) f, f -> f with deg p <= d1 - d0.
struct Automorphism {
    Scalar a;
    Poly p;

    static Automorphism B(const Scalar& a, const Scalar& b, const Scalar& c);
    static Automorphism Bprime(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& g,
                               const Scalar& h);
};

ParabolicStructure act(const Automorphism& g, const ParabolicStructure& L, const MarkedConfiguration& cfg);

struct Decomposability {
    bool decomposable = false;
    /// Interpolating section (1, r) of the lower summand when decomposable.
    std::optional<Poly> witness;
    /// Otherwise a subset of finite indices admitting no interpolant.
    std::vector<std::size_t> certificate;
};

Decomposability is_decomposable(const ParabolicStructure& L, const MarkedConfiguration& cfg);

enum class StratumFamily {
    U2,
    Ui,
    UijPrime,
    UijDoublePrime,
    Uplus,
    GenericIndecomposable,
    GenericDecomposable,
    InfinityPattern,
};

struct StratumId {
    BundleType bundle;
    StratumFamily family = StratumFamily::U2;
    /// 0-based indices of the flags at infinity.
    std::vector<std::size_t> infinite;
    /// Normalized projective coordinates (U2, Ui only); all zero on decomposables.
    std::vector<Scalar> coords;
    bool decomposable = false;

    std::string label() const;
    static StratumId parse_label(const std::string& bundle, const std::string& label);
};

StratumId classify(const ParabolicStructure& L, const MarkedConfiguration& cfg);

/// Raw residue functional tuple; zero exactly on decomposables.
std::vector<Scalar> quotient_functional(const ParabolicStructure& L, const MarkedConfiguration& cfg);

/// Projectively normalized quotient coordinates; throws on decomposables.
std::vector<Scalar> quotient_coords(const ParabolicStructure& L, const MarkedConfiguration& cfg);

/// Scale so that the first nonzero entry is 1; zero tuples are returned unchanged.
std::vector<Scalar> normalize_projective(std::vector<Scalar> v);

/// Value whose vanishing separates U'_{ij} from U''_{ij} for a pattern with two flags at infinity.
Scalar double_prime_discriminant(const ParabolicStructure& L, const MarkedConfiguration& cfg);

bool orbit_equal(const ParabolicStructure& L1, const ParabolicStructure& L2, const MarkedConfiguration& cfg);

struct Simplicity {
    bool simple = false;
    /// Dimension of the stabilizer modulo scalars.
    std::size_t stabilizer_dimension = 0;
    /// A non-scalar automorphism fixing L when not simple.
    std::optional<Automorphism> witness;
};

Simplicity is_simple(const ParabolicStructure& L, const MarkedConfiguration& cfg);

} // namespace paramod
