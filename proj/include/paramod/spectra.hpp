#pragma once

#include "paramod/stability.hpp"

#include <array>
#include <utility>

namespace paramod {

/// Residue eigenvalue pairs (nu+, nu-) at the five poles, with the bundle degree.
struct SpectrumRank2 {
    std::array<std::pair<Scalar, Scalar>, kPoints> nu;
    int d = 0;

    /// Validates d + sum(nu+ + nu-) = 0.
    static SpectrumRank2 make(std::array<std::pair<Scalar, Scalar>, kPoints> nu, int d);

    /// sigma = +1 picks nu+, -1 picks nu-.
    const Scalar& pick(std::size_t i, int sigma) const { return sigma > 0 ? nu[i].first : nu[i].second; }
    friend bool operator==(const SpectrumRank2&, const SpectrumRank2&) = default;
};

struct SpectrumPredicates {
    bool kostov_generic = false;
    bool non_resonant = false;
    bool non_special = false;
};

SpectrumPredicates spectrum_predicates(const SpectrumRank2& nu);

/// w_j -> 1 - w_j; throws when w_j = 0.
WeightVector elm_weight(const WeightVector& w, std::size_t j);

/// Slot j becomes (1 + nu_j-, nu_j+), degree drops by one.
SpectrumRank2 elm_spectrum(const SpectrumRank2& nu, std::size_t j);

/// Degree and contact set of a line subbundle after Elm at j.
struct ElmWitness {
    int degree = 0;
    ContactSet contact = 0;
};
ElmWitness elm_witness(int degree, ContactSet contact, std::size_t j);

struct MCBranch {
    std::array<int, kPoints> sigma{1, 1, 1, 1, 1};
    std::array<Scalar, kPoints> betaV;

    static MCBranch parse(const std::string& sigma, const std::array<Scalar, kPoints>& betaV);
    std::string sigma_str() const;
};

struct MCSpectrumRank3 {
    int rank = 3;
    int d = 0;
    Scalar betaK;
    std::array<Scalar, kPoints> betaH;
    std::array<Scalar, kPoints> betaU;
    /// (beta_V, beta_V, third) per point.
    std::array<std::array<Scalar, 3>, kPoints> triples;
};

/// Throws a precondition error when nu is special or the branch is not admissible.
MCSpectrumRank3 mc_spectrum(const SpectrumRank2& nu, const MCBranch& branch);

Scalar character_poly(const Scalar& x, const Scalar& y, const Scalar& z, const Scalar& u, const Scalar& v);

} // namespace paramod
