#include "paramod/spectra.hpp"

#include "paramod/error.hpp"

namespace paramod {

SpectrumRank2 SpectrumRank2::make(std::array<std::pair<Scalar, Scalar>, kPoints> nu, int d) {
    Scalar s(d);
    for (const auto& [p, m] : nu) s += p + m;
    if (!s.is_zero()) fail_precondition("spectrum violates the Fuchs relation: d + sum = " + s.str());
    return {std::move(nu), d};
}

SpectrumPredicates spectrum_predicates(const SpectrumRank2& nu) {
    SpectrumPredicates p;
    p.kostov_generic = true;
    for (unsigned eps = 0; eps < (1u << kPoints) && p.kostov_generic; ++eps) {
        Scalar s(0);
        for (std::size_t i = 0; i < kPoints; ++i) s += nu.pick(i, (eps & (1u << i)) ? -1 : 1);
        if (s.is_integer()) p.kostov_generic = false;
    }
    p.non_resonant = true;
    for (const auto& [a, b] : nu.nu)
        if ((a - b).is_integer()) p.non_resonant = false;
    p.non_special = p.kostov_generic && p.non_resonant;
    return p;
}

WeightVector elm_weight(const WeightVector& w, std::size_t j) {
    validate_weight(w);
    if (j >= kPoints) fail_precondition("point index out of range");
    if (w[j].is_zero()) fail_precondition("elementary transformation of a zero weight leaves [0, 1)");
    WeightVector out = w;
    out[j] = Scalar(1) - w[j];
    return out;
}

SpectrumRank2 elm_spectrum(const SpectrumRank2& nu, std::size_t j) {
    if (j >= kPoints) fail_precondition("point index out of range");
    auto out = nu.nu;
    out[j] = {Scalar(1) + nu.nu[j].second, nu.nu[j].first};
    return SpectrumRank2::make(out, nu.d - 1);
}

ElmWitness elm_witness(int degree, ContactSet contact, std::size_t j) {
    ContactSet bit = 1u << j;
    // A subbundle through the flag survives the modification; any other loses a zero at z_j.
    if (contact & bit) return {degree, contact & ~bit};
    return {degree - 1, contact | bit};
}

MCBranch MCBranch::parse(const std::string& sigma, const std::array<Scalar, kPoints>& betaV) {
    if (sigma.size() != kPoints) fail_schema("sigma must have five characters");
    MCBranch b;
    for (std::size_t i = 0; i < kPoints; ++i) {
        if (sigma[i] == '+') b.sigma[i] = 1;
        else if (sigma[i] == '-') b.sigma[i] = -1;
        else fail_schema("sigma characters must be '+' or '-'");
    }
    b.betaV = betaV;
    return b;
}

std::string MCBranch::sigma_str() const {
    std::string s;
    for (int x : sigma) s += x > 0 ? '+' : '-';
    return s;
}

MCSpectrumRank3 mc_spectrum(const SpectrumRank2& nu, const MCBranch& branch) {
    if (!spectrum_predicates(nu).non_special) fail_precondition("middle convolution needs a non-special spectrum");
    MCSpectrumRank3 out;
    out.d = nu.d;
    Scalar sumH(0), sumV(0);
    for (std::size_t i = 0; i < kPoints; ++i) {
        out.betaH[i] = -nu.pick(i, branch.sigma[i]);
        sumH += out.betaH[i];
        sumV += branch.betaV[i];
    }
    out.betaK = -sumH;
    if (!(out.betaK + sumV).is_zero()) fail_precondition("branch violates beta_K + sum beta_V = 0");
    if (out.betaK.is_integer()) fail_precondition("branch not admissible: beta_K is an integer");
    for (std::size_t i = 0; i < kPoints; ++i) {
        for (int s : {1, -1}) {
            Scalar shifted = nu.pick(i, s) + out.betaH[i];
            if ((shifted + out.betaK).is_integer())
                fail_precondition("branch not admissible at point " + std::to_string(i + 1));
            if (shifted.is_integer() && !shifted.is_zero())
                fail_precondition("branch not admissible at point " + std::to_string(i + 1));
        }
    }
    for (std::size_t i = 0; i < kPoints; ++i) {
        out.betaU[i] = out.betaK - out.betaH[i] - branch.betaV[i];
        Scalar third = branch.betaV[i] + nu.pick(i, -branch.sigma[i]);
        for (std::size_t j = 0; j < kPoints; ++j)
            if (j != i) third += nu.pick(j, branch.sigma[j]);
        out.triples[i] = {branch.betaV[i], branch.betaV[i], third};
        if (third == branch.betaV[i]) fail_internal("third eigenvalue coincides with the doubled one");
    }
    return out;
}

Scalar character_poly(const Scalar& x, const Scalar& y, const Scalar& z, const Scalar& u, const Scalar& v) {
    auto sq = [](const Scalar& a) { return a * a; };
    return x * y * z * u * v + (sq(x * y) + sq(y * z) + sq(z * u) + sq(u * v) + sq(v * x)) -
           Scalar(4) * (sq(x) + sq(y) + sq(z) + sq(u) + sq(v)) + Scalar(16);
}

} // namespace paramod
