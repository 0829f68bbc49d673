#include "paramod/parastruct.hpp"

#include "paramod/error.hpp"

#include <algorithm>
#include <regex>

namespace paramod {

BundleType BundleType::parse(const std::string& name) {
    if (name == "B") return B();
    if (name == "Bprime") return Bprime();
    static const std::regex pair(R"(\((-?[0-9]+),(-?[0-9]+)\))");
    std::smatch m;
    if (std::regex_match(name, m, pair)) {
        BundleType t{std::stoi(m[1]), std::stoi(m[2])};
        if (t.d0 > t.d1) fail_schema("bundle degrees must satisfy d0 <= d1");
        return t;
    }
    fail_schema("unknown bundle '" + name + "'");
}

std::string BundleType::name() const {
    if (is_B()) return "B";
    if (is_Bprime()) return "Bprime";
    return "(" + std::to_string(d0) + "," + std::to_string(d1) + ")";
}

MarkedConfiguration::MarkedConfiguration(std::array<Scalar, kPoints> z) : z_(std::move(z)) {
    for (std::size_t i = 0; i < kPoints; ++i) {
        if (!z_[i].is_real()) fail_precondition("marked points must be real");
        for (std::size_t j = 0; j < i; ++j)
            if (z_[i] == z_[j]) fail_precondition("marked points must be pairwise distinct");
    }
}

Scalar MarkedConfiguration::lagrange_weight(std::size_t i) const {
    Scalar w(1);
    for (std::size_t j = 0; j < kPoints; ++j)
        if (j != i) w *= z_[i] - z_[j];
    return w;
}

Poly MarkedConfiguration::vanishing_poly() const {
    return Poly::from_roots(as_vector());
}

unsigned ParabolicStructure::infinite_mask() const {
    unsigned m = 0;
    for (std::size_t i = 0; i < kPoints; ++i)
        if (u[i].is_infinite()) m |= 1u << i;
    return m;
}

int ParabolicStructure::n_infinite() const {
    return __builtin_popcount(infinite_mask());
}

Automorphism Automorphism::B(const Scalar& a, const Scalar& b, const Scalar& c) {
    return {a, Poly({c, b}, 1)};
}

Automorphism Automorphism::Bprime(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& g,
                                  const Scalar& h) {
    return {a, Poly({h, g, c, b}, 3)};
}

ParabolicStructure act(const Automorphism& g, const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    if (g.a.is_zero()) fail_precondition("automorphism requires a != 0");
    if (g.p.degree() > L.bundle.gap()) fail_precondition("automorphism polynomial exceeds d1 - d0");
    ParabolicStructure out = L;
    for (std::size_t i = 0; i < kPoints; ++i) {
        if (L.u[i].is_infinite()) continue;
        out.u[i] = ProjectivePoint::finite((g.p(cfg[i]) + L.u[i].value()) / g.a);
    }
    return out;
}

namespace {

std::vector<std::size_t> finite_indices(const ParabolicStructure& L) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < kPoints; ++i)
        if (!L.u[i].is_infinite()) idx.push_back(i);
    return idx;
}

void require_B_or_Bprime(const BundleType& b) {
    if (!b.is_B() && !b.is_Bprime()) fail_precondition("operation defined for B and Bprime only");
}

// Sum over idx of u_k p(z_k) / prod_{j in idx, j != k} (z_k - z_j).
Scalar residue_functional(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                          const std::vector<std::size_t>& idx, unsigned power) {
    Scalar acc(0);
    for (auto k : idx) {
        Scalar w(1);
        for (auto j : idx)
            if (j != k) w *= cfg[k] - cfg[j];
        acc += L.u[k].value() * pow(cfg[k], power) / w;
    }
    return acc;
}

std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(idx[k] + 1);
    }
    return s;
}

} // namespace

Decomposability is_decomposable(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    require_B_or_Bprime(L.bundle);
    const int bound = L.bundle.gap();
    std::vector<std::pair<Scalar, Scalar>> pts;
    for (auto k : finite_indices(L)) pts.emplace_back(cfg[k], L.u[k].value());
    Decomposability res;
    if (auto r = interpolate(pts, bound)) {
        res.decomposable = true;
        res.witness = *r;
        return res;
    }
    // Smallest inconsistent prefix: bound + 2 points are already overdetermined.
    std::vector<std::pair<Scalar, Scalar>> prefix;
    for (auto k : finite_indices(L)) {
        prefix.emplace_back(cfg[k], L.u[k].value());
        res.certificate.push_back(k);
        if (!interpolate(prefix, bound)) break;
    }
    return res;
}

std::vector<Scalar> quotient_functional(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    if (!L.bundle.is_B()) fail_precondition("quotient coordinates are defined on B");
    auto idx = finite_indices(L);
    if (idx.size() == kPoints)
        return {residue_functional(L, cfg, idx, 0), residue_functional(L, cfg, idx, 1),
                residue_functional(L, cfg, idx, 2)};
    if (idx.size() == kPoints - 1)
        return {residue_functional(L, cfg, idx, 0), residue_functional(L, cfg, idx, 1)};
    fail_precondition("quotient coordinates need at most one flag at infinity");
}

std::vector<Scalar> normalize_projective(std::vector<Scalar> v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        Scalar inv = Scalar(1) / x;
        for (auto& y : v) y *= inv;
        break;
    }
    return v;
}

std::vector<Scalar> quotient_coords(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    auto v = quotient_functional(L, cfg);
    if (std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); }))
        fail_precondition("decomposable structure has no quotient coordinates");
    return normalize_projective(std::move(v));
}

Scalar double_prime_discriminant(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    auto idx = finite_indices(L);
    if (idx.size() != 3) fail_precondition("pattern must have exactly two flags at infinity");
    const Scalar& ua = L.u[idx[0]].value();
    const Scalar& ub = L.u[idx[1]].value();
    const Scalar& uc = L.u[idx[2]].value();
    const Scalar& za = cfg[idx[0]];
    const Scalar& zb = cfg[idx[1]];
    const Scalar& zc = cfg[idx[2]];
    return (ua - ub) * (zc - za) / (za - zb) + (ua - uc);
}

StratumId classify(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    require_B_or_Bprime(L.bundle);
    StratumId s;
    s.bundle = L.bundle;
    for (std::size_t i = 0; i < kPoints; ++i)
        if (L.u[i].is_infinite()) s.infinite.push_back(i);
    s.decomposable = is_decomposable(L, cfg).decomposable;
    const std::size_t n = s.infinite.size();

    if (L.bundle.is_Bprime()) {
        if (n == 0)
            s.family = s.decomposable ? StratumFamily::GenericDecomposable : StratumFamily::GenericIndecomposable;
        else
            s.family = StratumFamily::InfinityPattern;
        return s;
    }
    if (n <= 1) {
        s.family = n == 0 ? StratumFamily::U2 : StratumFamily::Ui;
        s.coords = normalize_projective(quotient_functional(L, cfg));
    } else if (n == 2) {
        s.family = double_prime_discriminant(L, cfg).is_zero() ? StratumFamily::UijPrime
                                                                : StratumFamily::UijDoublePrime;
    } else {
        s.family = StratumFamily::Uplus;
    }
    return s;
}

std::string StratumId::label() const {
    switch (family) {
    case StratumFamily::U2: return "U2";
    case StratumFamily::Ui: return "Ui(" + index_list(infinite) + ")";
    case StratumFamily::UijPrime: return "Uij'(" + index_list(infinite) + ")";
    case StratumFamily::UijDoublePrime: return "Uij''(" + index_list(infinite) + ")";
    case StratumFamily::Uplus: return "Uplus(" + index_list(infinite) + ")";
    case StratumFamily::GenericIndecomposable: return "generic-indecomposable";
    case StratumFamily::GenericDecomposable: return "generic-decomposable";
    case StratumFamily::InfinityPattern: return "inf(" + index_list(infinite) + ")";
    }
    fail_internal("unknown stratum family");
}

StratumId StratumId::parse_label(const std::string& bundle, const std::string& label) {
    StratumId s;
    s.bundle = BundleType::parse(bundle);
    if (label == "U2") {
        s.family = StratumFamily::U2;
    } else if (label == "generic-indecomposable") {
        s.family = StratumFamily::GenericIndecomposable;
    } else if (label == "generic-decomposable") {
        s.family = StratumFamily::GenericDecomposable;
        s.decomposable = true;
    } else {
        static const std::regex pat(R"((Ui|Uij'|Uij''|Uplus|inf)\(([1-5](,[1-5])*)\))");
        std::smatch m;
        if (!std::regex_match(label, m, pat)) fail_schema("unknown stratum label '" + label + "'");
        std::string tag = m[1];
        std::string list = m[2];
        for (std::size_t k = 0; k < list.size(); k += 2) s.infinite.push_back(static_cast<std::size_t>(list[k] - '1'));
        if (!std::is_sorted(s.infinite.begin(), s.infinite.end()) ||
            std::adjacent_find(s.infinite.begin(), s.infinite.end()) != s.infinite.end())
            fail_schema("stratum indices must be strictly increasing");
        std::size_t n = s.infinite.size();
        if (tag == "Ui" && n == 1) s.family = StratumFamily::Ui;
        else if (tag == "Uij'" && n == 2) s.family = StratumFamily::UijPrime, s.decomposable = true;
        else if (tag == "Uij''" && n == 2) s.family = StratumFamily::UijDoublePrime;
        else if (tag == "Uplus" && n >= 3) s.family = StratumFamily::Uplus, s.decomposable = true;
        else if (tag == "inf") s.family = StratumFamily::InfinityPattern, s.decomposable = true;
        else fail_schema("stratum label '" + label + "' has the wrong number of indices");
    }
    bool bprime_family = s.family == StratumFamily::GenericIndecomposable ||
                         s.family == StratumFamily::GenericDecomposable ||
                         s.family == StratumFamily::InfinityPattern;
    if (bprime_family != s.bundle.is_Bprime()) fail_schema("stratum label does not match the bundle");
    return s;
}

bool orbit_equal(const ParabolicStructure& L1, const ParabolicStructure& L2, const MarkedConfiguration& cfg) {
    if (!(L1.bundle == L2.bundle)) fail_precondition("orbit comparison across different bundles");
    if (L1.infinite_mask() != L2.infinite_mask()) return false;
    // Unknowns (a, p_0..p_gap); for finite k: a u2_k - p(z_k) = u1_k.
    const std::size_t np = static_cast<std::size_t>(L1.bundle.gap()) + 1;
    Mat m(0, 1 + np);
    Vec rhs;
    for (auto k : finite_indices(L1)) {
        Vec row(1 + np, Scalar(0));
        row[0] = L2.u[k].value();
        for (std::size_t e = 0; e < np; ++e) row[1 + e] = -pow(cfg[k], static_cast<unsigned>(e));
        m.append_row(row);
        rhs.push_back(L1.u[k].value());
    }
    auto sol = solve_affine(m, rhs);
    if (!sol) return false;
    if (!sol->particular[0].is_zero()) return true;
    return std::any_of(sol->basis.begin(), sol->basis.end(), [](const Vec& v) { return !v[0].is_zero(); });
}

Simplicity is_simple(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    require_B_or_Bprime(L.bundle);
    // Endomorphisms e -> alpha e + p f, f -> sigma f preserving every flag:
    // p(z_k) + (sigma - alpha) u_k = 0 at finite k; unknowns (alpha, sigma, p_0..p_gap).
    const std::size_t np = static_cast<std::size_t>(L.bundle.gap()) + 1;
    Mat m(0, 2 + np);
    for (auto k : finite_indices(L)) {
        Vec row(2 + np, Scalar(0));
        row[0] = -L.u[k].value();
        row[1] = L.u[k].value();
        for (std::size_t e = 0; e < np; ++e) row[2 + e] = pow(cfg[k], static_cast<unsigned>(e));
        m.append_row(row);
    }
    auto basis = nullspace(m);
    Simplicity res;
    res.stabilizer_dimension = basis.size() - 1;
    res.simple = basis.size() == 1;
    if (res.simple) return res;

    auto is_scalar = [&](const Vec& v) {
        if (v[0] != v[1]) return false;
        for (std::size_t e = 0; e < np; ++e)
            if (!v[2 + e].is_zero()) return false;
        return true;
    };
    for (const auto& v : basis) {
        if (is_scalar(v)) continue;
        for (long t = 1;; ++t) {
            Scalar alpha = v[0] + Scalar(t), sigma = v[1] + Scalar(t);
            if (alpha.is_zero() || sigma.is_zero()) continue;
            std::vector<Scalar> pc;
            for (std::size_t e = 0; e < np; ++e) pc.push_back(v[2 + e] / sigma);
            res.witness = Automorphism{alpha / sigma, Poly(pc, static_cast<int>(np) - 1)};
            return res;
        }
    }
    fail_internal("non-simple structure without a non-scalar stabilizer element");
}

} // namespace paramod
