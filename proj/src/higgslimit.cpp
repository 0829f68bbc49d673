#include "paramod/higgslimit.hpp"

#include "paramod/error.hpp"

#include <algorithm>

namespace paramod {

namespace {

const ProjectivePoint kLower = ProjectivePoint::finite(0);
const ProjectivePoint kUpper = ProjectivePoint::infinity();

Scalar eval_divisor(const std::vector<Scalar>& dv, const Scalar& z) { return dv[0] * z * z + dv[1] * z + dv[2]; }

std::vector<Scalar> divisor_of(const Poly& theta) {
    return normalize_projective({theta.coeff(2), theta.coeff(1), theta.coeff(0)});
}

Poly theta_of(const std::vector<Scalar>& dv) { return Poly({dv[2], dv[1], dv[0]}, 2); }

std::vector<std::size_t> marked_zeros(const std::vector<Scalar>& dv, const MarkedConfiguration& cfg) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kPoints; ++i)
        if (eval_divisor(dv, cfg[i]).is_zero()) out.push_back(i);
    return out;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
    if (sgn(x) < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

// Position of a model point relative to the special curves.
struct Location {
    enum Kind { Interior, Line, Crossing, Exceptional, ExceptionalMarked, Intersection } kind = Interior;
    std::size_t i = 0, j = 0;
    ProjectivePoint p;
};

std::optional<std::size_t> double_marked_zero(const std::vector<Scalar>& dv, const MarkedConfiguration& cfg) {
    for (std::size_t i = 0; i < kPoints; ++i) {
        auto zi = ProjectivePoint::finite(cfg[i]);
        if (dv == tau(zi, zi)) return i;
    }
    return std::nullopt;
}

Location locate(const FixedLocusPoint& p, const MarkedConfiguration& cfg) {
    if (p.divisor.size() != 3) fail_precondition("fixed point divisor must have three coordinates");
    auto dv = normalize_projective(p.divisor);
    if (dv[0].is_zero() && dv[1].is_zero() && dv[2].is_zero()) fail_precondition("fixed point divisor is zero");
    auto dbl = double_marked_zero(dv, cfg);
    Location loc;
    if (p.tangent) {
        if (!dbl) fail_precondition("a tangent datum needs a double zero at a marked point");
        loc.i = *dbl;
        loc.p = *p.tangent;
        loc.kind = Location::Exceptional;
        for (std::size_t j = 0; j < kPoints; ++j) {
            if (!(*p.tangent == ProjectivePoint::finite(cfg[j]))) continue;
            loc.kind = j == loc.i ? Location::Intersection : Location::ExceptionalMarked;
            loc.j = j;
        }
        return loc;
    }
    if (dbl) fail_precondition("a double zero at a marked point needs a tangent datum");
    auto mz = marked_zeros(dv, cfg);
    if (mz.size() == 2) {
        loc.kind = Location::Crossing;
        loc.i = mz[0];
        loc.j = mz[1];
    } else if (mz.size() == 1) {
        loc.kind = Location::Line;
        loc.i = mz[0];
        // theta = (z - z_i) * l with deg l <= 1; the other zero is the zero of l.
        Poly l = theta_of(dv).divmod(Poly::linear(cfg[mz[0]])).first;
        loc.p = l.degree() < 1 ? ProjectivePoint::infinity() : ProjectivePoint::finite(-l.coeff(0) / l.coeff(1));
    }
    return loc;
}

FixedLocusPoint f1_point(Chart chart, std::vector<Scalar> divisor, std::optional<ProjectivePoint> tangent = {}) {
    return {Component::F1, chart, normalize_projective(std::move(divisor)), std::move(tangent)};
}

FixedLocusPoint exceptional(Chart chart, std::size_t i, const ProjectivePoint& t, const MarkedConfiguration& cfg) {
    auto zi = ProjectivePoint::finite(cfg[i]);
    return f1_point(chart, tau(zi, zi), t);
}

} // namespace

std::string component_name(Component c) {
    switch (c) {
    case Component::F0: return "F0";
    case Component::F1: return "F1";
    case Component::NotFixed: return "NotFixed";
    case Component::Other: return "other";
    }
    return "";
}

std::string chart_name(Chart c) { return c == Chart::Top ? "top" : "bottom"; }

std::vector<std::string> higgs_violations(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg) {
    std::vector<std::string> out;
    if (h.theta.degree() > h.theta_bound()) out.push_back("theta exceeds degree first - second + 3");
    for (std::size_t i = 0; i < kPoints; ++i)
        if (!h.theta(cfg[i]).is_zero() && !(h.flags[i] == kLower))
            out.push_back("flag at point " + std::to_string(i + 1) + " is not killed by the residue");
    return out;
}

bool higgs_is_stable(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg, const WeightVector& w) {
    validate_weight(w);
    auto bad = higgs_violations(h, cfg);
    if (!bad.empty()) fail_precondition("not strongly parabolic: " + bad.front());
    if (h.theta.is_zero()) return is_stable(h.structure(), cfg, w).stable;
    // Theta kills only the first summand, so it is the unique invariant line subbundle.
    bool stable = true;
    for (const auto& c : destabilizing_candidates(h.structure(), cfg, true)) {
        Scalar s = s_value(h.degree(), c.degree, c.contact, w);
        if (s.is_zero()) fail_precondition("on-wall: an invariant subbundle has s_w = 0");
        if (s < Scalar(0)) stable = false;
    }
    return stable;
}

Component fixed_component(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg, const WeightVector& w) {
    validate_weight(w);
    Scalar total(0);
    for (const auto& x : w) total += x;
    if (total >= Scalar(1)) fail_precondition("component classification needs sum w < 1");
    if (h.theta.is_zero() || !higgs_violations(h, cfg).empty()) return Component::NotFixed;
    for (const auto& f : h.flags)
        if (!(f == kLower || f == kUpper)) return Component::NotFixed;
    if (!higgs_is_stable(h, cfg, w)) return Component::NotFixed;
    if (h.first == -1 && h.second == 2) return Component::F0;
    if (h.first == 0 && h.second == 1) return Component::F1;
    return Component::NotFixed;
}

std::vector<Scalar> tau(const ProjectivePoint& a, const ProjectivePoint& b) {
    // (ka z - la)(kb z - lb)
    return normalize_projective({a.kappa() * b.kappa(), -(a.kappa() * b.lambda() + a.lambda() * b.kappa()),
                                 a.lambda() * b.lambda()});
}

std::vector<ProjectivePoint> divisor_zeros(const std::vector<Scalar>& dv) {
    if (dv.size() != 3) fail_precondition("divisor must have three coordinates");
    const Scalar &c2 = dv[0], &c1 = dv[1], &c0 = dv[2];
    std::vector<ProjectivePoint> out;
    if (c2.is_zero()) {
        out.push_back(ProjectivePoint::infinity());
        out.push_back(c1.is_zero() ? ProjectivePoint::infinity() : ProjectivePoint::finite(-c0 / c1));
    } else {
        Scalar disc = c1 * c1 - Scalar(4) * c2 * c0;
        if (!disc.is_real()) return {};
        std::optional<Scalar> root;
        if (auto r = rational_sqrt(disc.re())) root = Scalar(*r);
        else if (auto r2 = rational_sqrt(-disc.re())) root = Scalar(mpq_class(0), *r2);
        if (!root) return {};
        out.push_back(ProjectivePoint::finite((-c1 - *root) / (Scalar(2) * c2)));
        out.push_back(ProjectivePoint::finite((-c1 + *root) / (Scalar(2) * c2)));
    }
    std::sort(out.begin(), out.end(), ProjectivePoint::less);
    return out;
}

FixedLocusPoint fixed_point_of(const StronglyParabolicHiggs& h, const MarkedConfiguration& cfg) {
    FixedLocusPoint other{Component::Other, Chart::Top, {}, {}};
    if (h.theta.is_zero()) return other;
    if (!higgs_violations(h, cfg).empty()) fail_precondition("Higgs datum is not strongly parabolic");
    for (const auto& f : h.flags)
        if (!(f == kLower || f == kUpper)) fail_precondition("a C*-fixed datum has flags on the summands");
    if (h.first == -1 && h.second == 2) return {Component::F0, Chart::Top, {}, {}};
    if (!(h.first == 0 && h.second == 1)) return other;

    auto dv = divisor_of(h.theta);
    if (auto i = double_marked_zero(dv, cfg)) {
        Chart chart = h.flags[*i] == kLower ? Chart::Top : Chart::Bottom;
        return exceptional(chart, *i, ProjectivePoint::finite(cfg[*i]), cfg);
    }
    auto mz = marked_zeros(dv, cfg);
    if (mz.empty()) return f1_point(Chart::Top, dv);
    if (mz.size() == 1) return f1_point(h.flags[mz[0]] == kLower ? Chart::Top : Chart::Bottom, dv);
    std::size_t i = mz[0], j = mz[1];
    bool li = h.flags[i] == kLower, lj = h.flags[j] == kLower;
    if (li && lj) return f1_point(Chart::Top, dv);
    if (!li && !lj) return f1_point(Chart::Bottom, dv);
    // Mixed choices sit on the exceptional curve over the upper point, at the lower one.
    if (!li) return exceptional(Chart::Top, i, ProjectivePoint::finite(cfg[j]), cfg);
    return exceptional(Chart::Top, j, ProjectivePoint::finite(cfg[i]), cfg);
}

StronglyParabolicHiggs higgs_from_point(const FixedLocusPoint& p, const MarkedConfiguration& cfg) {
    StronglyParabolicHiggs h;
    h.flags.fill(kLower);
    if (p.component == Component::F0) {
        h.first = -1;
        h.second = 2;
        h.theta = Poly::constant(Scalar(1));
        return h;
    }
    if (p.component != Component::F1) fail_precondition("only F0 and F1 points carry a Higgs datum");
    h.first = 0;
    h.second = 1;
    Location loc = locate(p, cfg);
    const bool top = p.chart == Chart::Top;
    auto zi = ProjectivePoint::finite(cfg[loc.i]);
    auto zj = ProjectivePoint::finite(cfg[loc.j]);
    std::vector<Scalar> dv = normalize_projective(p.divisor);
    switch (loc.kind) {
    case Location::Interior: break;
    case Location::Line: h.flags[loc.i] = top ? kLower : kUpper; break;
    case Location::Crossing:
        h.flags[loc.i] = h.flags[loc.j] = top ? kLower : kUpper;
        break;
    case Location::Exceptional:
        dv = tau(zi, loc.p);
        h.flags[loc.i] = top ? kUpper : kLower;
        break;
    case Location::ExceptionalMarked:
        dv = tau(zi, zj);
        if (top) h.flags[loc.i] = kUpper;
        break;
    case Location::Intersection: h.flags[loc.i] = top ? kLower : kUpper; break;
    }
    h.theta = theta_of(dv);
    return h;
}

CanonicalPoint fixedpoint_canonicalize(const FixedLocusPoint& p, const MarkedConfiguration& cfg) {
    if (p.component != Component::F1) return {p, std::nullopt};
    Location loc = locate(p, cfg);
    const bool top = p.chart == Chart::Top;
    FixedLocusPoint q = p;
    q.divisor = normalize_projective(p.divisor);
    switch (loc.kind) {
    case Location::Interior: q.chart = Chart::Top; return {q, std::nullopt};
    case Location::Line:
        if (top) return {exceptional(Chart::Bottom, loc.i, loc.p, cfg), loc.i};
        return {exceptional(Chart::Top, loc.i, loc.p, cfg), std::nullopt};
    case Location::Exceptional:
        if (top) return {q, std::nullopt};
        return {q, loc.i};
    case Location::Crossing:
        if (!top) return {q, std::nullopt};
        return {exceptional(Chart::Bottom, loc.i, ProjectivePoint::finite(cfg[loc.j]), cfg), std::nullopt};
    case Location::ExceptionalMarked:
        if (top) return {q, std::nullopt};
        {
            std::size_t a = std::min(loc.i, loc.j), b = std::max(loc.i, loc.j);
            return {exceptional(Chart::Bottom, a, ProjectivePoint::finite(cfg[b]), cfg), std::nullopt};
        }
    case Location::Intersection: return {q, std::nullopt};
    }
    fail_internal("unreachable location");
}

SpecialLoci special_loci(const MarkedConfiguration& cfg) {
    SpecialLoci out;
    for (std::size_t i = 0; i < kPoints; ++i)
        for (std::size_t j = i; j < kPoints; ++j)
            out.points.push_back({"tau" + std::to_string(i + 1) + std::to_string(j + 1),
                                  tau(ProjectivePoint::finite(cfg[i]), ProjectivePoint::finite(cfg[j]))});
    for (std::size_t i = 0; i < kPoints; ++i) {
        // Line through tau(z_i, 0) and the limit direction tau(z_i, inf).
        std::vector<Scalar> a = tau(ProjectivePoint::finite(cfg[i]), ProjectivePoint::finite(0));
        std::vector<Scalar> b = tau(ProjectivePoint::finite(cfg[i]), ProjectivePoint::infinity());
        std::vector<Scalar> n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        out.lines.push_back({"line" + std::to_string(i + 1), normalize_projective(n)});
    }
    return out;
}

std::vector<LimitCandidate> limit_candidates(const FlatTriple& t, const MarkedConfiguration& cfg,
                                             const WeightVector& w) {
    const auto& c = t.c;
    const int d0 = c.bundle.d0, d1 = c.bundle.d1;
    PolyMat W = cleared_connection_matrix(c, cfg);
    std::vector<LimitCandidate> out;

    StronglyParabolicHiggs e0;
    e0.first = d0;
    e0.second = d1;
    for (std::size_t i = 0; i < kPoints; ++i) e0.flags[i] = t.L.u[i].is_infinite() ? kUpper : kLower;
    if (W[0][1].degree() > e0.theta_bound()) fail_precondition("connection is not holomorphic at infinity");
    e0.theta = W[0][1].with_bound(std::max(e0.theta_bound(), -1));
    out.push_back({"E0", e0, false});

    StronglyParabolicHiggs e1;
    e1.first = d1;
    e1.second = d0;
    for (std::size_t i = 0; i < kPoints; ++i) e1.flags[i] = t.L.u[i] == kLower ? kUpper : kLower;
    if (W[1][0].degree() > e1.theta_bound()) fail_precondition("connection is not holomorphic at infinity");
    e1.theta = W[1][0].with_bound(std::max(e1.theta_bound(), -1));
    out.push_back({"E1", e1, false});

    if (c.bundle.is_B()) {
        const ContactSet all = (1u << kPoints) - 1;
        for (std::size_t j = 0; j < kPoints; ++j) {
            auto F = find_subbundle(t.L, cfg, -1, all & ~(1u << j));
            if (!F) continue;
            StronglyParabolicHiggs em;
            em.first = 2;
            em.second = -1;
            em.flags.fill(kUpper);
            em.flags[j] = kLower;
            Poly n = invariance_defect(c, cfg, F->q, F->r);
            if (n.degree() > em.theta_bound()) fail_internal("second fundamental form exceeds its degree");
            em.theta = n.with_bound(em.theta_bound());
            out.push_back({"E-1(" + std::to_string(j + 1) + ")", em, false});
        }
    }

    if (is_stable(t.L, cfg, w).stable) {
        StronglyParabolicHiggs z;
        z.first = d0;
        z.second = d1;
        z.flags = t.L.u;
        z.theta = Poly({}, std::max(z.theta_bound(), -1));
        out.push_back({"zero", z, false});
    }

    for (auto& cand : out) {
        auto bad = higgs_violations(cand.higgs, cfg);
        if (!bad.empty()) fail_internal("candidate " + cand.name + " is not strongly parabolic: " + bad.front());
        cand.stable = higgs_is_stable(cand.higgs, cfg, w);
    }
    return out;
}

CStarLimit cstar_limit(const FlatTriple& t, const MarkedConfiguration& cfg, const WeightVector& w) {
    CStarLimit res;
    res.candidates = limit_candidates(t, cfg, w);
    const LimitCandidate* chosen = nullptr;
    for (const auto& c : res.candidates) {
        if (!c.stable) continue;
        if (chosen) fail_internal("non-unique limit: " + chosen->name + " and " + c.name + " are both stable");
        chosen = &c;
    }
    if (!chosen) fail_precondition("no-stable-candidate");
    res.candidate = chosen->name;
    res.higgs = chosen->higgs;
    res.point = fixed_point_of(res.higgs, cfg);
    return res;
}

std::vector<std::pair<int, int>> nonzero_higgs_splits(int d, const WeightVector& w) {
    validate_weight(w);
    Scalar total(0);
    for (const auto& x : w) total += x;
    mpz_class fl = floor(total);
    long wint = fl.get_si() + (total == Scalar(fl.get_si()) ? 0 : 1);
    auto fdiv = [](long a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); };
    long m = fdiv(d - wint);
    long hi = fdiv(d + 3) - m;
    std::vector<std::pair<int, int>> out;
    for (long k = 1; k <= hi; ++k) out.emplace_back(static_cast<int>(d - k - m), static_cast<int>(m + k));
    return out;
}

FiberDimension fiber_dimension(const FixedLocusPoint& p, const MarkedConfiguration& cfg, const SpectrumRank2& nu) {
    if (nu.d != 1) fail_precondition("fiber dimensions are computed in degree 1");
    if (!spectrum_predicates(nu).non_special) fail_precondition("fiber dimensions need a non-special spectrum");
    FiberDimension fd;
    if (p.component == Component::F0) {
        // Every connection on the indecomposable B' orbit degenerates to the F0 point.
        ParabolicStructure L{BundleType::Bprime(), {}};
        L.u.fill(ProjectivePoint::finite(0));
        L.u[0] = ProjectivePoint::finite(1);
        auto sp = solve_connection_space(L, cfg, nu);
        if (!sp) fail_internal("connection space over the F0 point is empty");
        fd.before_gauge = sp->dimension();
        fd.gauge_rank = sp->stabilizer_dimension;
        fd.dimension = sp->dimension_mod_gauge();
        return fd;
    }
    StronglyParabolicHiggs h = higgs_from_point(p, cfg);
    // theta fixes A(12); each point keeps one parameter: the flag slope t_i on a
    // lower flag, the entry A(21) on an upper flag.
    std::array<Scalar, kPoints> a12;
    for (std::size_t i = 0; i < kPoints; ++i) a12[i] = h.theta(cfg[i]) / cfg.lagrange_weight(i);
    Mat row(1, kPoints);
    Scalar rhs(0);
    for (std::size_t i = 0; i < kPoints; ++i) {
        const auto& [np, nm] = nu.nu[i];
        if (h.flags[i] == kLower) {
            row(0, i) = -a12[i];
            rhs -= np;
        } else {
            rhs -= nm;
        }
    }
    auto sol = solve_affine(row, {rhs});
    if (!sol) fail_internal("fiber constraint is inconsistent");
    fd.before_gauge = sol->dimension();

    auto build = [&](const Vec& x) {
        FlatTriple t{{BundleType::B(), {}}, nu, {}};
        t.c.bundle = BundleType::B();
        for (std::size_t i = 0; i < kPoints; ++i) {
            const auto& [np, nm] = nu.nu[i];
            if (h.flags[i] == kLower) {
                const Scalar& s = x[i];
                t.L.u[i] = ProjectivePoint::finite(s);
                t.c.A[i] = Mat{{np - a12[i] * s, a12[i]}, {(np - nm) * s - a12[i] * s * s, nm + a12[i] * s}};
            } else {
                t.L.u[i] = kUpper;
                t.c.A[i] = Mat{{nm, 0}, {x[i], np}};
            }
        }
        return t;
    };
    auto params = [&](const FlatTriple& t) {
        Vec x(kPoints);
        for (std::size_t i = 0; i < kPoints; ++i) x[i] = h.flags[i] == kLower ? t.L.u[i].value() : t.c.A[i](1, 0);
        return x;
    };
    FlatTriple base = build(sol->particular);
    auto check = validate_triple(base, cfg);
    if (!check.valid) fail_internal("fiber representative is invalid: " + check.violations.front());
    // Unipotent gauge e -> e + p f, deg p <= 1, keeps theta and moves the parameters.
    Mat gens(0, kPoints);
    for (int k = 0; k <= 1; ++k) {
        Automorphism g{Scalar(1), Poly::monomial(k).with_bound(1)};
        Vec moved = params(gauge_transform(base, g, cfg));
        Vec delta(kPoints);
        for (std::size_t i = 0; i < kPoints; ++i) delta[i] = moved[i] - sol->particular[i];
        gens.append_row(delta);
    }
    fd.gauge_rank = rank(gens);
    fd.dimension = fd.before_gauge - fd.gauge_rank;
    return fd;
}

} // namespace paramod
