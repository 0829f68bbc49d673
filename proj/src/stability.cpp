#include "paramod/stability.hpp"

#include "paramod/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace paramod {

std::vector<std::size_t> contact_indices(ContactSet s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kPoints; ++i)
        if (s & (1u << i)) out.push_back(i);
    return out;
}

ContactSet contact_from_indices(const std::vector<std::size_t>& idx) {
    ContactSet s = 0;
    for (auto i : idx) {
        if (i >= kPoints) fail_precondition("contact index out of range");
        s |= 1u << i;
    }
    return s;
}

void validate_weight(const WeightVector& w) {
    for (const auto& x : w) {
        if (!x.is_real()) fail_precondition("weights must be real");
        if (x < Scalar(0) || x >= Scalar(1)) fail_precondition("weights must lie in [0, 1)");
    }
}

bool weight_is_kostov_generic(const WeightVector& w, int d) {
    for (unsigned eps = 0; eps < (1u << kPoints); ++eps) {
        Scalar s(d);
        for (std::size_t i = 0; i < kPoints; ++i) s += (eps & (1u << i)) ? -w[i] : w[i];
        if ((s / Scalar(2)).is_integer()) return false;
    }
    return true;
}

bool weight_is_non_resonant(const WeightVector& w) {
    return std::all_of(w.begin(), w.end(), [](const Scalar& x) { return x > Scalar(0) && x < Scalar(1); });
}

Scalar s_value(int d, int degF, ContactSet contact, const WeightVector& w) {
    Scalar s(d - 2 * degF);
    for (std::size_t i = 0; i < kPoints; ++i) s += (contact & (1u << i)) ? -w[i] : w[i];
    return s;
}

ContactSet contact_of(const Poly& q, const Poly& r, const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    ContactSet s = 0;
    for (std::size_t i = 0; i < kPoints; ++i) {
        bool hit = L.u[i].is_infinite() ? q(cfg[i]).is_zero() : (r(cfg[i]) - L.u[i].value() * q(cfg[i])).is_zero();
        if (hit) s |= 1u << i;
    }
    return s;
}

bool is_saturated(const Poly& q, const Poly& r, int q_bound, int r_bound) {
    if (q.is_zero() && r.is_zero()) return false;
    if (gcd(q, r).degree() >= 1) return false;
    bool q_vanishes_at_inf = q_bound < 0 || q.degree() < q_bound;
    bool r_vanishes_at_inf = r_bound < 0 || r.degree() < r_bound;
    return !(q_vanishes_at_inf && r_vanishes_at_inf);
}

int lowest_relevant_degree(int d) {
    // s >= d - 2k - sum w > d - 2k - 5, so k <= (d - 5)/2 never destabilizes.
    int t = d - 5;
    int fl = t >= 0 ? t / 2 : -((-t + 1) / 2);
    return fl + 1;
}

namespace {

struct MapSpace {
    int degree;
    int q_bound;          // d_first - degree
    int r_bound;          // d_second - degree
    std::size_t nq, nr;   // free coefficients (nr = 0 when r is forced to vanish)

    std::size_t size() const { return nq + nr; }

    std::pair<Poly, Poly> split(const Vec& x) const {
        std::vector<Scalar> qc(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nq));
        std::vector<Scalar> rc(x.begin() + static_cast<std::ptrdiff_t>(nq), x.end());
        return {Poly(qc, std::max(q_bound, -1)), Poly(rc, std::max(r_bound, -1))};
    }
};

Vec contact_row(const MapSpace& sp, const ParabolicStructure& L, const MarkedConfiguration& cfg, std::size_t i) {
    Vec row(sp.size(), Scalar(0));
    Scalar zp(1);
    std::size_t top = std::max(sp.nq, sp.nr);
    for (std::size_t e = 0; e < top; ++e) {
        if (L.u[i].is_infinite()) {
            if (e < sp.nq) row[e] = zp;
        } else {
            if (e < sp.nq) row[e] = -L.u[i].value() * zp;
            if (e < sp.nr) row[sp.nq + e] = zp;
        }
        zp *= cfg[i];
    }
    return row;
}

// Deterministic coefficient stream for witness search.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : s_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    long next(long range) {
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((s_ >> 33) % static_cast<std::uint64_t>(2 * range + 1)) - range;
    }

private:
    std::uint64_t s_;
};

std::optional<LineSubbundleWitness> saturated_witness(const MapSpace& sp, const std::vector<Vec>& basis,
                                                      ContactSet target, const ParabolicStructure& L,
                                                      const MarkedConfiguration& cfg) {
    const std::size_t m = basis.size();
    std::vector<std::pair<Poly, Poly>> polys;
    for (const auto& v : basis) polys.push_back(sp.split(v));

    auto accept = [&](const Vec& x) -> std::optional<LineSubbundleWitness> {
        auto [q, r] = sp.split(x);
        if (!is_saturated(q, r, sp.q_bound, sp.r_bound)) return std::nullopt;
        if (contact_of(q, r, L, cfg) != target) return std::nullopt;
        return LineSubbundleWitness{sp.degree, q, r, target};
    };

    if (m == 1) return accept(basis[0]);

    // Rank <= 1 over C(z): every element is h (Q, R) with h ranging over >= 2 dimensions,
    // so every element vanishes somewhere on the projective line.
    bool rank_one = true;
    for (std::size_t j = 0; j < m && rank_one; ++j)
        for (std::size_t k = j + 1; k < m && rank_one; ++k)
            if (!(polys[j].first * polys[k].second - polys[k].first * polys[j].second).is_zero()) rank_one = false;
    if (rank_one) return std::nullopt;

    Poly g;
    bool q_inf = true, r_inf = true;
    for (const auto& [q, r] : polys) {
        g = gcd(gcd(g, q), r);
        q_inf = q_inf && (sp.q_bound < 0 || q.degree() < sp.q_bound);
        r_inf = r_inf && (sp.r_bound < 0 || r.degree() < sp.r_bound);
    }
    if (g.degree() >= 1 || (q_inf && r_inf)) return std::nullopt;

    // Without base points and at generic rank 2 the non-saturated elements form a proper
    // closed subset, so the search below terminates.
    for (std::size_t j = 0; j < m; ++j)
        if (auto w = accept(basis[j])) return w;
    Lcg rng(static_cast<std::uint64_t>(m) * 131 + target);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        long range = 2 + attempt / 50;
        Vec x(sp.size(), Scalar(0));
        for (std::size_t j = 0; j < m; ++j) {
            Scalar c(rng.next(range));
            for (std::size_t t = 0; t < x.size(); ++t)
                if (!basis[j][t].is_zero()) x[t] += c * basis[j][t];
        }
        if (auto w = accept(x)) return w;
    }
    fail_internal("saturated witness search did not terminate");
}

} // namespace

std::vector<Candidate> destabilizing_candidates(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                bool require_second_zero) {
    const int d0 = L.bundle.d0, d1 = L.bundle.d1;
    std::vector<Candidate> out;
    for (int k = lowest_relevant_degree(d0 + d1); k <= std::max(d0, d1); ++k) {
        MapSpace sp{k, d0 - k, d1 - k, static_cast<std::size_t>(std::max(d0 - k + 1, 0)),
                    require_second_zero ? 0 : static_cast<std::size_t>(std::max(d1 - k + 1, 0))};
        if (sp.size() == 0) continue;
        std::array<Vec, kPoints> rows;
        for (std::size_t i = 0; i < kPoints; ++i) rows[i] = contact_row(sp, L, cfg, i);

        std::vector<ContactSet> found;
        for (int size = static_cast<int>(kPoints); size >= 0; --size) {
            for (ContactSet mask = 0; mask < (1u << kPoints); ++mask) {
                if (std::popcount(mask) != size) continue;
                if (std::any_of(found.begin(), found.end(), [&](ContactSet f) { return (f & mask) == mask; }))
                    continue;
                Mat sys(0, sp.size());
                for (auto i : contact_indices(mask)) sys.append_row(rows[i]);
                auto basis = nullspace(sys);
                if (basis.empty()) continue;
                ContactSet closure = 0;
                for (std::size_t i = 0; i < kPoints; ++i)
                    if (std::all_of(basis.begin(), basis.end(), [&](const Vec& v) { return dot(rows[i], v).is_zero(); }))
                        closure |= 1u << i;
                if (closure != mask) continue;
                if (auto w = saturated_witness(sp, basis, mask, L, cfg)) {
                    found.push_back(mask);
                    out.push_back({k, mask, *w});
                }
            }
        }
    }
    return out;
}

std::optional<LineSubbundleWitness> find_subbundle(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                   int degree, ContactSet contact) {
    const int d0 = L.bundle.d0, d1 = L.bundle.d1;
    MapSpace sp{degree, d0 - degree, d1 - degree, static_cast<std::size_t>(std::max(d0 - degree + 1, 0)),
                static_cast<std::size_t>(std::max(d1 - degree + 1, 0))};
    if (sp.size() == 0) return std::nullopt;
    std::array<Vec, kPoints> rows;
    for (std::size_t i = 0; i < kPoints; ++i) rows[i] = contact_row(sp, L, cfg, i);
    Mat sys(0, sp.size());
    for (auto i : contact_indices(contact)) sys.append_row(rows[i]);
    auto basis = nullspace(sys);
    if (basis.empty()) return std::nullopt;
    for (std::size_t i = 0; i < kPoints; ++i) {
        if (contact & (1u << i)) continue;
        // Every element meets a point outside the requested set: exact contact is impossible.
        if (std::all_of(basis.begin(), basis.end(), [&](const Vec& v) { return dot(rows[i], v).is_zero(); }))
            return std::nullopt;
    }
    return saturated_witness(sp, basis, contact, L, cfg);
}

StabilityReport is_stable(const ParabolicStructure& L, const MarkedConfiguration& cfg, const WeightVector& w) {
    validate_weight(w);
    auto cands = destabilizing_candidates(L, cfg);
    if (cands.empty()) fail_internal("no line subbundle found");
    StabilityReport rep;
    bool first = true;
    for (auto& c : cands) {
        Scalar s = s_value(L.bundle.degree(), c.degree, c.contact, w);
        if (s.is_zero()) fail_precondition("on-wall: a line subbundle has s_w = 0");
        if (first || s < rep.margin) {
            rep.margin = s;
            rep.worst = c;
            first = false;
        }
    }
    rep.stable = rep.margin > Scalar(0);
    return rep;
}

WeightVector stabilizing_weight(const StratumId& stratum) {
    if (stratum.decomposable) fail_precondition("decomposable stratum has no stabilizing weight");
    auto uniform = [](const Scalar& x) {
        WeightVector w;
        w.fill(x);
        return w;
    };
    switch (stratum.family) {
    case StratumFamily::U2: return uniform(Scalar(4, 15));
    case StratumFamily::Ui: return uniform(Scalar(7, 15));
    case StratumFamily::UijDoublePrime: {
        auto w = uniform(Scalar(11, 15));
        w[stratum.infinite.at(1)] = Scalar(4, 15);
        return w;
    }
    case StratumFamily::GenericIndecomposable: {
        auto w = uniform(Scalar(11, 15));
        w[1] = Scalar(4, 15);
        return w;
    }
    default: fail_precondition("stratum " + stratum.label() + " has no indecomposable members");
    }
}

bool no_stable_structure(const WeightVector& w, const BundleType& bundle) {
    validate_weight(w);
    Scalar total(0);
    for (const auto& x : w) total += x;
    bool per_point = false;
    for (std::size_t j = 0; j < kPoints; ++j)
        if (total - Scalar(2) * w[j] > Scalar(3)) per_point = true;
    if (bundle.is_B()) {
        if (total < Scalar(1) || per_point) return true;
        for (std::size_t i = 0; i < kPoints; ++i)
            for (std::size_t j = i + 1; j < kPoints; ++j)
                if (Scalar(2) * (w[i] + w[j]) - total > Scalar(1)) return true;
        return false;
    }
    if (bundle.is_Bprime()) return total < Scalar(3) || per_point;
    fail_precondition("emptiness criteria are defined for B and Bprime");
}

ChamberDescriptor chamber_classify(const WeightVector& w, int d) {
    validate_weight(w);
    ChamberDescriptor desc;
    desc.d = d;
    for (unsigned eps = 0; eps < (1u << kPoints); ++eps) {
        WallInterval iv;
        Scalar s(0);
        for (std::size_t i = 0; i < kPoints; ++i) {
            iv.eps[i] = (eps & (1u << i)) ? -1 : 1;
            s += (eps & (1u << i)) ? -w[i] : w[i];
        }
        mpz_class fl = floor(s);
        long n = fl.get_si();
        if (((n - d) % 2 + 2) % 2 != 0) --n;
        if (s == Scalar(n)) fail_precondition("on-wall: weight lies on a wall");
        iv.lower = static_cast<int>(n);
        desc.intervals.push_back(iv);
    }
    return desc;
}

} // namespace paramod
