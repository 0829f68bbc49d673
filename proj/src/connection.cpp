#include "paramod/connection.hpp"

#include "paramod/error.hpp"

#include <algorithm>

namespace paramod {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Mat zero2() { return Mat(2, 2); }

PolyMat mul(const PolyMat& a, const PolyMat& b) {
    PolyMat c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}

PolyMat add(const PolyMat& a, const PolyMat& b) {
    PolyMat c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}

PolyMat scale(const Poly& s, const PolyMat& a) {
    PolyMat c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = s * a[i][j];
    return c;
}

PolyMat adjugate(const PolyMat& m) {
    return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

Poly determinant(const PolyMat& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

PolyMat derivative(const PolyMat& m) {
    PolyMat c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = m[i][j].derivative();
    return c;
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) fail_internal("inexact polynomial division in frame change");
    return q;
}

// Rebuilds residues and tail from P(z) * connection matrix.
LogConnection from_cleared(const BundleType& bundle, const PolyMat& W, const MarkedConfiguration& cfg) {
    LogConnection c;
    c.bundle = bundle;
    const auto z = cfg.as_vector();
    Poly P = cfg.vanishing_poly();
    std::array<Poly, kPoints> Pi;
    for (std::size_t i = 0; i < kPoints; ++i) {
        Pi[i] = lagrange_denominator_poly(z, i);
        c.A[i] = zero2();
        Scalar lw = cfg.lagrange_weight(i);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) c.A[i](a, b) = W[a][b](cfg[i]) / lw;
    }
    PolyMat G;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Poly rest = W[a][b];
            for (std::size_t i = 0; i < kPoints; ++i) rest -= c.A[i](a, b) * Pi[i];
            G[a][b] = exact_div(rest, P);
        }
    if (!G[0][0].is_zero() || !G[0][1].is_zero() || !G[1][1].is_zero())
        fail_internal("frame change produced a pole at infinity");
    if (!G[1][0].is_zero() && G[1][0].degree() > bundle.gap() - 2)
        fail_internal("frame change produced a tail beyond its bound");
    c.G21 = G[1][0].with_bound(std::max(bundle.gap() - 2, -1));
    return c;
}

// Connection in the frame y with old coordinates x = M y.
LogConnection change_frame(const LogConnection& c, const MarkedConfiguration& cfg, const PolyMat& M,
                           const BundleType& target) {
    PolyMat W = cleared_connection_matrix(c, cfg);
    Poly P = cfg.vanishing_poly();
    PolyMat num = mul(adjugate(M), add(mul(W, M), scale(P, derivative(M))));
    Poly det = determinant(M);
    PolyMat Wn;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) Wn[a][b] = exact_div(num[a][b], det);
    return from_cleared(target, Wn, cfg);
}

ProjectivePoint transport_flag(const ProjectivePoint& u, const PolyMat& M, const Scalar& z) {
    // y = adj(M(z)) x, valid where det M(z) != 0.
    Scalar x0 = u.kappa(), x1 = u.lambda();
    Scalar y0 = M[1][1](z) * x0 - M[0][1](z) * x1;
    Scalar y1 = -M[1][0](z) * x0 + M[0][0](z) * x1;
    return ProjectivePoint(y0, y1);
}

struct ElmFrame {
    PolyMat M;
    BundleType bundle;
    ProjectivePoint flag_j;
};

ElmFrame elm_frame(const ParabolicStructure& L, const MarkedConfiguration& cfg, std::size_t j) {
    if (j >= kPoints) fail_precondition("point index out of range");
    const int d0 = L.bundle.d0, d1 = L.bundle.d1;
    Poly lin = Poly::linear(cfg[j]);
    Poly one = Poly::constant(Scalar(1)), zero;
    if (L.u[j].is_infinite()) return {{{{lin, zero}, {zero, one}}}, {d0 - 1, d1}, ProjectivePoint::finite(0)};
    Poly uj = Poly::constant(L.u[j].value());
    if (d1 > d0) return {{{{one, zero}, {uj, lin}}}, {d0, d1 - 1}, ProjectivePoint::infinity()};
    // Equal degrees: the modified summand drops below the other, so swap the frame order.
    return {{{{zero, one}, {lin, uj}}}, {d1 - 1, d0}, ProjectivePoint::finite(0)};
}

std::size_t stabilizer_dimension(const ParabolicStructure& L, const MarkedConfiguration& cfg) {
    // Endomorphisms [[alpha, 0], [p, sigma]] (or all of gl2 at equal degrees) fixing every flag.
    const int gap = L.bundle.gap();
    const bool full = gap == 0;
    const std::size_t np = full ? 1 : static_cast<std::size_t>(gap) + 1;
    const std::size_t n = 3 + np;  // alpha, sigma, upper (full only), p_0..p_gap
    Mat m(0, n);
    for (std::size_t k = 0; k < kPoints; ++k) {
        const Scalar &ka = L.u[k].kappa(), &la = L.u[k].lambda();
        // (X v)_1 * la - (X v)_2 * ka = 0
        Vec row(n, Scalar(0));
        row[0] = ka * la;
        row[1] = -la * ka;
        row[2] = la * la;
        for (std::size_t e = 0; e < np; ++e) row[3 + e] = -ka * ka * pow(cfg[k], static_cast<unsigned>(e));
        m.append_row(row);
    }
    if (!full) {
        Vec row(n, Scalar(0));
        row[2] = Scalar(1);
        m.append_row(row);
    }
    return nullspace(m).size() - 1;
}

} // namespace

std::pair<int, int> degree_bounds(int d) {
    int h = floor_div(d + 3, 2);
    return {d - h, h};
}

std::vector<BundleType> irreducible_splits(int d) {
    auto [lo, hi] = degree_bounds(d);
    std::vector<BundleType> out;
    for (int d0 = lo; 2 * d0 <= d; ++d0) {
        int d1 = d - d0;
        if (d1 <= hi) out.push_back({d0, d1});
    }
    return out;
}

void ConnectionSystem::add_row(const Vec& row, const Scalar& value) {
    M.append_row(row);
    rhs.push_back(value);
}

ConnectionSystem connection_system(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                   const SpectrumRank2& nu) {
    if (nu.d != L.bundle.degree()) fail_precondition("spectrum degree differs from the bundle degree");
    const int gap = L.bundle.gap();
    if (gap < 0) fail_precondition("connection systems need d0 <= d1");
    const std::size_t tail = static_cast<std::size_t>(std::max(gap - 1, 0));
    ConnectionSystem sys{L.bundle, Mat(0, 4 * kPoints + tail), {}};
    const std::size_t n = sys.unknowns();
    auto unit = [&](std::initializer_list<std::pair<std::size_t, Scalar>> terms) {
        Vec row(n, Scalar(0));
        for (const auto& [k, v] : terms) row[k] += v;
        return row;
    };
    using S = ConnectionSystem;
    for (std::size_t i = 0; i < kPoints; ++i) {
        const Scalar& np = nu.nu[i].first;
        if (L.u[i].is_infinite()) {
            sys.add_row(unit({{S::var(i, 0, 1), 1}}), 0);
            sys.add_row(unit({{S::var(i, 1, 1), 1}}), np);
        } else {
            const Scalar& u = L.u[i].value();
            sys.add_row(unit({{S::var(i, 0, 0), 1}, {S::var(i, 0, 1), u}}), np);
            sys.add_row(unit({{S::var(i, 1, 0), 1}, {S::var(i, 1, 1), u}}), np * u);
        }
        sys.add_row(unit({{S::var(i, 0, 0), 1}, {S::var(i, 1, 1), 1}}), np + nu.nu[i].second);
    }
    Vec s11(n, Scalar(0)), s22(n, Scalar(0)), s21(n, Scalar(0));
    for (std::size_t i = 0; i < kPoints; ++i) {
        s11[S::var(i, 0, 0)] = 1;
        s22[S::var(i, 1, 1)] = 1;
        s21[S::var(i, 1, 0)] = 1;
    }
    sys.add_row(s11, Scalar(-L.bundle.d0));
    sys.add_row(s22, Scalar(-L.bundle.d1));
    for (int k = 0; k <= gap; ++k) {
        Vec row(n, Scalar(0));
        for (std::size_t i = 0; i < kPoints; ++i) row[S::var(i, 0, 1)] = pow(cfg[i], static_cast<unsigned>(k));
        sys.add_row(row, 0);
    }
    if (gap == 0) sys.add_row(s21, 0);
    return sys;
}

LogConnection connection_from_vector(const BundleType& bundle, const Vec& x) {
    LogConnection c;
    c.bundle = bundle;
    const std::size_t tail = static_cast<std::size_t>(c.tail_size());
    if (x.size() != 4 * kPoints + tail) fail_precondition("connection vector has the wrong length");
    for (std::size_t i = 0; i < kPoints; ++i)
        c.A[i] = Mat{{x[4 * i], x[4 * i + 1]}, {x[4 * i + 2], x[4 * i + 3]}};
    std::vector<Scalar> g(x.begin() + 4 * kPoints, x.end());
    c.G21 = Poly(g, std::max(bundle.gap() - 2, -1));
    return c;
}

std::size_t ConnectionSpace::dimension_mod_gauge() const {
    return dimension() > stabilizer_dimension ? dimension() - stabilizer_dimension : 0;
}

Vec ConnectionSpace::point(const std::vector<Scalar>& t) const {
    if (t.size() != space.basis.size()) fail_precondition("wrong number of affine parameters");
    Vec x = space.particular;
    for (std::size_t k = 0; k < t.size(); ++k)
        for (std::size_t m = 0; m < x.size(); ++m) x[m] += t[k] * space.basis[k][m];
    return x;
}

std::optional<ConnectionSpace> solve_system(const ConnectionSystem& sys, const ParabolicStructure& L,
                                            const MarkedConfiguration& cfg) {
    auto sol = solve_affine(sys.M, sys.rhs);
    if (!sol) return std::nullopt;
    return ConnectionSpace{*sol, stabilizer_dimension(L, cfg)};
}

std::optional<ConnectionSpace> solve_connection_space(const ParabolicStructure& L, const MarkedConfiguration& cfg,
                                                      const SpectrumRank2& nu) {
    return solve_system(connection_system(L, cfg, nu), L, cfg);
}

TripleValidation validate_triple(const FlatTriple& t, const MarkedConfiguration& cfg) {
    TripleValidation v;
    auto fail = [&](std::string msg) {
        v.valid = false;
        v.violations.push_back(std::move(msg));
    };
    const auto& c = t.c;
    if (!(c.bundle == t.L.bundle)) fail("connection and structure live on different bundles");
    if (t.nu.d != c.bundle.degree()) fail("spectrum degree differs from the bundle degree");
    Scalar fuchs(t.nu.d);
    for (const auto& [p, m] : t.nu.nu) fuchs += p + m;
    if (!fuchs.is_zero()) fail("Fuchs relation fails");
    for (std::size_t i = 0; i < kPoints; ++i) {
        const Mat& A = c.A[i];
        const auto& [np, nm] = t.nu.nu[i];
        std::string at = " at point " + std::to_string(i + 1);
        if (A.trace() != np + nm) fail("trace" + at);
        if (det(A) != np * nm) fail("determinant" + at);
        const Scalar &ka = t.L.u[i].kappa(), &la = t.L.u[i].lambda();
        Scalar y0 = A(0, 0) * ka + A(0, 1) * la, y1 = A(1, 0) * ka + A(1, 1) * la;
        if (y0 != np * ka || y1 != np * la) fail("flag is not the nu+ eigenline" + at);
    }
    Scalar s11(0), s22(0), s21(0);
    for (std::size_t i = 0; i < kPoints; ++i) {
        s11 += c.A[i](0, 0);
        s22 += c.A[i](1, 1);
        s21 += c.A[i](1, 0);
    }
    if (s11 != Scalar(-c.bundle.d0)) fail("sum of A(11) differs from -d0");
    if (s22 != Scalar(-c.bundle.d1)) fail("sum of A(22) differs from -d1");
    for (int k = 0; k <= c.bundle.gap(); ++k) {
        Scalar m(0);
        for (std::size_t i = 0; i < kPoints; ++i) m += c.A[i](0, 1) * pow(cfg[i], static_cast<unsigned>(k));
        if (!m.is_zero()) fail("moment " + std::to_string(k) + " of A(12) is nonzero");
    }
    if (c.bundle.gap() == 0 && !s21.is_zero()) fail("sum of A(21) is nonzero at equal degrees");
    if (!c.G21.is_zero() && c.G21.degree() > c.bundle.gap() - 2) fail("G21 exceeds degree d1 - d0 - 2");
    return v;
}

IrreducibilityScreen irreducibility_screen(const FlatTriple& t) {
    IrreducibilityScreen s;
    const int top = std::max(t.c.bundle.d0, t.c.bundle.d1);
    for (unsigned eps = 0; eps < (1u << kPoints); ++eps) {
        std::array<int, kPoints> sigma{};
        Scalar sum(0);
        for (std::size_t i = 0; i < kPoints; ++i) {
            sigma[i] = (eps & (1u << i)) ? -1 : 1;
            sum += t.nu.pick(i, sigma[i]);
        }
        // An invariant line of degree k carries residue eigenvalues summing to -k.
        if (sum.is_integer() && -sum <= Scalar(top)) s.patterns.push_back(sigma);
    }
    s.irreducible = s.patterns.empty();
    return s;
}

PolyMat cleared_connection_matrix(const LogConnection& c, const MarkedConfiguration& cfg) {
    const auto z = cfg.as_vector();
    PolyMat W;
    for (std::size_t i = 0; i < kPoints; ++i) {
        Poly Pi = lagrange_denominator_poly(z, i);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) W[a][b] += c.A[i](a, b) * Pi;
    }
    W[1][0] += cfg.vanishing_poly() * c.G21;
    return W;
}

Poly invariance_defect(const LogConnection& c, const MarkedConfiguration& cfg, const Poly& q, const Poly& r) {
    PolyMat W = cleared_connection_matrix(c, cfg);
    Poly P = cfg.vanishing_poly();
    Poly n1 = P * q.derivative() + W[0][0] * q + W[0][1] * r;
    Poly n2 = P * r.derivative() + W[1][0] * q + W[1][1] * r;
    return n1 * r - n2 * q;
}

bool verify_invariant_line(const FlatTriple& t, const MarkedConfiguration& cfg, const LineSubbundleWitness& F) {
    if (F.q.is_zero() && F.r.is_zero()) fail_precondition("witness section is zero");
    if (F.q.degree() > t.c.bundle.d0 - F.degree || F.r.degree() > t.c.bundle.d1 - F.degree)
        fail_precondition("witness exceeds the degree bounds of its subbundle");
    return invariance_defect(t.c, cfg, F.q, F.r).is_zero();
}

Poly theta_from_connection(const LogConnection& c, const MarkedConfiguration& cfg) {
    if (!c.bundle.is_B()) fail_precondition("theta is read off connections on B");
    const auto z = cfg.as_vector();
    Poly th;
    for (std::size_t i = 0; i < kPoints; ++i) th += c.A[i](0, 1) * lagrange_denominator_poly(z, i);
    if (th.degree() > 2) fail_precondition("connection is not holomorphic at infinity");
    return th.with_bound(2);
}

FlatTriple gauge_transform(const FlatTriple& t, const Automorphism& g, const MarkedConfiguration& cfg) {
    if (g.a.is_zero()) fail_precondition("automorphism requires a != 0");
    // Old coordinates in terms of new ones: x = g^{-1} y.
    Scalar ia = Scalar(1) / g.a;
    PolyMat Minv{{{Poly::constant(ia), Poly()}, {-(ia * g.p), Poly::constant(Scalar(1))}}};
    FlatTriple out = t;
    out.L = act(g, t.L, cfg);
    out.c = change_frame(t.c, cfg, Minv, t.c.bundle);
    return out;
}

ParabolicStructure elm_structure(const ParabolicStructure& L, const MarkedConfiguration& cfg, std::size_t j) {
    ElmFrame f = elm_frame(L, cfg, j);
    ParabolicStructure out{f.bundle, {}};
    for (std::size_t i = 0; i < kPoints; ++i)
        out.u[i] = i == j ? f.flag_j : transport_flag(L.u[i], f.M, cfg[i]);
    return out;
}

LineSubbundleWitness elm_subbundle(const LineSubbundleWitness& F, const ParabolicStructure& L,
                                   const MarkedConfiguration& cfg, std::size_t j) {
    ElmFrame f = elm_frame(L, cfg, j);
    PolyMat adj = adjugate(f.M);
    Poly det = determinant(f.M);
    Poly y0 = adj[0][0] * F.q + adj[0][1] * F.r;
    Poly y1 = adj[1][0] * F.q + adj[1][1] * F.r;
    int degree = F.degree;
    if ((y0.divmod(det).second.is_zero()) && (y1.divmod(det).second.is_zero())) {
        y0 = exact_div(y0, det);
        y1 = exact_div(y1, det);
    } else {
        // The section leaves the modified bundle; twist it down by z - z_j.
        Poly unitc = exact_div(Poly::linear(cfg[j]), det);
        y0 = unitc * y0;
        y1 = unitc * y1;
        degree -= 1;
    }
    ParabolicStructure Ln = elm_structure(L, cfg, j);
    LineSubbundleWitness out;
    out.degree = degree;
    out.q = y0.with_bound(std::max(Ln.bundle.d0 - degree, -1));
    out.r = y1.with_bound(std::max(Ln.bundle.d1 - degree, -1));
    out.contact = contact_of(out.q, out.r, Ln, cfg);
    return out;
}

FlatTriple elm_triple(const FlatTriple& t, const MarkedConfiguration& cfg, std::size_t j) {
    ElmFrame f = elm_frame(t.L, cfg, j);
    FlatTriple out;
    out.L = elm_structure(t.L, cfg, j);
    out.nu = elm_spectrum(t.nu, j);
    out.c = change_frame(t.c, cfg, f.M, f.bundle);
    return out;
}

} // namespace paramod
