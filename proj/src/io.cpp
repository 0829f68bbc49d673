#include "paramod/io.hpp"

#include "paramod/error.hpp"

namespace paramod::io {

namespace {

const json& require(const json& j, const char* key, const std::string& what) {
    if (!j.is_object()) fail_schema(what + " must be a JSON object");
    auto it = j.find(key);
    if (it == j.end()) fail_schema(what + " is missing \"" + key + "\"");
    return *it;
}

int int_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) {
        Scalar s = scalar_from_json(j, what);
        if (!s.is_integer()) fail_schema(what + " must be an integer");
        return static_cast<int>(s.re().get_num().get_si());
    }
    fail_schema(what + " must be an integer");
}

template <std::size_t N>
std::array<json, N> fixed_list(const json& j, const std::string& what) {
    auto v = list_from_json(j, what);
    if (v.size() != N) fail_schema(what + " needs " + std::to_string(N) + " entries, got " + std::to_string(v.size()));
    std::array<json, N> out;
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

} // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        std::string item = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (!j.is_string()) fail_schema(what + " must be a rational string");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
        fail_schema(what + ": " + e.what());
    }
}

json to_json(const ProjectivePoint& p) { return p.str(); }

ProjectivePoint point_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return ProjectivePoint::finite(Scalar(j.get<long>()));
    if (!j.is_string()) fail_schema(what + " must be a string");
    try {
        return ProjectivePoint::parse(j.get<std::string>());
    } catch (const Error& e) {
        fail_schema(what + ": " + e.what());
    }
}

std::vector<json> list_from_json(const json& j, const std::string& what) {
    if (j.is_array()) return {j.begin(), j.end()};
    if (j.is_string()) {
        std::vector<json> out;
        for (auto& s : split_list(j.get<std::string>())) out.emplace_back(s);
        return out;
    }
    fail_schema(what + " must be a list");
}

MarkedConfiguration config_from_json(const json& j) {
    const json& z = j.is_object() ? require(j, "z", "configuration") : j;
    auto items = fixed_list<kPoints>(z, "z");
    std::array<Scalar, kPoints> pts;
    for (std::size_t i = 0; i < kPoints; ++i) pts[i] = scalar_from_json(items[i], "z");
    try {
        return MarkedConfiguration(pts);
    } catch (const Error& e) {
        fail_schema(e.what());
    }
}

WeightVector weight_from_json(const json& j) {
    auto items = fixed_list<kPoints>(j, "w");
    WeightVector w;
    for (std::size_t i = 0; i < kPoints; ++i) w[i] = scalar_from_json(items[i], "w");
    validate_weight(w);
    return w;
}

json weight_to_json(const WeightVector& w) {
    json out = json::array();
    for (const auto& x : w) out.push_back(to_json(x));
    return out;
}

json to_json(const ParabolicStructure& L) {
    json u = json::array();
    for (const auto& p : L.u) u.push_back(to_json(p));
    return {{"bundle", L.bundle.name()}, {"u", u}};
}

ParabolicStructure structure_from_json(const json& j) {
    ParabolicStructure L;
    auto it = j.find("bundle");
    if (it != j.end()) {
        if (!it->is_string()) fail_schema("bundle must be a string");
        L.bundle = BundleType::parse(it->get<std::string>());
    } else {
        L.bundle = BundleType::B();
    }
    auto items = fixed_list<kPoints>(require(j, "u", "structure"), "u");
    for (std::size_t i = 0; i < kPoints; ++i) L.u[i] = point_from_json(items[i], "u");
    return L;
}

json to_json(const SpectrumRank2& nu) {
    json pairs = json::array();
    for (const auto& [a, b] : nu.nu) pairs.push_back(json::array({to_json(a), to_json(b)}));
    return {{"d", nu.d}, {"nu", pairs}};
}

std::array<std::pair<Scalar, Scalar>, kPoints> nu_pairs_from_json(const json& j) {
    auto items = fixed_list<kPoints>(j, "nu");
    std::array<std::pair<Scalar, Scalar>, kPoints> out;
    for (std::size_t i = 0; i < kPoints; ++i) {
        std::vector<json> pair;
        if (items[i].is_string()) {
            for (auto& s : split_list(items[i].get<std::string>(), ':')) pair.emplace_back(s);
        } else if (items[i].is_array()) {
            pair.assign(items[i].begin(), items[i].end());
        }
        if (pair.size() != 2) fail_schema("each nu entry is a pair nu+:nu-");
        out[i] = {scalar_from_json(pair[0], "nu"), scalar_from_json(pair[1], "nu")};
    }
    return out;
}

SpectrumRank2 spectrum_from_json(const json& j) {
    int d = int_from_json(require(j, "d", "spectrum"), "d");
    auto pairs = nu_pairs_from_json(require(j, "nu", "spectrum"));
    try {
        return SpectrumRank2::make(pairs, d);
    } catch (const Error& e) {
        fail_schema(e.what());
    }
}

json to_json(const MCBranch& b) {
    json beta = json::array();
    for (const auto& x : b.betaV) beta.push_back(to_json(x));
    return {{"sigma", b.sigma_str()}, {"betaV", beta}};
}

MCBranch branch_from_json(const json& j) {
    const json& s = require(j, "sigma", "branch");
    if (!s.is_string()) fail_schema("sigma must be a string of five signs");
    auto items = fixed_list<kPoints>(require(j, "betaV", "branch"), "betaV");
    std::array<Scalar, kPoints> beta;
    for (std::size_t i = 0; i < kPoints; ++i) beta[i] = scalar_from_json(items[i], "betaV");
    return MCBranch::parse(s.get<std::string>(), beta);
}

json to_json(const MCSpectrumRank3& s) {
    json bh = json::array(), bu = json::array(), tr = json::array();
    for (std::size_t i = 0; i < kPoints; ++i) {
        bh.push_back(to_json(s.betaH[i]));
        bu.push_back(to_json(s.betaU[i]));
        tr.push_back(json::array({to_json(s.triples[i][0]), to_json(s.triples[i][1]), to_json(s.triples[i][2])}));
    }
    return {{"rank", s.rank}, {"d", s.d}, {"betaK", to_json(s.betaK)}, {"betaH", bh}, {"betaU", bu}, {"triples", tr}};
}

json to_json(const LogConnection& c) {
    json A = json::array();
    for (const auto& m : c.A)
        A.push_back(json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                                 json::array({to_json(m(1, 0)), to_json(m(1, 1))})}));
    json g = json::array();
    for (int k = 0; k < c.tail_size(); ++k) g.push_back(to_json(c.G21.coeff(k)));
    return {{"A", A}, {"G21", g}};
}

LogConnection connection_from_json(const BundleType& bundle, const json& j) {
    LogConnection c;
    c.bundle = bundle;
    const json& A = require(j, "A", "connection");
    if (!A.is_array() || A.size() != kPoints) fail_schema("connection A needs five 2x2 matrices");
    for (std::size_t i = 0; i < kPoints; ++i) {
        const json& m = A[i];
        if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
            m[1].size() != 2)
            fail_schema("connection A entries must be 2x2");
        c.A[i] = Mat{{scalar_from_json(m[0][0], "A"), scalar_from_json(m[0][1], "A")},
                     {scalar_from_json(m[1][0], "A"), scalar_from_json(m[1][1], "A")}};
    }
    std::vector<Scalar> g;
    auto it = j.find("G21");
    if (it != j.end())
        for (auto& x : list_from_json(*it, "G21")) g.push_back(scalar_from_json(x, "G21"));
    if (static_cast<int>(g.size()) > c.tail_size())
        fail_schema("G21 has " + std::to_string(g.size()) + " coefficients, at most " +
                    std::to_string(c.tail_size()) + " allowed");
    c.G21 = Poly(g, std::max(c.tail_size() - 1, -1));
    return c;
}

json to_json(const FlatTriple& t) {
    return {{"structure", to_json(t.L)}, {"spectrum", to_json(t.nu)}, {"connection", to_json(t.c)}};
}

FlatTriple triple_from_json(const json& j) {
    FlatTriple t;
    t.L = structure_from_json(require(j, "structure", "triple"));
    t.nu = spectrum_from_json(require(j, "spectrum", "triple"));
    t.c = connection_from_json(t.L.bundle, require(j, "connection", "triple"));
    return t;
}

json contact_to_json(ContactSet c) {
    json out = json::array();
    for (auto i : contact_indices(c)) out.push_back(i + 1);
    return out;
}

json to_json(const StabilityReport& r) {
    return {{"stable", r.stable},
            {"worst", {{"deg", r.worst.degree}, {"contact", contact_to_json(r.worst.contact)}, {"margin", to_json(r.margin)}}}};
}

json to_json(const StronglyParabolicHiggs& h) {
    json flags = json::array(), theta = json::array();
    for (const auto& f : h.flags) flags.push_back(to_json(f));
    for (const auto& x : h.theta.coeffs()) theta.push_back(to_json(x));
    return {{"first", h.first}, {"second", h.second}, {"flags", flags}, {"theta", theta}};
}

StronglyParabolicHiggs higgs_from_json(const json& j) {
    StronglyParabolicHiggs h;
    h.first = int_from_json(require(j, "first", "higgs"), "first");
    h.second = int_from_json(require(j, "second", "higgs"), "second");
    auto items = fixed_list<kPoints>(require(j, "flags", "higgs"), "flags");
    for (std::size_t i = 0; i < kPoints; ++i) h.flags[i] = point_from_json(items[i], "flags");
    std::vector<Scalar> th;
    for (auto& x : list_from_json(require(j, "theta", "higgs"), "theta")) th.push_back(scalar_from_json(x, "theta"));
    try {
        h.theta = Poly(th, std::max(h.theta_bound(), -1));
    } catch (const Error& e) {
        fail_schema(std::string("theta: ") + e.what());
    }
    return h;
}

json to_json(const FixedLocusPoint& p, const MarkedConfiguration& cfg) {
    json out{{"component", component_name(p.component)}, {"chart", chart_name(p.chart)}};
    json dv = json::array(), zeros = json::array();
    for (const auto& x : p.divisor) dv.push_back(to_json(x));
    if (p.divisor.size() == 3)
        for (const auto& z : divisor_zeros(p.divisor)) zeros.push_back(to_json(z));
    out["divisor"] = dv;
    out["zeros"] = zeros;
    out["tangent"] = p.tangent ? json(to_json(*p.tangent)) : json(nullptr);
    json choice = json::object();
    if (p.component == Component::F1) {
        auto h = higgs_from_point(p, cfg);
        for (std::size_t i = 0; i < kPoints; ++i)
            if (h.theta(cfg[i]).is_zero())
                choice[std::to_string(i + 1)] = h.flags[i].is_infinite() ? "upper" : "lower";
    }
    out["flagChoice"] = choice;
    return out;
}

FixedLocusPoint fixed_point_from_json(const json& j) {
    FixedLocusPoint p;
    const json& comp = require(j, "component", "fixed point");
    if (!comp.is_string()) fail_schema("component must be a string");
    std::string c = comp.get<std::string>();
    if (c == "F0") p.component = Component::F0;
    else if (c == "F1") p.component = Component::F1;
    else if (c == "NotFixed") p.component = Component::NotFixed;
    else if (c == "other") p.component = Component::Other;
    else fail_schema("unknown component '" + c + "'");
    auto ch = j.find("chart");
    if (ch != j.end()) {
        if (*ch == "top") p.chart = Chart::Top;
        else if (*ch == "bottom") p.chart = Chart::Bottom;
        else fail_schema("chart must be \"top\" or \"bottom\"");
    }
    if (p.component != Component::F1) return p;
    auto dv = j.find("divisor");
    if (dv != j.end() && !(dv->is_array() && dv->empty())) {
        auto items = fixed_list<3>(*dv, "divisor");
        for (auto& x : items) p.divisor.push_back(scalar_from_json(x, "divisor"));
    } else {
        auto zs = fixed_list<2>(require(j, "zeros", "fixed point"), "zeros");
        p.divisor = tau(point_from_json(zs[0], "zeros"), point_from_json(zs[1], "zeros"));
    }
    p.divisor = normalize_projective(p.divisor);
    auto t = j.find("tangent");
    if (t != j.end() && !t->is_null()) p.tangent = point_from_json(*t, "tangent");
    return p;
}

json to_json(const ChamberDescriptor& c) {
    json iv = json::array();
    for (const auto& w : c.intervals) {
        std::string eps;
        for (int e : w.eps) eps += e > 0 ? '+' : '-';
        iv.push_back({{"eps", eps}, {"lower", w.lower}, {"upper", w.lower + 2}});
    }
    return {{"d", c.d}, {"intervals", iv}};
}

json to_json(const FiberDimension& f) {
    return {{"before_gauge", f.before_gauge}, {"gauge_rank", f.gauge_rank}, {"dimension", f.dimension}};
}

} // namespace paramod::io
