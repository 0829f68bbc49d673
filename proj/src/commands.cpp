#include "paramod/commands.hpp"

#include "paramod/error.hpp"

#include <functional>
#include <map>
#include <set>

namespace paramod {

using io::json;

namespace {

const json& need(const json& args, const char* key) {
    auto it = args.find(key);
    if (it == args.end() || it->is_null()) fail_schema(std::string("missing argument \"") + key + "\"");
    return *it;
}

bool has(const json& args, const char* key) {
    auto it = args.find(key);
    return it != args.end() && !it->is_null();
}

MarkedConfiguration config_arg(const json& args) { return io::config_from_json(need(args, "z")); }

MarkedConfiguration config_or_default(const json& args) {
    if (has(args, "z")) return config_arg(args);
    return MarkedConfiguration({Scalar(0), Scalar(1), Scalar(2), Scalar(3), Scalar(4)});
}

ParabolicStructure structure_arg(const json& args) {
    if (has(args, "structure")) return io::structure_from_json(args.at("structure"));
    return io::structure_from_json(args);
}

SpectrumRank2 spectrum_arg(const json& args) {
    if (has(args, "spectrum")) return io::spectrum_from_json(args.at("spectrum"));
    json s{{"d", need(args, "d")}, {"nu", need(args, "nu")}};
    return io::spectrum_from_json(s);
}

int int_arg(const json& args, const char* key) {
    const json& v = need(args, key);
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        Scalar s = io::scalar_from_json(v, key);
        if (s.is_integer()) return static_cast<int>(s.re().get_num().get_si());
    }
    fail_schema(std::string(key) + " must be an integer");
}

std::size_t point_index_arg(const json& args) {
    int j = int_arg(args, "j");
    if (j < 1 || j > static_cast<int>(kPoints)) fail_schema("j must be a point index 1..5");
    return static_cast<std::size_t>(j - 1);
}

std::string string_arg(const json& args, const char* key) {
    const json& v = need(args, key);
    if (!v.is_string()) fail_schema(std::string(key) + " must be a string");
    return v.get<std::string>();
}

// A non-special degree-1 spectrum used when a table needs one.
SpectrumRank2 default_spectrum() {
    std::array<std::pair<Scalar, Scalar>, kPoints> pairs;
    Scalar acc(0);
    for (long i = 0; i < static_cast<long>(kPoints); ++i) {
        pairs[i] = {Scalar(1, 3 + 2 * i), Scalar(-1, 7 + i)};
        acc += pairs[i].first + pairs[i].second;
    }
    pairs[kPoints - 1].second -= acc + Scalar(1);
    return SpectrumRank2::make(pairs, 1);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out += ',';
        out += csv_field(fields[k]);
    }
    return out + "\n";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
    return out;
}

std::string flags_str(const ParabolicStructure& L) {
    std::vector<std::string> parts;
    for (const auto& p : L.u) parts.push_back(p.str());
    return join(parts, " ");
}

json cmd_classify(const json& args) {
    auto cfg = config_arg(args);
    auto L = structure_arg(args);
    auto s = classify(L, cfg);
    json coords = json::array();
    for (const auto& c : s.coords) coords.push_back(io::to_json(c));
    return {{"stratum", s.label()}, {"coords", coords}, {"bundle", L.bundle.name()}, {"decomposable", s.decomposable}};
}

json cmd_stabilizing_weight(const json& args) {
    std::string bundle = has(args, "bundle") ? string_arg(args, "bundle") : std::string("B");
    std::string label = has(args, "stratum") ? string_arg(args, "stratum") : string_arg(args, "label");
    auto s = StratumId::parse_label(bundle, label);
    return {{"bundle", bundle}, {"stratum", label}, {"w", io::weight_to_json(stabilizing_weight(s))}};
}

json cmd_stability(const json& args) {
    auto cfg = config_arg(args);
    auto L = structure_arg(args);
    auto w = io::weight_from_json(need(args, "w"));
    return io::to_json(is_stable(L, cfg, w));
}

json cmd_counts(const json& args) {
    auto cfg = config_arg(args);
    std::string bundle = has(args, "bundle") ? string_arg(args, "bundle") : std::string("Bprime");
    if (!BundleType::parse(bundle).is_Bprime())
        fail_precondition("orbit counts are finite only on Bprime; B has continuous moduli");
    std::set<std::string> labels;
    for (const auto& L : bprime_orbit_representatives()) labels.insert(classify(L, cfg).label());
    return {{"orbits", labels.size()}};
}

json cmd_chamber(const json& args) {
    auto w = io::weight_from_json(need(args, "w"));
    return io::to_json(chamber_classify(w, int_arg(args, "d")));
}

json cmd_elm(const json& args) {
    std::size_t j = point_index_arg(args);
    json out{{"j", j + 1}};
    bool any = false;
    if (has(args, "w")) {
        out["w"] = io::weight_to_json(elm_weight(io::weight_from_json(args.at("w")), j));
        any = true;
    }
    if (has(args, "triple")) {
        auto cfg = config_arg(args);
        out["triple"] = io::to_json(elm_triple(io::triple_from_json(args.at("triple")), cfg, j));
        any = true;
    } else {
        if (has(args, "spectrum") || has(args, "nu")) {
            out["spectrum"] = io::to_json(elm_spectrum(spectrum_arg(args), j));
            any = true;
        }
        if (has(args, "structure") || has(args, "u")) {
            auto cfg = config_arg(args);
            out["structure"] = io::to_json(elm_structure(structure_arg(args), cfg, j));
            any = true;
        }
    }
    if (!any) fail_schema("elm needs at least one of w, nu, u or triple");
    return out;
}

json cmd_mc(const json& args) {
    auto nu = spectrum_arg(args);
    auto branch = has(args, "branch") ? io::branch_from_json(args.at("branch")) : io::branch_from_json(args);
    return io::to_json(mc_spectrum(nu, branch));
}

json cmd_charpoly(const json& args) {
    auto xs = io::list_from_json(need(args, "x"), "x");
    if (xs.size() != kPoints) fail_schema("x needs five entries");
    std::array<Scalar, kPoints> v;
    for (std::size_t i = 0; i < kPoints; ++i) v[i] = io::scalar_from_json(xs[i], "x");
    return {{"value", io::to_json(character_poly(v[0], v[1], v[2], v[3], v[4]))}};
}

json cmd_solve(const json& args) {
    auto cfg = config_arg(args);
    auto L = structure_arg(args);
    auto nu = spectrum_arg(args);
    auto sp = solve_connection_space(L, cfg, nu);
    json z = json::array();
    for (const auto& x : cfg.points()) z.push_back(io::to_json(x));
    if (!sp) return {{"solvable", false}, {"z", z}};
    json basis = json::array();
    for (const auto& v : sp->space.basis) basis.push_back(io::to_json(connection_from_vector(L.bundle, v)));
    FlatTriple t{L, nu, connection_from_vector(L.bundle, sp->space.particular)};
    return {{"solvable", true},
            {"dimension", sp->dimension()},
            {"stabilizer_dimension", sp->stabilizer_dimension},
            {"dimension_mod_gauge", sp->dimension_mod_gauge()},
            {"z", z},
            {"triple", io::to_json(t)},
            {"basis", basis}};
}

json cmd_limit(const json& args) {
    auto cfg = config_arg(args);
    auto t = io::triple_from_json(need(args, "triple"));
    auto check = validate_triple(t, cfg);
    if (!check.valid) fail_precondition("triple is invalid: " + check.violations.front());
    auto w = io::weight_from_json(need(args, "w"));
    auto lim = cstar_limit(t, cfg, w);
    json cands = json::array();
    for (const auto& c : lim.candidates) cands.push_back({{"name", c.name}, {"stable", c.stable}});
    json z = json::array();
    for (const auto& x : cfg.points()) z.push_back(io::to_json(x));
    return {{"candidate", lim.candidate},
            {"higgs", io::to_json(lim.higgs)},
            {"point", io::to_json(lim.point, cfg)},
            {"candidates", cands},
            {"z", z},
            {"spectrum", io::to_json(t.nu)}};
}

json cmd_fiber(const json& args) {
    auto cfg = config_arg(args);
    auto p = io::fixed_point_from_json(need(args, "point"));
    auto nu = spectrum_arg(args);
    return io::to_json(fiber_dimension(p, cfg, nu));
}

json cmd_tables(const json& args) { return {{"csv", emit_table(string_arg(args, "suite"), args)}}; }

json cmd_batch(const json& args) {
    const json& reqs = need(args, "requests");
    if (!reqs.is_array()) fail_schema("requests must be an array");
    json results = json::array();
    for (const auto& r : reqs) {
        if (!r.is_object()) fail_schema("each request must be an object");
        std::string name = string_arg(r, "command");
        if (name == "batch") fail_schema("batch requests cannot nest");
        json a = r.contains("args") ? r.at("args") : json::object();
        try {
            results.push_back({{"ok", true}, {"result", run_command(name, a)}});
        } catch (const Error& e) {
            const char* kind = e.kind() == ErrorKind::schema ? "schema"
                               : e.kind() == ErrorKind::precondition ? "precondition"
                                                                     : "internal";
            results.push_back({{"ok", false}, {"error", {{"kind", kind}, {"message", e.what()}}}});
        }
    }
    return {{"results", results}};
}

using Handler = std::function<json(const json&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h{
        {"classify", cmd_classify},   {"stability", cmd_stability},
        {"counts", cmd_counts},       {"chamber", cmd_chamber},
        {"stabilizing-weight", cmd_stabilizing_weight},
        {"elm", cmd_elm},             {"mc", cmd_mc},
        {"charpoly", cmd_charpoly},   {"solve", cmd_solve},
        {"limit", cmd_limit},         {"fiber", cmd_fiber},
        {"tables", cmd_tables},       {"batch", cmd_batch},
    };
    return h;
}

// Walls of the arrangement met by the segment t -> alpha + t beta inside (0, 1).
std::pair<Scalar, Scalar> chamber_along_line(const WeightVector& alpha, const WeightVector& beta, int d,
                                             const Scalar& t0) {
    Scalar lo(0), hi(1);
    for (unsigned m = 0; m < (1u << kPoints); ++m) {
        Scalar a(d), b(0);
        for (std::size_t i = 0; i < kPoints; ++i) {
            int e = (m & (1u << i)) ? -1 : 1;
            a += Scalar(e) * alpha[i];
            b += Scalar(e) * beta[i];
        }
        if (b.is_zero()) continue;
        for (int k = -6; k <= 6; ++k) {
            Scalar t = (Scalar(2 * k) - a) / b;
            if (t < t0 && t > lo) lo = t;
            if (t > t0 && t < hi) hi = t;
        }
    }
    return {lo, hi};
}

std::string table_orbits(const json& args) {
    auto cfg = config_or_default(args);
    std::string out = csv_row({"label", "n_infinite", "decomposable", "representative"});
    std::set<std::string> seen;
    for (const auto& L : bprime_orbit_representatives()) {
        auto s = classify(L, cfg);
        if (!seen.insert(s.label()).second) continue;
        out += csv_row({s.label(), std::to_string(L.n_infinite()), s.decomposable ? "true" : "false", flags_str(L)});
    }
    return out;
}

std::string table_special_loci(const json& args) {
    auto cfg = config_or_default(args);
    auto loci = special_loci(cfg);
    std::string out = csv_row({"kind", "label", "c2", "c1", "c0"});
    for (const auto& p : loci.points)
        out += csv_row({"point", p.label, p.coords[0].str(), p.coords[1].str(), p.coords[2].str()});
    for (const auto& l : loci.lines)
        out += csv_row({"line", l.label, l.coords[0].str(), l.coords[1].str(), l.coords[2].str()});
    return out;
}

std::string table_chambers(const json& args) {
    auto cfg = config_or_default(args);
    auto fin = [](long v) { return ProjectivePoint::finite(Scalar(v)); };
    const auto inf = ProjectivePoint::infinity();

    struct Row {
        std::string label;
        ParabolicStructure rep;
        WeightVector beta;
    };
    WeightVector ones;
    ones.fill(Scalar(1));
    std::vector<Row> rows;
    rows.push_back({"U2", {BundleType::B(), {fin(1), fin(0), fin(0), fin(0), fin(0)}}, ones});
    rows.push_back({"Ui(1)", {BundleType::B(), {inf, fin(1), fin(0), fin(0), fin(0)}}, ones});
    // First small integer completion landing in the double-prime stratum.
    ParabolicStructure dp{BundleType::B(), {inf, inf, fin(0), fin(0), fin(0)}};
    for (long c = 1; c < 50 && classify(dp, cfg).family != StratumFamily::UijDoublePrime; ++c) dp.u[4] = fin(c);
    WeightVector b12 = ones;
    b12[1] = Scalar(-1);
    rows.push_back({"Uij''(1,2)", dp, b12});

    std::string out = csv_row({"stratum", "witness", "lower", "upper", "representative", "representative_stable"});
    for (const auto& r : rows) {
        auto s = classify(r.rep, cfg);
        if (s.label() != r.label) fail_internal("chamber representative classified as " + s.label());
        WeightVector w = stabilizing_weight(s);
        WeightVector alpha;
        for (std::size_t i = 0; i < kPoints; ++i) alpha[i] = r.beta[i].sign() < 0 ? Scalar(1) : Scalar(0);
        const Scalar t0 = w[0];
        auto [lo, hi] = chamber_along_line(alpha, r.beta, r.rep.bundle.degree(), t0);
        bool st = is_stable(r.rep, cfg, w).stable;
        out += csv_row({r.label, t0.str(), lo.str(), hi.str(), flags_str(r.rep), st ? "true" : "false"});
    }
    return out;
}

std::string table_fibers(const json& args) {
    auto cfg = config_or_default(args);
    auto nu = (has(args, "spectrum") || has(args, "nu")) ? spectrum_arg(args) : default_spectrum();

    // Two generic points off the marked ones.
    std::vector<ProjectivePoint> generic;
    for (long v = -1; generic.size() < 2; --v) {
        bool marked = false;
        for (const auto& z : cfg.points()) marked = marked || z == Scalar(v);
        if (!marked) generic.push_back(ProjectivePoint::finite(Scalar(v)));
    }
    auto z = [&](std::size_t i) { return ProjectivePoint::finite(cfg[i]); };
    std::vector<std::pair<std::string, FixedLocusPoint>> samples{
        {"F0", {Component::F0, Chart::Top, {}, {}}},
        {"interior", {Component::F1, Chart::Top, tau(generic[0], generic[1]), {}}},
        {"line top", {Component::F1, Chart::Top, tau(z(0), generic[0]), {}}},
        {"line bottom", {Component::F1, Chart::Bottom, tau(z(0), generic[0]), {}}},
        {"crossing top", {Component::F1, Chart::Top, tau(z(0), z(1)), {}}},
        {"crossing bottom", {Component::F1, Chart::Bottom, tau(z(0), z(1)), {}}},
        {"exceptional top", {Component::F1, Chart::Top, tau(z(0), z(0)), generic[0]}},
        {"exceptional bottom", {Component::F1, Chart::Bottom, tau(z(0), z(0)), generic[0]}},
        {"exceptional marked top", {Component::F1, Chart::Top, tau(z(0), z(0)), z(1)}},
        {"intersection top", {Component::F1, Chart::Top, tau(z(0), z(0)), z(0)}},
        {"intersection bottom", {Component::F1, Chart::Bottom, tau(z(0), z(0)), z(0)}},
    };
    std::string out =
        csv_row({"sample", "component", "chart", "divisor", "tangent", "before_gauge", "gauge_rank", "dimension"});
    for (const auto& [name, p] : samples) {
        auto fd = fiber_dimension(p, cfg, nu);
        std::vector<std::string> dv;
        for (const auto& x : p.divisor) dv.push_back(x.str());
        out += csv_row({name, component_name(p.component), chart_name(p.chart), join(dv, " "),
                        p.tangent ? p.tangent->str() : "", std::to_string(fd.before_gauge),
                        std::to_string(fd.gauge_rank), std::to_string(fd.dimension)});
    }
    return out;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

json run_command(const std::string& name, const json& args) {
    if (!args.is_object()) fail_schema("command arguments must be a JSON object");
    std::string key = name == "stabilizing_weight" ? "stabilizing-weight" : name;
    auto it = handlers().find(key);
    if (it == handlers().end()) fail_schema("unknown command '" + name + "'");
    return it->second(args);
}

std::string emit_table(const std::string& suite, const json& args) {
    if (suite == "orbits") return table_orbits(args);
    if (suite == "special-loci") return table_special_loci(args);
    if (suite == "chambers") return table_chambers(args);
    if (suite == "fibers") return table_fibers(args);
    fail_schema("unknown table suite '" + suite + "'");
}

std::vector<ParabolicStructure> bprime_orbit_representatives() {
    std::vector<ParabolicStructure> out;
    ParabolicStructure L{BundleType::Bprime(), {}};
    L.u.fill(ProjectivePoint::finite(0));
    out.push_back(L);
    L.u[0] = ProjectivePoint::finite(1);
    out.push_back(L);
    for (unsigned m = 1; m < (1u << kPoints); ++m) {
        for (std::size_t i = 0; i < kPoints; ++i)
            L.u[i] = (m & (1u << i)) ? ProjectivePoint::infinity() : ProjectivePoint::finite(Scalar(long(i) + 1));
        out.push_back(L);
    }
    return out;
}

} // namespace paramod
