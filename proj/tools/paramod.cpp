#include "paramod/commands.hpp"
#include "paramod/error.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace {

using paramod::io::json;

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
    const char* v = std::getenv("PARAMOD_LOG");
    if (!v) return LogLevel::quiet;
    std::string s(v);
    if (s == "debug" || s == "2") return LogLevel::debug;
    if (s == "info" || s == "1") return LogLevel::info;
    return LogLevel::quiet;
}

int exit_code(paramod::ErrorKind k) {
    switch (k) {
    case paramod::ErrorKind::schema: return 2;
    case paramod::ErrorKind::precondition: return 3;
    case paramod::ErrorKind::internal: return 4;
    }
    return 4;
}

const char* kind_name(paramod::ErrorKind k) {
    switch (k) {
    case paramod::ErrorKind::schema: return "schema";
    case paramod::ErrorKind::precondition: return "precondition";
    case paramod::ErrorKind::internal: return "internal";
    }
    return "internal";
}

json load_payload(const std::string& path) {
    std::ifstream in(path);
    if (!in) paramod::fail_schema("cannot open payload file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        paramod::fail_schema(std::string("payload is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) paramod::fail_schema("payload must be a JSON object");
    return j;
}

struct Invocation {
    std::string command;
    std::map<std::string, std::string> flags;
    std::string payload;
    std::string out;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with rank-2 parabolic structures and logarithmic connections on five marked points"};
    app.require_subcommand(1);
    Invocation inv;

    struct Sub {
        const char* name;
        const char* help;
        std::vector<std::pair<const char*, const char*>> extra;
    };
    const std::vector<Sub> subs{
        {"classify", "stratum label and quotient coordinates of a structure", {}},
        {"stability", "stability report for a structure and weight", {}},
        {"counts", "number of orbits on Bprime", {}},
        {"chamber", "wall intervals of a weight", {}},
        {"stabilizing-weight", "a weight making a stratum stable", {{"stratum", "stratum label, e.g. U2 or Ui(3)"}}},
        {"elm", "elementary transformation at one point", {{"j", "point index 1..5"}}},
        {"mc", "rank-3 spectrum of the middle convolution",
         {{"sigma", "branch signs, e.g. +-+++"}, {"betaV", "five rationals"}}},
        {"charpoly", "evaluate the pentagon character polynomial", {{"x", "five rationals"}}},
        {"solve", "connection space for a structure and spectrum", {}},
        {"limit", "C*-limit of a flat triple (payload: solve output)", {}},
        {"fiber", "fiber dimension over a fixed point (payload: limit output)", {}},
        {"tables", "CSV tables", {{"suite", "orbits | special-loci | chambers | fibers"}}},
        {"batch", "run {\"requests\": [{\"command\", \"args\"}]} from the payload", {}},
    };
    const std::vector<std::pair<const char*, const char*>> common{
        {"bundle", "B or Bprime"},
        {"z", "marked points, comma separated"},
        {"u", "flags, comma separated (inf allowed)"},
        {"w", "weights, comma separated"},
        {"nu", "eigenvalue pairs a:b, comma separated"},
        {"d", "bundle degree"},
    };

    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        auto bind = [&](const char* key, const char* help) {
            sub->add_option(std::string("--") + key, inv.flags[key], help);
        };
        for (const auto& [k, h] : common) bind(k, h);
        for (const auto& [k, h] : s.extra) bind(k, h);
        sub->add_option("--json", inv.payload, "JSON payload file");
        sub->add_option("--out", inv.out, "write the result here instead of stdout");
        sub->callback([&inv, name = std::string(s.name)] { inv.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const LogLevel level = log_level();
    const auto start = std::chrono::steady_clock::now();
    try {
        json args = inv.payload.empty() ? json::object() : load_payload(inv.payload);
        // Flags typed on the command line override the payload.
        for (const auto& [k, v] : inv.flags)
            if (!v.empty()) args[k] = v;
        if (level == LogLevel::debug) std::cerr << "paramod: args " << args.dump() << "\n";

        std::string text;
        if (inv.command == "tables") {
            auto it = args.find("suite");
            if (it == args.end() || !it->is_string()) paramod::fail_schema("tables needs --suite");
            text = paramod::emit_table(it->get<std::string>(), args);
        } else {
            text = paramod::run_command(inv.command, args).dump() + "\n";
        }

        if (inv.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(inv.out, std::ios::binary);
            if (!f) paramod::fail_schema("cannot write '" + inv.out + "'");
            f << text;
        }
        if (level != LogLevel::quiet) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            std::cerr << "paramod: " << inv.command << " ok in " << ms.count() << " ms\n";
        }
        return 0;
    } catch (const paramod::Error& e) {
        json err{{"error", kind_name(e.kind())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
}
