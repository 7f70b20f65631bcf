// Command-line front end: arrangement files in, lattices, twisted Betti
// numbers, Condition A verdicts and intersection cohomology out.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hypic/examples.hpp"
#include "hypic/io.hpp"
#include "hypic/verdicts.hpp"

using namespace hypic;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInvalidInput = 2;
constexpr int kFails = 3;
constexpr int kUndetermined = 4;

struct Options {
    std::string input;
    std::string output;
    std::string backend = "both";
    std::string building = "minimal";
    std::string side = "both";
    std::string edge;
    bool json = false;
};

struct GenerateOptions {
    std::string name;
    std::size_t k = 2;
    std::size_t n = 4;
    std::uint64_t seed = 1;
    std::size_t dense_vertices = 1;
    bool resonant_vertex = false;
    std::string weights;
    std::string output;
};

WeightedArrangement load(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
        buf << in.rdbuf();
    }
    return parse_arrangement(buf.str());
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw Error(ErrorCode::MalformedInput, "cannot write " + o.output);
    out << text;
}

Backend parse_backend(const std::string& s) {
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    return Backend::Both;
}

std::vector<Side> parse_sides(const std::string& s) {
    if (s == "primary") return {Side::Primary};
    if (s == "dual") return {Side::Dual};
    return {Side::Primary, Side::Dual};
}

BuildingSet make_building(const WeightedArrangement& a, const std::string& s) {
    return building_set(a, s == "all-edges" ? BuildingPreset::AllEdges : BuildingPreset::Minimal);
}

std::string join(const std::vector<long long>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

json lattice_json(const WeightedArrangement& a) {
    auto poset = intersection_poset(a);
    annotate_density(a, poset);
    json flats = json::array();
    for (std::size_t i = 0; i < poset.flats.size(); ++i) {
        const auto& f = poset.flats[i];
        flats.push_back({{"flat", detail::closure_label(a, f.closure)},
                         {"codim", f.codim},
                         {"dense", f.dense},
                         {"weight_sum", format_rational(f.weight_sum)},
                         {"moebius", poset.moebius[i]}});
    }
    auto euler = euler_characteristic(a);
    return {{"flats", flats}, {"poincare", euler.poincare}, {"euler_characteristic", euler.chi}};
}

json dense_json(const WeightedArrangement& a) {
    json out = json::array();
    for (const auto& f : minimal_building_set(a).flats)
        out.push_back({{"flat", detail::closure_label(a, f.closure)},
                       {"codim", f.codim},
                       {"weight_sum", format_rational(f.weight_sum)}});
    return out;
}

json betti_json(const WeightedArrangement& a, const Options& o) {
    TwistedEngine engine(parse_backend(o.backend));
    json out{{"backend", o.backend}, {"euler_characteristic", euler_characteristic(a).chi}};
    for (auto side : parse_sides(o.side)) out[to_string(side)] = engine.betti(a, side).dims;
    return out;
}

int verdict_exit(const TheoremOneReport& r) {
    if (r.any(VerdictKind::Fails)) return kFails;
    return r.applicable ? kOk : kUndetermined;
}

std::string verdict_text(const TheoremOneReport& r, const std::vector<Side>& sides) {
    std::ostringstream out;
    out << "building set: " << to_string(r.building) << "\n";
    for (const auto& e : r.edges) {
        out << e.label << "  codim " << e.codim << "  a = " << format_rational(e.weight_sum);
        for (auto side : sides) {
            const auto& v = side == Side::Primary ? e.primary : e.dual;
            out << "  " << to_string(side) << ": " << to_string(v.kind);
            if (v.witness_degree) out << " (degree " << *v.witness_degree << " >= "
                                      << v.certificate.degrees[*v.witness_degree].lower << ")";
        }
        out << "\n";
    }
    out << "applicable: " << (r.applicable ? "yes" : "no") << "\n";
    if (r.ic_betti) {
        out << "ic_betti:";
        for (const auto& d : r.ic_betti->degrees) {
            if (d.exact)
                out << " " << d.lower;
            else
                out << " [" << d.lower << "," << (d.upper == kUnbounded ? std::string("?") : std::to_string(d.upper))
                    << "]";
        }
        out << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    return out.str();
}

IndexSet parse_edge(const WeightedArrangement& a, const std::string& labels) {
    IndexSet out;
    std::stringstream ss(labels);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bool found = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.hyperplanes[i].label == item) {
                out.push_back(i);
                found = true;
            }
        }
        if (!found) throw Error(ErrorCode::FlatNotInArrangement, "unknown hyperplane label " + item);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int run(const std::string& command, const Options& o) {
    auto a = load(o.input);
    const auto sides = parse_sides(o.side);
    if (command == "lattice") {
        auto j = lattice_json(a);
        if (o.json) {
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream out;
            for (const auto& f : j["flats"])
                out << (f["flat"].get<std::string>()) << "  codim " << f["codim"] << "  mu " << f["moebius"]
                    << (f["dense"].get<bool>() ? "  dense" : "") << "\n";
            out << "poincare: " << join(j["poincare"].get<std::vector<long long>>()) << "\n";
            out << "euler characteristic: " << j["euler_characteristic"] << "\n";
            emit(o, out.str());
        }
        return kOk;
    }
    if (command == "dense") {
        auto j = dense_json(a);
        if (o.json) {
            emit(o, json{{"dense", j}}.dump(2) + "\n");
        } else {
            std::ostringstream out;
            for (const auto& f : j)
                out << f["flat"].get<std::string>() << "  codim " << f["codim"] << "  weight_sum "
                    << f["weight_sum"].get<std::string>() << "\n";
            emit(o, out.str());
        }
        return kOk;
    }
    if (command == "betti") {
        auto j = betti_json(a, o);
        if (o.json) {
            emit(o, j.dump(2) + "\n");
        } else {
            std::ostringstream out;
            for (auto side : sides)
                out << to_string(side) << ": " << join(j[to_string(side)].get<std::vector<long long>>()) << "\n";
            emit(o, out.str());
        }
        return kOk;
    }

    ResolutionContext ctx(a, make_building(a, o.building));
    Assembler assembler(parse_backend(o.backend));
    if (command == "model") {
        json j = json::array();
        for (auto side : sides) {
            auto model = o.edge.empty() ? ctx.global() : *ctx.fiber(parse_edge(a, o.edge));
            j.push_back({{"side", to_string(side)}, {"model", model_to_json(a, model, side, assembler)}});
        }
        emit(o, j.dump(2) + "\n");
        return kOk;
    }
    if (command == "condition-a") {
        auto r = check_arrangement(ctx, assembler);
        emit(o, o.json ? to_json(r).dump(2) + "\n" : verdict_text(r, sides));
        return verdict_exit(r);
    }
    if (command == "ic") {
        auto r = ic_betti(ctx, assembler);
        emit(o, o.json ? to_json(r).dump(2) + "\n" : verdict_text(r, sides));
        return kOk;
    }
    // report
    auto r = check_arrangement(ctx, assembler);
    if (r.applicable) r.ic_betti = global_intervals(ctx, assembler, Side::Primary, true);
    json bundle{{"arrangement", to_json(a)},
                {"lattice", lattice_json(a)},
                {"dense", dense_json(a)},
                {"betti", betti_json(a, o)},
                {"condition_a", to_json(r)}};
    emit(o, bundle.dump(2) + "\n");
    return verdict_exit(r);
}

int generate(const GenerateOptions& g) {
    WeightedArrangement a;
    if (g.name == "example2") {
        a = examples::example2();
    } else if (g.name == "boolean") {
        a = examples::boolean(g.k);
    } else if (g.name == "concurrent-lines") {
        std::vector<Rational> w;
        std::stringstream ss(g.weights);
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(parse_rational(item));
        if (w.empty()) w.push_back(ratio(1, 2));
        a = examples::concurrent_lines(g.n, w);
    } else if (g.name == "example1-generic") {
        examples::Example1Options opt;
        opt.dense_vertices = g.dense_vertices;
        opt.resonant_vertex = g.resonant_vertex;
        a = examples::example1_generic(g.k, g.n, g.seed, opt);
    } else {
        throw Error(ErrorCode::MalformedInput, "unknown example " + g.name);
    }
    validate(a);
    Options o;
    o.output = g.output;
    emit(o, emit_arrangement(a));
    return kOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput:
        case ErrorCode::IntegerWeight:
        case ErrorCode::ProjectiveTotalNonintegral:
        case ErrorCode::DuplicateHyperplane:
        case ErrorCode::FlatNotInArrangement:
        case ErrorCode::FlatNotDenseNorInB:
        case ErrorCode::GenerationFailed:
            return kInvalidInput;
        case ErrorCode::ConditionAFailed:
            return kFails;
        case ErrorCode::ConditionAUndetermined:
            return kUndetermined;
        default:
            return kInternal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Condition A and intersection cohomology for weighted hyperplane arrangements"};
    app.require_subcommand(1);
    Options o;
    GenerateOptions g;

    for (auto [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"lattice", "intersection poset with Moebius values"},
             {"dense", "dense edges with weight sums"},
             {"betti", "twisted Betti numbers of the complement"},
             {"condition-a", "Condition A verdicts at every dense edge"},
             {"ic", "intersection cohomology Betti numbers when Condition A holds"},
             {"report", "everything above as one JSON document"},
             {"model", "stratified model of the global open set, or of a fiber with --edge"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", o.input, "arrangement JSON file, or - for stdin")->required();
        sub->add_option("-o,--output", o.output, "write to this file instead of stdout");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--backend", o.backend, "exact, float or both")
            ->check(CLI::IsMember({"exact", "float", "both"}));
        sub->add_option("--building-set", o.building, "minimal or all-edges")
            ->check(CLI::IsMember({"minimal", "all-edges"}));
        sub->add_option("--side", o.side, "primary, dual or both")->check(CLI::IsMember({"primary", "dual", "both"}));
        if (name == "model") sub->add_option("--edge", o.edge, "comma separated labels of the hyperplanes through the edge");
    }
    auto* gen = app.add_subcommand("generate", "write a built-in example arrangement");
    gen->add_option("name", g.name, "example2, boolean, concurrent-lines or example1-generic")
        ->required()
        ->check(CLI::IsMember({"example2", "boolean", "concurrent-lines", "example1-generic"}));
    gen->add_option("--k", g.k, "dimension");
    gen->add_option("--n", g.n, "number of hyperplanes");
    gen->add_option("--seed", g.seed, "random seed");
    gen->add_option("--dense-vertices", g.dense_vertices, "designated dense vertices");
    gen->add_flag("--resonant-vertex", g.resonant_vertex, "give the first dense vertex an integral weight sum");
    gen->add_option("--weights", g.weights, "comma separated weights for concurrent-lines");
    gen->add_option("-o,--output", g.output, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (gen->parsed()) return generate(g);
        for (auto* sub : app.get_subcommands()) return run(sub->get_name(), o);
    } catch (const Error& e) {
        std::cerr << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "INTERNAL"}, {"message", e.what()}}.dump() << "\n";
        return kInternal;
    }
    return kInternal;
}
