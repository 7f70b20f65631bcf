#pragma once

#include <future>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypic/resolution.hpp"

namespace hypic {

enum class VerdictKind { Holds, Fails, Vacuous, Undetermined };

inline const char* to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::Holds: return "HOLDS";
        case VerdictKind::Fails: return "FAILS";
        case VerdictKind::Vacuous: return "VACUOUS";
        default: return "UNDETERMINED";
    }
}

struct Verdict {
    VerdictKind kind = VerdictKind::Undetermined;
    std::size_t threshold = 0;  // vanishing is required in degrees above this
    BettiIntervalVector certificate;
    std::optional<std::size_t> witness_degree;  // degree of a certified nonzero group (FAILS)
};

/// Decides H^l(U~_x) = 0 for l > codim F - 1 from the assembled intervals.
inline Verdict decide(const OpenModel& fiber, BettiIntervalVector intervals) {
    Verdict v;
    v.threshold = fiber.codim - 1;
    v.certificate = std::move(intervals);
    if (fiber.empty) {
        v.kind = VerdictKind::Vacuous;
        return v;
    }
    bool all_zero = true;
    for (std::size_t l = v.threshold + 1; l < v.certificate.degrees.size(); ++l) {
        const auto& d = v.certificate.degrees[l];
        if (d.lower >= 1 && !v.witness_degree) v.witness_degree = l;
        all_zero = all_zero && d.upper == 0;
    }
    v.kind = v.witness_degree ? VerdictKind::Fails : all_zero ? VerdictKind::Holds : VerdictKind::Undetermined;
    return v;
}

inline Verdict check_edge(ResolutionContext& ctx, Assembler& assembler, const IndexSet& edge, Side side) {
    auto fiber = ctx.fiber(edge);
    return decide(*fiber, assemble_intervals(*fiber, side, assembler));
}

inline Verdict check_edge(const WeightedArrangement& a, const BuildingSet& b, const IndexSet& edge, Side side,
                          Backend backend = Backend::Both) {
    ResolutionContext ctx(a, b);
    Assembler assembler(backend);
    return check_edge(ctx, assembler, edge, side);
}

struct EdgeReport {
    IndexSet closure;
    std::string label;
    std::size_t codim = 0;
    Rational weight_sum;
    bool dense = false;
    Verdict primary;
    Verdict dual;
};

struct TheoremOneReport {
    BuildingPreset building = BuildingPreset::Minimal;
    std::vector<EdgeReport> edges;
    bool applicable = false;
    std::optional<BettiIntervalVector> ic_betti;
    std::vector<std::string> notes;

    bool any(VerdictKind k) const {
        for (const auto& e : edges)
            if (e.primary.kind == k || e.dual.kind == k) return true;
        return false;
    }
};

enum class EdgeScope { Dense, All };

/// Verdicts for both systems at every dense edge (or every edge of codim >= 2).
/// Rational weights give unitary systems, so the dual verdicts must repeat the
/// primary ones; they are computed independently and compared.
inline TheoremOneReport check_arrangement(ResolutionContext& ctx, Assembler& assembler,
                                          EdgeScope scope = EdgeScope::Dense) {
    TheoremOneReport report;
    report.building = ctx.building().preset;
    const auto& a = ctx.arrangement();
    std::vector<const Flat*> edges;
    for (const auto& f : ctx.poset().flats)
        if (scope == EdgeScope::All ? f.codim >= 2 : f.dense) edges.push_back(&f);

    std::vector<std::future<std::pair<Verdict, Verdict>>> jobs;
    for (const auto* f : edges)
        jobs.push_back(std::async(std::launch::async, [&ctx, &assembler, f] {
            return std::pair{check_edge(ctx, assembler, f->closure, Side::Primary),
                             check_edge(ctx, assembler, f->closure, Side::Dual)};
        }));
    report.applicable = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [primary, dual] = jobs[i].get();
        const auto* f = edges[i];
        EdgeReport e;
        e.closure = f->closure;
        e.label = detail::closure_label(a, f->closure);
        e.codim = f->codim;
        e.weight_sum = f->weight_sum;
        e.dense = f->dense;
        bool same = primary.kind == dual.kind && primary.certificate.degrees.size() == dual.certificate.degrees.size();
        for (std::size_t l = 0; same && l < primary.certificate.degrees.size(); ++l)
            same = primary.certificate.degrees[l].lower == dual.certificate.degrees[l].lower &&
                   primary.certificate.degrees[l].upper == dual.certificate.degrees[l].upper;
        if (!same) throw Error(ErrorCode::DualMismatch, "primary and dual verdicts differ at " + e.label);
        e.primary = std::move(primary);
        e.dual = std::move(dual);
        for (const auto* v : {&e.primary, &e.dual})
            report.applicable = report.applicable && (v->kind == VerdictKind::Holds || v->kind == VerdictKind::Vacuous);
        report.edges.push_back(std::move(e));
    }
    if (edges.empty()) report.notes.push_back("no edges to check; Condition A holds vacuously");
    for (const auto& f : ctx.building().flats) {
        auto fiber = ctx.fiber(f.closure);
        for (const auto& n : fiber->notes) report.notes.push_back(n);
    }
    return report;
}

inline TheoremOneReport check_arrangement(const WeightedArrangement& a, const BuildingSet& b,
                                          Backend backend = Backend::Both, EdgeScope scope = EdgeScope::Dense) {
    ResolutionContext ctx(a, b);
    Assembler assembler(backend);
    return check_arrangement(ctx, assembler, scope);
}

/// H*(U~; L~) assembled over the global model. When Condition A holds this is
/// the intersection cohomology of X, so Poincare duality (projective X) or
/// vanishing above the middle degree (affine X) is imposed on the candidates.
inline BettiIntervalVector global_intervals(ResolutionContext& ctx, Assembler& assembler, Side side,
                                            bool intersection_cohomology) {
    const auto& a = ctx.arrangement();
    auto model = ctx.global();
    auto range = assembler.range(model, side);
    std::string extra;
    if (intersection_cohomology && !range.boxed()) {
        const std::size_t k = a.dimension;
        if (a.space == Space::Projective) {
            range = range.filtered([](const std::vector<long long>& v) {
                for (std::size_t l = 0; l < v.size(); ++l)
                    if (v[l] != v[v.size() - 1 - l]) return false;
                return true;
            });
            extra = "; Poincare duality";
        } else {
            range = range.filtered([k](const std::vector<long long>& v) {
                for (std::size_t l = k + 1; l < v.size(); ++l)
                    if (v[l] != 0) return false;
                return true;
            });
            extra = "; vanishing above degree " + std::to_string(k);
        }
        if (range.empty())
            throw Error(ErrorCode::InconsistentBounds, "no candidate satisfies the intersection cohomology constraints");
    } else if (intersection_cohomology && range.boxed()) {
        if (a.space == Space::Projective) {
            range.symmetrize_box();
            extra = "; Poincare duality";
        } else {
            range.zero_above_box(a.dimension);
            extra = "; vanishing above degree " + std::to_string(a.dimension);
        }
        range.tighten_box(stratified_euler(model));
    }
    auto out = to_intervals(range, model);
    for (auto& d : out.degrees) d.provenance += extra;
    return out;
}

/// Verdicts plus, when Condition A holds, the intersection cohomology Betti intervals.
inline TheoremOneReport ic_betti(ResolutionContext& ctx, Assembler& assembler) {
    auto report = check_arrangement(ctx, assembler);
    if (report.any(VerdictKind::Fails))
        throw Error(ErrorCode::ConditionAFailed, "Condition A fails at some dense edge");
    if (!report.applicable)
        throw Error(ErrorCode::ConditionAUndetermined, "Condition A could not be decided at some dense edge");
    report.ic_betti = global_intervals(ctx, assembler, Side::Primary, true);
    return report;
}

inline TheoremOneReport ic_betti(const WeightedArrangement& a, const BuildingSet& b, Backend backend = Backend::Both) {
    ResolutionContext ctx(a, b);
    Assembler assembler(backend);
    return ic_betti(ctx, assembler);
}

struct CorollaryComparison {
    BettiIntervalVector first;
    BettiIntervalVector second;
    bool both_exact = false;
    bool agree = false;  // equal when both exact, overlapping otherwise
};

/// Compares intersection cohomology obtained from two building sets.
inline CorollaryComparison crosscheck_corollary(const WeightedArrangement& a, const BuildingSet& b1,
                                                const BuildingSet& b2, Backend backend = Backend::Both) {
    CorollaryComparison c;
    c.first = *ic_betti(a, b1, backend).ic_betti;
    c.second = *ic_betti(a, b2, backend).ic_betti;
    c.both_exact = c.first.all_exact() && c.second.all_exact();
    c.agree = c.first.degrees.size() == c.second.degrees.size();
    for (std::size_t l = 0; c.agree && l < c.first.degrees.size(); ++l) {
        const auto& x = c.first.degrees[l];
        const auto& y = c.second.degrees[l];
        c.agree = c.both_exact ? x.lower == y.lower : (x.lower <= y.upper && y.lower <= x.upper);
    }
    if (c.both_exact && !c.agree)
        throw Error(ErrorCode::CorollaryViolation, "building sets give different intersection cohomology");
    return c;
}

inline nlohmann::json to_json(const TheoremOneReport& r) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : r.edges) {
        edges.push_back({{"flat", e.label},
                         {"codim", e.codim},
                         {"weight_sum", format_rational(e.weight_sum)},
                         {"dense", e.dense},
                         {"verdict_primary", to_string(e.primary.kind)},
                         {"verdict_dual", to_string(e.dual.kind)},
                         {"threshold", e.primary.threshold},
                         {"intervals", to_json(e.primary.certificate)},
                         {"intervals_dual", to_json(e.dual.certificate)}});
    }
    nlohmann::json out{{"applicable", r.applicable}, {"edges", edges}, {"building_set", to_string(r.building)}};
    out["ic_betti"] = r.ic_betti ? to_json(*r.ic_betti) : nlohmann::json(nullptr);
    out["notes"] = r.notes;
    return out;
}

}  // namespace hypic
