#include <gtest/gtest.h>

#include "hypic/examples.hpp"
#include "hypic/resolution.hpp"

using namespace hypic;

namespace {

IndexSet all_of(const WeightedArrangement& a) {
    IndexSet s;
    for (std::size_t i = 0; i < a.size(); ++i) s.push_back(i);
    return s;
}

/// Complement of a central arrangement's projectivization, computed by
/// sending hyperplane `at` to infinity: the chart {c_at . x = 1} is affine.
WeightedArrangement dehomogenize(const WeightedArrangement& central, std::size_t at) {
    const std::size_t n = central.vector_dimension();
    const RVector& c = central.hyperplanes[at].coeffs;
    std::size_t j = 0;
    while (c[j] == 0) ++j;
    // Parametrize {c . x = 1} by the coordinates other than j.
    WeightedArrangement out;
    out.dimension = n - 1;
    for (std::size_t i = 0; i < central.size(); ++i) {
        if (i == at) continue;
        const auto& h = central.hyperplanes[i];
        Rational r = h.coeffs[j] / c[j];
        Hyperplane g;
        for (std::size_t l = 0; l < n; ++l)
            if (l != j) g.coeffs.push_back(h.coeffs[l] - r * c[l]);
        g.offset = r;
        g.weight = h.weight;
        g.label = h.label;
        out.hyperplanes.push_back(g);
    }
    return out;
}

}  // namespace

TEST(BuildingSet, Presets) {
    auto e2 = examples::example2();
    auto b = minimal_building_set(e2);
    ASSERT_EQ(b.flats.size(), 5u);
    EXPECT_EQ(b.flats.front().closure, all_of(e2));
    for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(b.flats[i].codim, 2u);
    EXPECT_TRUE(minimal_building_set(examples::boolean(3)).flats.empty());
    auto c = minimal_building_set(examples::concurrent_lines(3, {ratio(1, 5)}));
    ASSERT_EQ(c.flats.size(), 1u);
    EXPECT_EQ(c.flats[0].closure, (IndexSet{0, 1, 2}));
    auto all = all_edges_building_set(e2);
    EXPECT_EQ(all.flats.size(), 8u);  // 7 lines and the origin
    EXPECT_EQ(all.flats.front().closure, all_of(e2));
}

TEST(BuildingSet, CustomValidation) {
    auto e2 = examples::example2();
    auto dense = minimal_building_set(e2);
    std::vector<IndexSet> closures;
    for (const auto& f : dense.flats) closures.push_back(f.closure);
    EXPECT_EQ(custom_building_set(e2, closures).flats.size(), 5u);
    closures.pop_back();
    EXPECT_THROW(custom_building_set(e2, closures), Error);
    // The origin of the boolean arrangement is a product of two lines: its
    // factors are hyperplanes, so it may be added on its own.
    EXPECT_EQ(custom_building_set(examples::boolean(2), {{0, 1}}).flats.size(), 1u);
    // Hyperplanes are never members.
    EXPECT_THROW(custom_building_set(examples::boolean(2), {{0}}), Error);
}

TEST(Divisors, Components) {
    auto e2 = examples::example2();
    auto d = divisor_components(e2, minimal_building_set(e2));
    ASSERT_EQ(d.size(), 11u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(d[i].kind, DivisorComponent::Kind::ProperTransform);
        EXPECT_TRUE(d[i].kept_in_Dtilde);
    }
    for (std::size_t i = 6; i < 11; ++i) {
        EXPECT_EQ(d[i].kind, DivisorComponent::Kind::Exceptional);
        EXPECT_EQ(d[i].weight, 0);
        EXPECT_FALSE(d[i].kept_in_Dtilde);
    }
    auto fifths = examples::concurrent_lines(3, {ratio(1, 5)});
    EXPECT_TRUE(divisor_components(fifths, minimal_building_set(fifths)).back().kept_in_Dtilde);
    auto thirds = examples::concurrent_lines(3, {ratio(1, 3)});
    EXPECT_FALSE(divisor_components(thirds, minimal_building_set(thirds)).back().kept_in_Dtilde);
}

TEST(FiberModel, Example2Origin) {
    auto e2 = examples::example2();
    auto m = fiber_model(e2, minimal_building_set(e2), all_of(e2));
    EXPECT_FALSE(m.empty);
    EXPECT_EQ(m.dimension, 2u);
    EXPECT_EQ(m.base.dimension, 2u);
    EXPECT_EQ(m.base.size(), 6u);
    EXPECT_EQ(m.removed_hyperplanes.size(), 6u);
    EXPECT_TRUE(m.removed_exceptionals.empty());
    ASSERT_EQ(m.children.size(), 4u);
    for (const auto& c : m.children) {
        EXPECT_EQ(c.factor.dimension, 0u);
        EXPECT_EQ(c.fiber->base.dimension, 1u);
        EXPECT_EQ(c.fiber->base.size(), 3u);
        EXPECT_TRUE(c.fiber->children.empty());
        EXPECT_EQ(c.complex_dimension(), 1u);
    }
    EXPECT_TRUE(m.complete);
}

TEST(FiberModel, TripleLineAndEmptyAndErrors) {
    auto e2 = examples::example2();
    auto b = minimal_building_set(e2);
    auto line = fiber_model(e2, b, b.flats[1].closure);
    EXPECT_EQ(line.base.dimension, 1u);
    EXPECT_EQ(line.base.size(), 3u);
    EXPECT_TRUE(line.children.empty());

    auto fifths = examples::concurrent_lines(3, {ratio(1, 5)});
    EXPECT_TRUE(fiber_model(fifths, minimal_building_set(fifths), {0, 1, 2}).empty);

    auto boolean = examples::boolean(2);
    try {
        fiber_model(boolean, minimal_building_set(boolean), {0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FlatNotDenseNorInB);
    }
    auto crossing = fiber_model(boolean, all_edges_building_set(boolean), {0, 1});
    EXPECT_FALSE(crossing.empty);
    EXPECT_EQ(crossing.base.size(), 2u);
}

TEST(StratumBetti, ProjectiveLines) {
    WeightedArrangement p1;
    p1.dimension = 1;
    p1.space = Space::Projective;
    p1.hyperplanes = {examples::detail::plane({1, 0}, ratio(1, 3), "a"), examples::detail::plane({0, 1}, ratio(1, 3), "b"),
                      examples::detail::plane({1, 1}, ratio(-2, 3), "c")};
    EXPECT_EQ(stratum_betti(p1, Side::Primary).dims, (std::vector<long long>{0, 1, 0}));
    p1.hyperplanes.pop_back();
    p1.hyperplanes[0].weight = ratio(1, 2);
    p1.hyperplanes[1].weight = ratio(-1, 2);
    EXPECT_EQ(stratum_betti(p1, Side::Primary).dims, (std::vector<long long>{0, 0, 0}));
    WeightedArrangement point;
    point.space = Space::Projective;
    EXPECT_EQ(stratum_betti(point, Side::Primary).dims, (std::vector<long long>{1}));
}

TEST(StratumBetti, Example2BaseMatchesAffineChart) {
    auto e2 = examples::example2();
    auto m = fiber_model(e2, minimal_building_set(e2), all_of(e2));
    auto base = stratum_betti(m.base, Side::Primary);
    auto chart = twisted_betti_affine(dehomogenize(e2, 0), Side::Primary, Backend::Both);
    ASSERT_EQ(chart.dims.size(), 3u);
    EXPECT_EQ(base.dims, (std::vector<long long>{chart.dims[0], chart.dims[1], chart.dims[2], 0, 0}));
    EXPECT_EQ(base.dims, (std::vector<long long>{0, 1, 3, 0, 0}));
}

TEST(BettiRange, GysinPointInLine) {
    // C = C^* u {0} with constant coefficients.
    auto m = gysin(BettiRange::exact({1, 1, 0}), BettiRange::exact({1}));
    EXPECT_EQ(m.points(), (std::set<std::vector<long long>>{{1, 0, 0}, {1, 1, 1}}));
    auto k = kunneth(BettiRange::exact({1, 1, 0}), BettiRange::exact({1, 2, 1}));
    EXPECT_EQ(*k.points().begin(), (std::vector<long long>{1, 3, 3, 1, 0}));
}

TEST(BettiRange, BoxFallbackIsSound) {
    // 100 residue choices each; the disjoint union exceeds the cap and is boxed.
    auto w = BettiRange::exact({0, 99, 99, 0, 0});
    auto z = BettiRange::exact({0, 99, 0});
    auto m = gysin(w, z);
    ASSERT_EQ(m.points().size(), 100u);
    auto both = disjoint_sum(m, m);
    ASSERT_TRUE(both.boxed());
    auto lo = both.lower(), hi = both.upper();
    for (const auto& p : m.points())
        for (const auto& q : m.points())
            for (std::size_t l = 0; l < p.size(); ++l) {
                EXPECT_LE(lo[l], p[l] + q[l]);
                EXPECT_GE(hi[l], p[l] + q[l]);
            }
    // Boxed Gysin bounds still contain the enumerated points.
    auto again = gysin(both, BettiRange::exact({0, 3, 0}));
    auto alo = again.lower(), ahi = again.upper();
    EXPECT_LE(alo[3], 0);
    EXPECT_GE(ahi[3], 3);
    EXPECT_GE(ahi[2], 2 * 99);
    auto tight = both;
    tight.tighten_box(0);
    for (std::size_t l = 0; l < 5; ++l) EXPECT_LE(tight.upper()[l] - tight.lower()[l], hi[l] - lo[l]);
}

TEST(Assembly, EmptyAndDepthOne) {
    auto fifths = examples::concurrent_lines(3, {ratio(1, 5)});
    auto empty = assemble_intervals(fiber_model(fifths, minimal_building_set(fifths), {0, 1, 2}), Side::Primary);
    EXPECT_TRUE(empty.all_exact());
    EXPECT_EQ(empty.values(), (std::vector<long long>{0, 0, 0}));

    auto e2 = examples::example2();
    auto b = minimal_building_set(e2);
    auto line = fiber_model(e2, b, b.flats[1].closure);
    auto iv = assemble_intervals(line, Side::Primary);
    EXPECT_TRUE(iv.all_exact());
    EXPECT_EQ(iv.values(), stratum_betti(line.base, Side::Primary).dims);
    EXPECT_EQ(iv.values(), (std::vector<long long>{0, 1, 0}));
}

TEST(Assembly, Example2OriginDegreeThree) {
    auto e2 = examples::example2();
    auto m = fiber_model(e2, minimal_building_set(e2), all_of(e2));
    auto w = stratum_betti(m.base, Side::Primary).dims;
    auto iv = assemble_intervals(m, Side::Primary);
    ASSERT_EQ(iv.degrees.size(), 5u);
    const auto& d3 = iv.degrees[3];
    EXPECT_EQ(d3.lower, std::max(0LL, 4 - w[2]));
    EXPECT_EQ(d3.upper, 4);
    EXPECT_GE(d3.lower, 1);
    EXPECT_LE(d3.lower, 1);
    EXPECT_EQ(iv.degrees[4].upper, 0);
    EXPECT_EQ(iv.euler, stratified_euler(m));
    EXPECT_EQ(iv.euler, 2 - 4);
    auto dual = assemble_intervals(m, Side::Dual);
    for (std::size_t l = 0; l < 5; ++l) {
        EXPECT_EQ(dual.degrees[l].lower, iv.degrees[l].lower);
        EXPECT_EQ(dual.degrees[l].upper, iv.degrees[l].upper);
    }
}

TEST(GlobalModel, NormalCrossingAndExample1) {
    auto boolean = examples::boolean(2);
    auto g = global_open_model(boolean, minimal_building_set(boolean));
    EXPECT_TRUE(g.children.empty());
    auto iv = assemble_intervals(g, Side::Primary);
    EXPECT_TRUE(iv.all_exact());
    auto u = twisted_betti_affine(boolean, Side::Primary, Backend::Both).dims;
    u.resize(5, 0);
    EXPECT_EQ(iv.values(), u);

    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto a = examples::example1_generic(2, 5, seed);
        auto b = minimal_building_set(a);
        auto model = global_open_model(a, b);
        bool vertex_integral = is_integer(weight_sum(a, b.flats.front()));
        EXPECT_EQ(model.children.size(), vertex_integral ? 1u : 0u);
        if (!vertex_integral) {
            auto exact = assemble_intervals(model, Side::Primary);
            EXPECT_TRUE(exact.all_exact());
            auto twisted = twisted_betti(a, Side::Primary, Backend::Both).dims;
            twisted.resize(5, 0);
            EXPECT_EQ(exact.values(), twisted);
        }
    }
    examples::Example1Options resonant;
    resonant.resonant_vertex = true;
    auto a = examples::example1_generic(2, 5, 7, resonant);
    auto model = global_open_model(a, minimal_building_set(a));
    ASSERT_EQ(model.children.size(), 1u);
    EXPECT_EQ(model.children[0].factor.dimension, 0u);
    EXPECT_EQ(model.children[0].fiber->base.dimension, 1u);
}

TEST(Assembly, EulerAdditivityOnRandomInstances) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        examples::Example1Options opt;
        opt.resonant_vertex = seed % 2 == 0;
        auto a = examples::example1_generic(2, 6, seed, opt);
        for (auto preset : {BuildingPreset::Minimal, BuildingPreset::AllEdges}) {
            ResolutionContext ctx(a, building_set(a, preset));
            Assembler assembler;
            auto g = ctx.global();
            auto iv = assemble_intervals(g, Side::Primary, assembler);
            // Each kept vertex of P^2 adds a point times P^1 minus its lines.
            long long chi = euler_characteristic(a).chi;
            for (const auto& f : ctx.building().flats)
                if (is_integer(f.weight_sum)) chi += 2 - static_cast<long long>(f.closure.size());
            EXPECT_EQ(iv.euler, chi);
            if (iv.all_exact()) {
                long long s = 0;
                for (std::size_t l = 0; l < iv.degrees.size(); ++l) s += l % 2 ? -iv.degrees[l].lower : iv.degrees[l].lower;
                EXPECT_EQ(s, iv.euler);
            }
            for (const auto& f : ctx.building().flats) {
                auto fiber = ctx.fiber(f.closure);
                EXPECT_EQ(fiber->empty, !is_integer(f.weight_sum));
                EXPECT_LE(fiber->dimension, f.codim - 1);
                for (const auto& c : fiber->children) EXPECT_LE(c.complex_dimension(), fiber->dimension - 1);
            }
        }
    }
}

TEST(ModelDump, Json) {
    auto e2 = examples::example2();
    ResolutionContext ctx(e2, minimal_building_set(e2));
    Assembler assembler;
    auto j = model_to_json(e2, *ctx.fiber(all_of(e2)), Side::Primary, assembler);
    EXPECT_EQ(j["strata"].size(), 4u);
    EXPECT_EQ(j["removed_proper_transforms"].size(), 6u);
    EXPECT_EQ(j["intervals"].size(), 5u);
}
