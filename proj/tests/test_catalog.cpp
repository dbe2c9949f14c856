#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "spanforge/catalog.hpp"
#include "spanforge/errors.hpp"
#include "spanforge/io.hpp"
#include "spanforge/pullback.hpp"

using namespace spanforge;
using namespace spanforge::catalog;

TEST_CASE("finset generator: counts match the closed form") {
    auto f0 = finset_fixture(0);
    CHECK(f0.cat->object_count() == 1);
    CHECK(f0.cat->morphism_count() == 1);

    const auto& f2 = fixtures::finset02();
    CHECK(f2.cat->hom(*f2.cat->object_by_name("S2"), *f2.cat->object_by_name("S2")).size() == 4);

    // oracle: sum of n^m with 0^0 = 1, computed here independently
    auto hom_count = [](int m, int n) {
        if (m == 0) return std::uint64_t{1};
        std::uint64_t r = 1;
        for (int i = 0; i < m; ++i) r *= static_cast<std::uint64_t>(n);
        return r;
    };
    std::uint64_t expected = 0;
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) expected += hom_count(m, n);
    }
    CHECK(expected == 499);
    CHECK(fixtures::finset04().cat->morphism_count() == 499);

    CHECK_THROWS_AS((void)finset_spec(5), Error);
}

TEST_CASE("finsurj generator: surjections only, closed under composition") {
    auto surj = fixtures::finsurj12();
    CHECK(surj->object_count() == 2);
    CHECK(surj->morphism_count() == 4); // 1→1, 2→1, and the two bijections 2→2
    CHECK(enumerate_cospans(*surj).size() == 8);

    auto term = catalog::build(finsurj_spec({1}));
    CHECK(term->object_count() == 1);
    CHECK(term->morphism_count() == 1);

    CHECK_THROWS_AS((void)finsurj_spec({1, 5}), Error);
    CHECK_THROWS_AS((void)finsurj_spec({2, 2}), Error);
}

TEST_CASE("labeled topology enumeration: known counts and the exact 2-point list") {
    CHECK(enumerate_topologies(0).size() == 1);
    CHECK(enumerate_topologies(1).size() == 1);

    auto two = enumerate_topologies(2);
    REQUIRE(two.size() == 4);
    // hand-listed: discrete, {0} open, {1} open, indiscrete (lex order)
    CHECK(two[0] == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(two[1] == std::vector<std::uint32_t>{0, 1, 3});
    CHECK(two[2] == std::vector<std::uint32_t>{0, 2, 3});
    CHECK(two[3] == std::vector<std::uint32_t>{0, 3});

    CHECK(enumerate_topologies(3).size() == 29);
}

TEST_CASE("fintop(1): the empty space, the point, and three continuous maps") {
    auto fx = fintop_fixture(1);
    CHECK(fx.cat->object_count() == 2);
    CHECK(fx.cat->morphism_count() == 3); // two identities + empty→point
}

TEST_CASE("fintop(2): continuity filters functions the right way") {
    const auto& fx = fixtures::fintop2();
    ObjId discrete = *fx.cat->object_by_name("T2_0");
    ObjId sierp = *fx.cat->object_by_name("T2_1");
    ObjId indiscrete = *fx.cat->object_by_name("T2_3");
    // discrete source: everything is continuous
    CHECK(fx.cat->hom(discrete, sierp).size() == 4);
    // indiscrete source into discrete target: only the constants
    CHECK(fx.cat->hom(indiscrete, discrete).size() == 2);
}

TEST_CASE("poset generator: B2 has 4 objects and 9 morphisms; cycles rejected") {
    auto b2 = fixtures::b2();
    CHECK(b2->object_count() == 4);
    CHECK(b2->morphism_count() == 9); // 4 identities + bot≤a, bot≤b, bot≤top, a≤top, b≤top
    CHECK_THROWS_AS(
        (void)poset_spec("cyc", {"x", "y"}, {{"x", "y"}, {"y", "x"}}), Error);
}

TEST_CASE("group generator: Z2 valid, idempotent table rejected") {
    auto z2 = fixtures::z2();
    CHECK(z2->object_count() == 1);
    CHECK(z2->morphism_count() == 2);
    CHECK_THROWS_AS((void)group_spec("bad", {"e", "s"}, {{"e", "s"}, {"s", "s"}}), Error);
    CHECK_THROWS_AS((void)group_spec("bad", {"e", "s"}, {{"e", "s"}}), Error);
}

TEST_CASE("free category on one arrow: three morphisms; cycles hit the cap") {
    auto spec = free_spec("ARROW", {"x", "y"}, {{"arr", "x", "y"}}, 4);
    auto cat = catalog::build(spec);
    CHECK(cat->object_count() == 2);
    CHECK(cat->morphism_count() == 3);

    CHECK_THROWS_AS((void)free_spec("LOOP", {"x"}, {{"l", "x", "x"}}, 8), Error);
}

TEST_CASE("free category on a chain composes paths by concatenation") {
    auto cat = catalog::build(
        free_spec("CHAIN", {"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "z"}}, 4));
    CHECK(cat->morphism_count() == 6); // 3 identities, f, g, g∘f
    MorId f = *cat->morphism_by_name("p_f");
    MorId g = *cat->morphism_by_name("p_g");
    CHECK(cat->compose(f, g) == *cat->morphism_by_name("p_f_g"));
}

TEST_CASE("inclusion fixtures validate; identity inclusion is the identity functor") {
    const Functor& incl = fixtures::incl();
    CHECK(incl.source()->name() == "FINSURJ12");
    CHECK(incl.target()->name() == "FINSET04");

    auto b2 = fixtures::b2();
    Functor self = inclusion(b2, b2);
    for (std::uint32_t m = 0; m < b2->morphism_count(); ++m) {
        CHECK(self.apply(MorId{m}) == MorId{m});
    }
}

TEST_CASE("forgetful fintop(2) -> finset(2) is a valid functor") {
    Functor forget = forgetful_fintop_to_finset(fixtures::fintop2(), fixtures::finset02());
    CHECK(forget.source()->morphism_count() == fixtures::fintop2().cat->morphism_count());
    // spaces forget to their point sets
    CHECK(forget.target()->object_name(forget.apply(
              *fixtures::fintop2().cat->object_by_name("T2_1"))) == "S2");
}

TEST_CASE("hom functor out of Z2: the involution becomes the swap of a 2-element set") {
    Functor hom = hom_functor(fixtures::z2(), ObjId{0}, fixtures::finset04());
    auto z2 = fixtures::z2();
    CHECK(hom.target()->object_name(hom.apply(ObjId{0})) == "S2");
    MorId s = *z2->morphism_by_name("s");
    CHECK(hom.target()->morphism_name(hom.apply(s)) == "m2to2_10");
}

TEST_CASE("hom functor out of B2 base bot: constant at the singleton") {
    Functor hom = hom_functor(fixtures::b2(), *fixtures::b2()->object_by_name("bot"),
                              fixtures::finset04());
    for (std::uint32_t x = 0; x < fixtures::b2()->object_count(); ++x) {
        CHECK(hom.target()->object_name(hom.apply(ObjId{x})) == "S1");
    }
}

TEST_CASE("hom functor out of the terminal category: constant at S1") {
    Functor hom = hom_functor(fixtures::terminal(), ObjId{0}, fixtures::finset02());
    CHECK(hom.target()->object_name(hom.apply(ObjId{0})) == "S1");
}

TEST_CASE("hom functor raises when a hom set exceeds the target cap") {
    auto tiny = finset_fixture(1);
    CHECK_THROWS_AS((void)hom_functor(fixtures::z2(), ObjId{0}, tiny), Error);
}

TEST_CASE("fibered-product oracle on FINSET04: the four-element pullback apex") {
    const auto& fx = fixtures::finset04();
    MorId squash = *fx.cat->morphism_by_name("m2to1_00");
    Cospan c{squash, squash};
    CHECK(fibered_product_size(fx, c) == 4);
    Span oracle = fibered_product_oracle(fx, c);
    CHECK(fx.cat->object_name(apex(*fx.cat, oracle)) == "S4");
}

TEST_CASE("fibered-product oracle: identity cospans give the diagonal") {
    const auto& fx = fixtures::finset02();
    for (int n = 0; n <= 2; ++n) {
        ObjId x = *fx.cat->object_by_name(finset_object_name(n));
        MorId id = fx.cat->identity(x);
        Span oracle = fibered_product_oracle(fx, Cospan{id, id});
        CHECK(static_cast<int>(fx.object_size[apex(*fx.cat, oracle).index]) == n);
    }
}

TEST_CASE("fibered-product oracle overflows the cap loudly") {
    const auto& fx = fixtures::finset02();
    // cospan S2 → S1 ← S2 has a four-element fibered product; the cap is 2.
    MorId squash = *fx.cat->morphism_by_name("m2to1_00");
    CHECK_THROWS_AS((void)fibered_product_oracle(fx, Cospan{squash, squash}), Error);
}

TEST_CASE("fintop oracle: Sierpinski times the point carries the product topology") {
    const auto& fx = fixtures::fintop2();
    // legs: Sierpinski (open point 1) → point, and point → point
    ObjId sierp = *fx.cat->object_by_name("T2_2");
    ObjId pt = *fx.cat->object_by_name("T1_0");
    MorId to_pt = fx.cat->hom(sierp, pt).front();
    MorId id_pt = fx.cat->identity(pt);

    Span oracle = fibered_product_oracle(fx, Cospan{to_pt, id_pt});
    ObjId apex_obj = apex(*fx.cat, oracle);
    CHECK(fx.object_points[apex_obj.index] == 2);
    // elements in lex order: (0,0), (1,0); open sets of the product: ∅, {(1,0)}, X
    CHECK(fx.object_topology[apex_obj.index] == std::vector<std::uint32_t>{0, 2, 3});
    CHECK(is_pullback(*fx.cat, oracle, Cospan{to_pt, id_pt}));
}

TEST_CASE("fintop oracle: Sierpinski squared exceeds the point cap") {
    const auto& fx = fixtures::fintop2();
    ObjId sierp = *fx.cat->object_by_name("T2_2");
    MorId to_pt = fx.cat->hom(sierp, *fx.cat->object_by_name("T1_0")).front();
    CHECK_THROWS_AS((void)fibered_product_oracle(fx, Cospan{to_pt, to_pt}), Error);
}

TEST_CASE("oracle agreement: every in-cap fibered product is found by the engine") {
    const auto& fx = fixtures::finset02();
    for (Cospan c : enumerate_cospans(*fx.cat)) {
        auto pulls = find_pullbacks(*fx.cat, c);
        try {
            Span oracle = fibered_product_oracle(fx, c);
            CHECK(std::find(pulls.begin(), pulls.end(), oracle) != pulls.end());
            CHECK(same_class(*fx.cat, oracle, pulls.front()));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ApexExceedsCap);
        }
    }

    const auto& top = fixtures::fintop2();
    std::uint64_t oracle_hits = 0;
    for (Cospan c : enumerate_cospans(*top.cat)) {
        auto pulls = find_pullbacks(*top.cat, c);
        try {
            Span oracle = fibered_product_oracle(top, c);
            oracle_hits++;
            CHECK(std::find(pulls.begin(), pulls.end(), oracle) != pulls.end());
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ApexExceedsCap);
        }
    }
    CHECK(oracle_hits > 100);
}

TEST_CASE("hom functors out of B2 preserve pullbacks (representable preservation)") {
    for (std::uint32_t b = 0; b < fixtures::b2()->object_count(); ++b) {
        Functor hom = hom_functor(fixtures::b2(), ObjId{b}, fixtures::finset04());
        CHECK(preserves_pullbacks(hom).verdict);
    }
}

TEST_CASE("the forgetful fintop(2) -> finset(2) functor preserves existing pullbacks") {
    Functor forget = forgetful_fintop_to_finset(fixtures::fintop2(), fixtures::finset02());
    auto report = preserves_pullbacks(forget);
    CHECK(report.verdict);
    CHECK(report.stat_value("vacuous_cospans") > 0); // truncation: some cospans have no pullback
}

TEST_CASE("generator output is deterministic") {
    CHECK(io::serialize(finsurj_spec({1, 2})) == io::serialize(finsurj_spec({1, 2})));
    CHECK(io::serialize(fintop_spec(2)) == io::serialize(fintop_spec(2)));
    auto a = finset_fixture(2);
    auto b = finset_fixture(2);
    CHECK(io::serialize(a.cat->to_spec()) == io::serialize(b.cat->to_spec()));
}

TEST_CASE("negative tightness fixture validates as categories and functor") {
    const auto& fx = fixtures::negative();
    CHECK(fx.source->object_count() == 3);
    CHECK(fx.target->object_count() == 2);
    CHECK(fx.functor.source()->name() == "NEGSRC");
}

TEST_CASE("shipped fixture files are byte-identical to regenerated output") {
    const std::string dir = SPANFORGE_FIXTURES_DIR "/";
    CHECK(io::read_file(dir + "b2.json") == io::serialize(fixtures::b2()->to_spec()));
    CHECK(io::read_file(dir + "z2.json") == io::serialize(fixtures::z2()->to_spec()));
    CHECK(io::read_file(dir + "finsurj12.json") ==
          io::serialize(fixtures::finsurj12()->to_spec()));
    CHECK(io::read_file(dir + "finset02.json") ==
          io::serialize(fixtures::finset02().cat->to_spec()));
    CHECK(io::read_file(dir + "fintop1.json") ==
          io::serialize(fintop_fixture(1).cat->to_spec()));
    const auto& neg = fixtures::negative();
    CHECK(io::read_file(dir + "negsrc.json") == io::serialize(neg.source->to_spec()));
    CHECK(io::read_file(dir + "walkiso.json") == io::serialize(neg.target->to_spec()));
    // and the shipped functor files load against the shipped categories
    Functor negative = io::load_functor(dir + "negative.functor.json");
    CHECK(negative.source()->name() == "NEGSRC");
    Functor incl2 = io::load_functor(dir + "incl_finsurj12_finset02.functor.json");
    CHECK(incl2.target()->name() == "FINSET02");
    Functor hom = io::load_functor(dir + "z2_hom.functor.json");
    CHECK(hom.source()->name() == "Z2");
}
