#include <doctest.h>

#include "fixtures.hpp"
#include "spanforge/catalog.hpp"
#include "spanforge/category.hpp"
#include "spanforge/errors.hpp"

using namespace spanforge;

namespace {

CategorySpec z2_raw() {
    CategorySpec spec;
    spec.name = "Z2raw";
    spec.objects = {"*"};
    spec.morphisms = {{"e", "*", "*"}, {"s", "*", "*"}};
    spec.identities = {{"*", "e"}};
    spec.compositions = {{"e", "e", "e"}, {"e", "s", "s"}, {"s", "e", "s"}, {"s", "s", "e"}};
    return spec;
}

bool has_issue(const ValidationReport& report, IssueKind kind) {
    for (const auto& issue : report.issues) {
        if (issue.kind == kind) return true;
    }
    return false;
}

} // namespace

TEST_CASE("terminal category validates: one object, one morphism") {
    auto cat = fixtures::terminal();
    CHECK(cat->object_count() == 1);
    CHECK(cat->morphism_count() == 1);
    CHECK(cat->is_identity(MorId{0}));
}

TEST_CASE("empty category is legal and vacuously valid") {
    CategorySpec spec;
    spec.name = "EMPTY";
    ValidationReport report;
    auto cat = FiniteCategory::validate(spec, report);
    REQUIRE(report.ok);
    CHECK(cat->object_count() == 0);
    CHECK(cat->morphism_count() == 0);
}

TEST_CASE("Z2 fixture validates and composes as a group") {
    ValidationReport report;
    auto cat = FiniteCategory::validate(z2_raw(), report);
    REQUIRE(report.ok);
    MorId e = *cat->morphism_by_name("e");
    MorId s = *cat->morphism_by_name("s");
    CHECK(cat->compose(s, s) == e); // involution
    CHECK(cat->compose(e, s) == s);
    CHECK(cat->compose(s, e) == s); // identity laws
    CHECK(cat->hom(ObjId{0}, ObjId{0}).size() == 2);
}

TEST_CASE("the idempotent table s∘s = s is a valid category (a monoid), not a group") {
    // All eight associativity triples hold for the two-element idempotent
    // monoid, so category validation accepts it; the group generator is the
    // one that must reject it.
    CategorySpec spec = z2_raw();
    spec.compositions.back() = {"s", "s", "s"};
    ValidationReport report;
    auto cat = FiniteCategory::validate(spec, report);
    CHECK(report.ok);
    CHECK(cat != nullptr);
    CHECK_THROWS_AS(catalog::group_spec("bad", {"e", "s"}, {{"e", "s"}, {"s", "s"}}), Error);
}

TEST_CASE("a genuinely non-associative table is rejected with a witness triple") {
    CategorySpec spec;
    spec.name = "NONASSOC";
    spec.objects = {"*"};
    spec.morphisms = {{"e", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
    spec.identities = {{"*", "e"}};
    // (a·a)·a = b·a = e but a·(a·a) = a·b = a.
    auto entry = [](const char* f, const char* g, const char* h) {
        return CategorySpec::Composition{f, g, h};
    };
    spec.compositions = {entry("e", "e", "e"), entry("e", "a", "a"), entry("e", "b", "b"),
                         entry("a", "e", "a"), entry("b", "e", "b"), entry("a", "a", "b"),
                         entry("a", "b", "a"), entry("b", "a", "e"), entry("b", "b", "e")};
    ValidationReport report;
    auto cat = FiniteCategory::validate(spec, report);
    CHECK(cat == nullptr);
    CHECK(has_issue(report, IssueKind::AssociativityViolation));
}

TEST_CASE("missing and spurious composition entries are reported pairwise") {
    CategorySpec spec = z2_raw();
    spec.compositions.pop_back();
    ValidationReport report;
    CHECK(FiniteCategory::validate(spec, report) == nullptr);
    CHECK(has_issue(report, IssueKind::MissingComposite));

    spec = z2_raw();
    spec.compositions.push_back({"s", "s", "e"});
    ValidationReport report2;
    CHECK(FiniteCategory::validate(spec, report2) == nullptr);
    CHECK(has_issue(report2, IssueKind::DuplicateComposite));
}

TEST_CASE("dangling references and bad identities are reported") {
    CategorySpec spec = z2_raw();
    spec.morphisms.push_back({"t", "*", "nowhere"});
    ValidationReport report;
    CHECK(FiniteCategory::validate(spec, report) == nullptr);
    CHECK(has_issue(report, IssueKind::DanglingReference));

    spec = z2_raw();
    spec.identities = {{"*", "s"}}; // s is not a left/right unit
    ValidationReport report2;
    CHECK(FiniteCategory::validate(spec, report2) == nullptr);
    CHECK(has_issue(report2, IssueKind::BadIdentity));
}

TEST_CASE("compose rejects non-composable pairs") {
    auto cat = fixtures::b2();
    MorId bot_a = *cat->morphism_by_name("le_bot_a");
    CHECK_THROWS_AS((void)cat->compose(bot_a, bot_a), Error);
}

TEST_CASE("FINSET04 composition follows the function tables") {
    const auto& fx = fixtures::finset04();
    // constant 1→2 at value 0, then the unique 2→1 map: the unique 1→1 map.
    MorId first = *fx.cat->morphism_by_name("m1to2_0");
    MorId then = *fx.cat->morphism_by_name("m2to1_00");
    CHECK(fx.cat->compose(first, then) == *fx.cat->morphism_by_name("m1to1_0"));
    CHECK(fx.cat->hom(*fx.cat->object_by_name("S2"), *fx.cat->object_by_name("S2")).size() == 4);
}

TEST_CASE("hom sets partition the morphisms by (src, tgt)") {
    for (auto cat : {fixtures::z2(), fixtures::b2(), fixtures::finset02().cat}) {
        std::size_t covered = 0;
        for (std::uint32_t a = 0; a < cat->object_count(); ++a) {
            for (std::uint32_t b = 0; b < cat->object_count(); ++b) {
                for (MorId m : cat->hom(ObjId{a}, ObjId{b})) {
                    CHECK(cat->src(m) == ObjId{a});
                    CHECK(cat->tgt(m) == ObjId{b});
                    covered++;
                }
            }
        }
        CHECK(covered == cat->morphism_count());
    }
}

TEST_CASE("B2 poset: incomparable objects have empty hom sets") {
    auto cat = fixtures::b2();
    CHECK(cat->hom(*cat->object_by_name("a"), *cat->object_by_name("b")).empty());
    CHECK(cat->hom(*cat->object_by_name("b"), *cat->object_by_name("a")).empty());
}

TEST_CASE("invert: identities, involutions, non-isos") {
    auto z2 = fixtures::z2();
    MorId e = *z2->morphism_by_name("e");
    MorId s = *z2->morphism_by_name("s");
    CHECK(z2->inverse(e) == e);
    CHECK(z2->inverse(s) == s);
    CHECK(z2->inverse(*z2->inverse(s)) == s);

    const auto& fx = fixtures::finset04();
    MorId squash = *fx.cat->morphism_by_name("m2to1_00");
    // oracle: exhaust hom(S1, S2) candidates by hand
    for (MorId g : fx.cat->hom(*fx.cat->object_by_name("S1"), *fx.cat->object_by_name("S2"))) {
        bool left = fx.cat->compose(squash, g) ==
                    fx.cat->identity(*fx.cat->object_by_name("S2"));
        CHECK_FALSE(left);
    }
    CHECK_FALSE(fx.cat->inverse(squash).has_value());
}

TEST_CASE("iso lists match the inverse table") {
    for (auto cat : {fixtures::z2(), fixtures::b2(), fixtures::finsurj12()}) {
        std::size_t isos = 0;
        for (std::uint32_t a = 0; a < cat->object_count(); ++a) {
            for (MorId f : cat->isos_out_of(ObjId{a})) {
                CHECK(cat->src(f) == ObjId{a});
                CHECK(cat->is_iso(f));
                isos++;
            }
        }
        std::size_t expected = 0;
        for (std::uint32_t m = 0; m < cat->morphism_count(); ++m) {
            if (cat->inverse(MorId{m})) expected++;
        }
        CHECK(isos == expected);
    }
}

TEST_CASE("identity functor validates on any category") {
    for (auto cat : {fixtures::z2(), fixtures::b2()}) {
        ValidationReport report;
        FunctorSpec spec = Functor::identity(cat).to_spec();
        auto fun = Functor::validate(spec, cat, cat, report);
        CHECK(report.ok);
        CHECK(fun.has_value());
    }
}

TEST_CASE("inclusion FINSURJ12 -> FINSET04 validates; tables embed") {
    const Functor& incl = fixtures::incl();
    auto sub = fixtures::finsurj12();
    MorId swap = *sub->morphism_by_name("m2to2_10");
    CHECK(incl.source()->morphism_name(swap) ==
          incl.target()->morphism_name(incl.apply(swap)));
}

TEST_CASE("a map breaking composite preservation is not a functor") {
    // Z2 -> Z3 sending the involution to a generator: F(s∘s) = F(e) = 0 but
    // F(s)∘F(s) = 2.
    auto z2 = fixtures::z2();
    auto z3 = catalog::build(catalog::group_spec(
        "Z3", {"g0", "g1", "g2"},
        {{"g0", "g1", "g2"}, {"g1", "g2", "g0"}, {"g2", "g0", "g1"}}));
    FunctorSpec spec;
    spec.name = "bad";
    spec.object_map = {{"*", "*"}};
    spec.morphism_map = {{"e", "g0"}, {"s", "g1"}};
    ValidationReport report;
    auto fun = Functor::validate(spec, z2, z3, report);
    CHECK_FALSE(fun.has_value());
    CHECK(has_issue(report, IssueKind::NotAFunctor));
}

TEST_CASE("functor application commutes with composition over the whole table") {
    const Functor& incl = fixtures::incl();
    const FiniteCategory& src = *incl.source();
    const FiniteCategory& dst = *incl.target();
    for (std::uint32_t f = 0; f < src.morphism_count(); ++f) {
        MorId fm{f};
        for (MorId g : src.out_of(src.tgt(fm))) {
            CHECK(incl.apply(src.compose(fm, g)) == dst.compose(incl.apply(fm), incl.apply(g)));
        }
    }
}

TEST_CASE("associativity is re-checkable by a second pass over validated categories") {
    for (auto cat : {fixtures::z2(), fixtures::finsurj12(), fixtures::b2()}) {
        for (std::uint32_t f = 0; f < cat->morphism_count(); ++f) {
            MorId fm{f};
            for (MorId g : cat->out_of(cat->tgt(fm))) {
                MorId gf = cat->compose(fm, g);
                for (MorId h : cat->out_of(cat->tgt(g))) {
                    CHECK(cat->compose(gf, h) == cat->compose(fm, cat->compose(g, h)));
                }
            }
        }
    }
}
