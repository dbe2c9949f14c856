#include <benchmark/benchmark.h>

#include "spanforge/catalog.hpp"
#include "spanforge/pullback.hpp"
#include "spanforge/span.hpp"
#include "spanforge/span_category.hpp"

using namespace spanforge;

namespace {

const catalog::FinsetFixture& finset04() {
    static const auto fx = catalog::finset_fixture(4);
    return fx;
}

void BM_ValidateFinset04(benchmark::State& state) {
    auto spec = catalog::finset_spec(4);
    for (auto _ : state) {
        ValidationReport report;
        auto cat = FiniteCategory::validate(spec, report);
        benchmark::DoNotOptimize(cat);
    }
}
BENCHMARK(BM_ValidateFinset04)->Unit(benchmark::kMillisecond);

void BM_PairedSpans_SquashCospan(benchmark::State& state) {
    const auto& fx = finset04();
    Cospan c{*fx.cat->morphism_by_name("m2to1_00"), *fx.cat->morphism_by_name("m2to1_00")};
    for (auto _ : state) {
        auto spans = paired_spans(*fx.cat, c, SearchBudget{~0ull});
        benchmark::DoNotOptimize(spans);
    }
}
BENCHMARK(BM_PairedSpans_SquashCospan);

void BM_FindPullbacks_SquashCospan(benchmark::State& state) {
    const auto& fx = finset04();
    Cospan c{*fx.cat->morphism_by_name("m2to1_00"), *fx.cat->morphism_by_name("m2to1_00")};
    for (auto _ : state) {
        auto pulls = find_pullbacks(*fx.cat, c, SearchBudget{~0ull});
        benchmark::DoNotOptimize(pulls);
    }
}
BENCHMARK(BM_FindPullbacks_SquashCospan);

void BM_Canonicalize_Finset04(benchmark::State& state) {
    const auto& fx = finset04();
    MorId left = *fx.cat->morphism_by_name("m4to2_0011");
    MorId right = *fx.cat->morphism_by_name("m4to2_0101");
    for (auto _ : state) {
        Span canon = canonicalize(*fx.cat, Span{left, right});
        benchmark::DoNotOptimize(canon);
    }
}
BENCHMARK(BM_Canonicalize_Finset04);

void BM_HasPullbacks_B2(benchmark::State& state) {
    auto b2 = catalog::b2_lattice();
    for (auto _ : state) {
        auto report = has_pullbacks(*b2, SearchBudget{~0ull});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_HasPullbacks_B2);

void BM_HasPullbacks_Finsurj12(benchmark::State& state) {
    auto surj = catalog::build(catalog::finsurj_spec({1, 2}));
    for (auto _ : state) {
        auto report = has_pullbacks(*surj, SearchBudget{~0ull});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_HasPullbacks_Finsurj12);

void BM_SpanTight_Incl(benchmark::State& state) {
    Functor incl = catalog::incl_finsurj12_finset04();
    for (auto _ : state) {
        auto report = is_span_tight(incl, SearchBudget{~0ull});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_SpanTight_Incl)->Unit(benchmark::kMillisecond);

void BM_CheckLaws_SpanZ2(benchmark::State& state) {
    auto z2 = catalog::z2_group();
    SpanCategory sc = build_span_category(Functor::identity(z2), SearchBudget{~0ull});
    for (auto _ : state) {
        auto report = check_category_laws(sc, LawCheckConfig{}, SearchBudget{~0ull});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_CheckLaws_SpanZ2);

void BM_GenFintop2(benchmark::State& state) {
    for (auto _ : state) {
        auto spec = catalog::fintop_spec(2);
        benchmark::DoNotOptimize(spec);
    }
}
BENCHMARK(BM_GenFintop2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
