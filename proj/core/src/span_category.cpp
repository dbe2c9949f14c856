#include "spanforge/span_category.hpp"

#include <algorithm>
#include <random>

#include "spanforge/errors.hpp"

namespace spanforge {

std::vector<Span> find_f_pullbacks(const Functor& fun, Cospan c, const SearchBudget& budget) {
    const FiniteCategory& src = *fun.source();
    const FiniteCategory& dst = *fun.target();
    if (!is_valid_cospan(src, c)) {
        raise(ErrorCode::InvalidInput, "not a cospan in the source category");
    }
    budget.require(count_paired_spans(src, c) + count_paired_spans(dst, apply(fun, c)),
                   "find_f_pullbacks");

    PullbackTester image_test(dst, apply(fun, c));
    std::vector<Span> result;
    for (Span s : paired_spans(src, c, SearchBudget{~0ull})) {
        if (image_test.test(apply(fun, s))) result.push_back(s);
    }
    return result; // paired_spans is already (left, right)-sorted
}

Span compose_along(const FiniteCategory& cat, Span s, Span p, Span q) {
    if (!is_valid_span(cat, s) || !is_valid_span(cat, p) || !is_valid_span(cat, q)) {
        raise(ErrorCode::InvalidInput, "compose_along arguments must be spans");
    }
    if (right_foot(cat, s) != left_foot(cat, q)) {
        raise(ErrorCode::FeetMismatch,
              "S_R = " + cat.object_name(right_foot(cat, s)) + " but Q_L = " +
                  cat.object_name(left_foot(cat, q)));
    }
    Cospan middle{s.right, q.left};
    if (!is_paired(cat, p, middle)) {
        raise(ErrorCode::NotPaired,
              describe(cat, p) + " is not paired with the middle " + describe(cat, middle));
    }
    return Span{cat.compose(p.left, s.left), cat.compose(p.right, q.right)};
}

CheckReport is_span_tight(const Functor& fun, const SearchBudget& budget) {
    const FiniteCategory& src = *fun.source();
    const FiniteCategory& dst = *fun.target();
    CheckReport report;
    report.verdict = true;

    auto cospans = enumerate_cospans(src, budget);
    std::uint64_t total = 0;
    for (Cospan c : cospans) {
        total += count_paired_spans(src, c) + count_paired_spans(dst, apply(fun, c));
    }
    budget.require(total, "is_span_tight");

    std::uint64_t with_fp = 0, without_fp = 0, pairs_checked = 0;
    std::uint64_t lifts_unique = 0, lifts_multiple = 0;
    std::string first_without;

    for (Cospan c : cospans) {
        auto fps = find_f_pullbacks(fun, c, SearchBudget{~0ull});
        if (fps.empty()) {
            without_fp++;
            if (first_without.empty()) first_without = describe(src, c);
            continue;
        }
        with_fp++;
        for (Span s : fps) {
            for (Span q : fps) {
                pairs_checked++;
                // Both images are pullbacks of F(c), so there is exactly one
                // span morphism between them and it is an isomorphism.
                auto down = span_morphisms(dst, apply(fun, s), apply(fun, q));
                if (down.size() != 1 || !dst.is_iso(down.front())) {
                    report.verdict = false;
                    report.fail("image_pair",
                                "images of two F-pullbacks of " + describe(src, c) +
                                    " do not admit exactly one connecting span isomorphism");
                    continue;
                }
                MorId phi = down.front();
                std::uint64_t lifts = 0;
                for (MorId psi : src.hom(apex(src, s), apex(src, q))) {
                    if (fun.apply(psi) == phi && is_span_isomorphism(src, psi, s, q)) lifts++;
                }
                if (lifts == 0) {
                    report.verdict = false;
                    if (!report.counterexample) {
                        report.fail("lift",
                                    "for " + describe(src, c) + ": the span isomorphism " +
                                        dst.morphism_name(phi) + " from the image of " +
                                        describe(src, s) + " to the image of " +
                                        describe(src, q) + " has no span-isomorphism preimage");
                    }
                } else if (lifts == 1) {
                    lifts_unique++;
                } else {
                    lifts_multiple++;
                }
            }
        }
    }

    if (without_fp > 0) {
        report.witnesses.push_back(
            {"no_f_pullback", first_without + " has no F-pullback in the truncated base"});
    }
    report.stat("cospans_total", cospans.size());
    report.stat("cospans_with_f_pullbacks", with_fp);
    report.stat("cospans_without_f_pullbacks", without_fp);
    report.stat("f_pullback_pairs_checked", pairs_checked);
    report.stat("lifts_unique", lifts_unique);
    report.stat("lifts_multiple", lifts_multiple);
    return report;
}

std::optional<std::size_t> SpanCategory::class_index(Span s) const {
    auto it = class_by_rep_.find(canonicalize(*base_, s));
    if (it == class_by_rep_.end()) return std::nullopt;
    return it->second;
}

const std::vector<Span>& SpanCategory::f_pullbacks(Cospan c) const {
    static const std::vector<Span> empty;
    auto it = f_pullbacks_.find(c);
    return it == f_pullbacks_.end() ? empty : it->second;
}

SpanClass SpanCategory::compose(const SpanClass& a, const SpanClass& b) const {
    if (source_of(a) != target_of(b)) {
        raise(ErrorCode::FeetMismatch,
              "source of [" + describe(*base_, a.representative) + "] is " +
                  base_->object_name(source_of(a)) + " but target of [" +
                  describe(*base_, b.representative) + "] is " +
                  base_->object_name(target_of(b)));
    }
    auto result = compose_representatives(a.representative, b.representative);
    if (!result) {
        raise(ErrorCode::NoFPullback,
              "middle cospan (" + base_->morphism_name(a.representative.right) + ", " +
                  base_->morphism_name(b.representative.left) +
                  ") has no F-pullback; composition undefined in the truncated base");
    }
    return *result;
}

std::optional<SpanClass> SpanCategory::compose_representatives(Span s, Span q) const {
    Cospan middle{s.right, q.left};
    const auto& fps = f_pullbacks(middle);
    if (fps.empty()) return std::nullopt;
    return SpanClass{canonicalize(*base_, compose_along(*base_, s, fps.front(), q))};
}

SpanCategory build_span_category(const Functor& fun, const SearchBudget& budget, bool force) {
    auto tight = is_span_tight(fun, budget);
    if (!tight.verdict && !force) {
        raise(ErrorCode::NotSpanTight,
              "functor '" + fun.name() + "' is not span tight: " +
                  (tight.counterexample ? tight.counterexample->detail : "(no witness)"));
    }

    SpanCategory sc;
    sc.base_ = fun.source();
    sc.functor_ = fun;
    const FiniteCategory& base = *sc.base_;

    std::uint64_t span_count = 0;
    for (std::uint32_t a = 0; a < base.object_count(); ++a) {
        std::uint64_t out = base.out_of(ObjId{a}).size();
        span_count += out * out;
    }
    budget.require(span_count, "build_span_category");

    for (std::uint32_t a = 0; a < base.object_count(); ++a) {
        for (MorId u : base.out_of(ObjId{a})) {
            for (MorId v : base.out_of(ObjId{a})) {
                Span canon = canonicalize(base, Span{u, v});
                sc.class_by_rep_.emplace(canon, 0);
            }
        }
    }
    // Classes ordered by the canonical (apex, left, right) key.
    for (const auto& entry : sc.class_by_rep_) sc.classes_.push_back(SpanClass{entry.first});
    std::sort(sc.classes_.begin(), sc.classes_.end(), [&](SpanClass x, SpanClass y) {
        return std::tuple(apex(base, x.representative), x.representative.left,
                          x.representative.right) <
               std::tuple(apex(base, y.representative), y.representative.left,
                          y.representative.right);
    });
    for (std::size_t i = 0; i < sc.classes_.size(); ++i) {
        sc.class_by_rep_[sc.classes_[i].representative] = i;
    }

    sc.identity_class_.assign(base.object_count(), 0);
    for (std::uint32_t x = 0; x < base.object_count(); ++x) {
        MorId id = base.identity(ObjId{x});
        sc.identity_class_[x] = *sc.class_index(Span{id, id});
    }

    auto cospans = enumerate_cospans(base, budget);
    std::uint64_t fp_total = 0;
    for (Cospan c : cospans) {
        fp_total += count_paired_spans(base, c) +
                    count_paired_spans(*fun.target(), apply(fun, c));
    }
    budget.require(fp_total, "build_span_category (F-pullback tables)");
    for (Cospan c : cospans) {
        sc.f_pullbacks_.emplace(c, find_f_pullbacks(fun, c, SearchBudget{~0ull}));
    }
    return sc;
}

namespace {

struct LawStats {
    std::uint64_t pairs_total = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t pairs_skipped = 0;
    std::uint64_t rep_instances_checked = 0;
    std::uint64_t rep_instances_skipped = 0;
    std::uint64_t units_checked = 0;
    std::uint64_t triples_total = 0;
    std::uint64_t triples_checked = 0;
    std::uint64_t triples_skipped = 0;
    std::uint64_t violations = 0;
};

void record_violation(CheckReport& report, LawStats& stats, const std::string& family,
                      const std::string& detail) {
    stats.violations++;
    report.verdict = false;
    report.witnesses.push_back({family, detail});
    if (!report.counterexample) report.counterexample = ReportEntry{family, detail};
}

} // namespace

CheckReport check_category_laws(const SpanCategory& sc, const LawCheckConfig& config,
                                const SearchBudget& budget) {
    const FiniteCategory& base = *sc.base();
    CheckReport report;
    report.verdict = true;
    LawStats stats;

    if (config.mode == LawCheckConfig::Mode::Sampled && config.sample_count == 0) {
        raise(ErrorCode::PreconditionFailed, "sampled mode requires a sample count and seed");
    }

    const auto& classes = sc.classes();
    std::vector<std::pair<std::size_t, std::size_t>> composable;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (sc.source_of(classes[i]) == sc.target_of(classes[j])) composable.emplace_back(i, j);
        }
    }
    stats.pairs_total = composable.size();

    // Budget preflight on the instance counts all four families will visit.
    {
        std::vector<std::uint64_t> member_counts(classes.size());
        for (std::size_t i = 0; i < classes.size(); ++i) {
            member_counts[i] = span_class_members(base, classes[i].representative).size();
        }
        std::uint64_t predicted = 2 * classes.size();
        for (auto [i, j] : composable) {
            predicted += sc.f_pullbacks(Cospan{classes[i].representative.right,
                                               classes[j].representative.left})
                             .size();
            predicted += config.mode == LawCheckConfig::Mode::Exhaustive
                             ? member_counts[i] * member_counts[j]
                             : config.sample_count;
            predicted += classes.size(); // associativity triples upper bound per pair
        }
        budget.require(predicted, "check_category_laws");
    }

    // Law family 1: the composite class does not depend on which F-pullback
    // of the middle cospan is used.
    for (auto [i, j] : composable) {
        Span s = classes[i].representative, q = classes[j].representative;
        const auto& fps = sc.f_pullbacks(Cospan{s.right, q.left});
        if (fps.empty()) {
            stats.pairs_skipped++;
            continue;
        }
        stats.pairs_checked++;
        Span baseline = canonicalize(base, compose_along(base, s, fps.front(), q));
        for (Span p : fps) {
            Span other = canonicalize(base, compose_along(base, s, p, q));
            if (other != baseline) {
                record_violation(report, stats, "p_independence",
                                 "composite of [" + describe(base, s) + "] and [" +
                                     describe(base, q) + "] differs along " + describe(base, p));
                break;
            }
        }
    }

    // Law family 2: the composite class does not depend on the chosen
    // representatives.
    std::mt19937_64 engine(config.seed);
    for (auto [i, j] : composable) {
        Span s = classes[i].representative, q = classes[j].representative;
        auto baseline = sc.compose_representatives(s, q);
        auto members_a = span_class_members(base, s);
        auto members_b = span_class_members(base, q);

        std::vector<std::pair<std::size_t, std::size_t>> instances;
        if (config.mode == LawCheckConfig::Mode::Exhaustive) {
            for (std::size_t x = 0; x < members_a.size(); ++x) {
                for (std::size_t y = 0; y < members_b.size(); ++y) instances.emplace_back(x, y);
            }
        } else {
            for (std::uint64_t k = 0; k < config.sample_count; ++k) {
                instances.emplace_back(engine() % members_a.size(), engine() % members_b.size());
            }
        }
        for (auto [x, y] : instances) {
            auto composite = sc.compose_representatives(members_a[x], members_b[y]);
            if (composite.has_value() != baseline.has_value()) {
                record_violation(report, stats, "representative_independence",
                                 "definedness of the composite differs between representatives "
                                 "of [" +
                                     describe(base, s) + "] and [" + describe(base, q) + "]");
                continue;
            }
            if (!composite) {
                stats.rep_instances_skipped++;
                continue;
            }
            stats.rep_instances_checked++;
            if (*composite != *baseline) {
                record_violation(report, stats, "representative_independence",
                                 "composite of " + describe(base, members_a[x]) + " and " +
                                     describe(base, members_b[y]) +
                                     " lands in a different class than the canonical composite");
            }
        }
    }

    // Law family 3: unit laws. The identity-span F-pullback (id_apex, s_R)
    // always exists, so a missing F-pullback here is a violation, never a
    // skip.
    for (const auto& cls : classes) {
        stats.units_checked += 2;
        try {
            if (sc.compose(cls, sc.identity_class(sc.source_of(cls))) != cls) {
                record_violation(report, stats, "unit",
                                 "[" + describe(base, cls.representative) +
                                     "]∘[identity] differs from the class itself");
            }
        } catch (const Error& e) {
            record_violation(report, stats, "unit",
                             "right unit composite undefined for [" +
                                 describe(base, cls.representative) + "]: " + e.what());
        }
        try {
            if (sc.compose(sc.identity_class(sc.target_of(cls)), cls) != cls) {
                record_violation(report, stats, "unit",
                                 "[identity]∘[" + describe(base, cls.representative) +
                                     "] differs from the class itself");
            }
        } catch (const Error& e) {
            record_violation(report, stats, "unit",
                             "left unit composite undefined for [" +
                                 describe(base, cls.representative) + "]: " + e.what());
        }
    }

    // Law family 4: associativity on composable triples.
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triples;
    for (auto [i, j] : composable) {
        for (std::size_t k = 0; k < classes.size(); ++k) {
            if (sc.source_of(classes[j]) == sc.target_of(classes[k])) triples.emplace_back(i, j, k);
        }
    }
    stats.triples_total = triples.size();
    bool sample_triples = config.mode == LawCheckConfig::Mode::Sampled ||
                          triples.size() > config.exhaustive_triple_threshold;
    std::vector<std::size_t> triple_order;
    if (sample_triples) {
        std::uint64_t want = config.mode == LawCheckConfig::Mode::Sampled
                                 ? config.sample_count
                                 : config.exhaustive_triple_threshold;
        for (std::uint64_t k = 0; k < want; ++k) triple_order.push_back(engine() % triples.size());
    } else {
        triple_order.resize(triples.size());
        for (std::size_t k = 0; k < triples.size(); ++k) triple_order[k] = k;
    }
    for (std::size_t idx : triple_order) {
        auto [i, j, k] = triples[idx];
        try {
            SpanClass ab = sc.compose(classes[i], classes[j]);
            SpanClass bc = sc.compose(classes[j], classes[k]);
            SpanClass left = sc.compose(ab, classes[k]);
            SpanClass right = sc.compose(classes[i], bc);
            stats.triples_checked++;
            if (left != right) {
                record_violation(report, stats, "associativity",
                                 "([A]∘[B])∘[C] ≠ [A]∘([B]∘[C]) for classes of " +
                                     describe(base, classes[i].representative) + ", " +
                                     describe(base, classes[j].representative) + ", " +
                                     describe(base, classes[k].representative));
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoFPullback) {
                stats.triples_skipped++;
            } else {
                throw;
            }
        }
    }

    report.stat("classes", classes.size());
    report.stat("composable_pairs", stats.pairs_total);
    report.stat("pairs_checked_p_independence", stats.pairs_checked);
    report.stat("pairs_skipped_no_f_pullback", stats.pairs_skipped);
    report.stat("rep_instances_checked", stats.rep_instances_checked);
    report.stat("rep_instances_skipped", stats.rep_instances_skipped);
    report.stat("units_checked", stats.units_checked);
    report.stat("triples_total", stats.triples_total);
    report.stat("triples_checked", stats.triples_checked);
    report.stat("triples_skipped_no_f_pullback", stats.triples_skipped);
    report.stat("sampled", sample_triples ? 1 : 0);
    report.stat("violations", stats.violations);
    return report;
}

CheckReport classic_equivalence(const FiniteCategory& cat, const SearchBudget& budget) {
    auto hp = has_pullbacks(cat, budget);
    if (!hp.verdict) {
        raise(ErrorCode::PreconditionFailed,
              "classic_equivalence requires a category with pullbacks; " +
                  (hp.counterexample ? hp.counterexample->detail : std::string("(no witness)")));
    }

    // The two routes share nothing past this point: the classic route uses
    // find_pullbacks directly, the generalized route goes through the
    // identity-functor span category.
    Functor idf = Functor::identity(
        std::shared_ptr<const FiniteCategory>(&cat, [](const FiniteCategory*) {}));
    SpanCategory sc = build_span_category(idf, budget);

    CheckReport report;
    report.verdict = true;
    std::uint64_t pairs = 0, cospans_compared = 0;

    for (Cospan c : enumerate_cospans(cat, SearchBudget{~0ull})) {
        cospans_compared++;
        auto classic = find_pullbacks(cat, c, SearchBudget{~0ull});
        auto general = find_f_pullbacks(idf, c, SearchBudget{~0ull});
        if (classic != general) {
            report.fail("cospan", "find_pullbacks and identity find_f_pullbacks differ on " +
                                      describe(cat, c));
        }
    }

    const auto& classes = sc.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (sc.source_of(classes[i]) != sc.target_of(classes[j])) continue;
            pairs++;
            Span s = classes[i].representative, q = classes[j].representative;
            auto pulls = find_pullbacks(cat, Cospan{s.right, q.left}, SearchBudget{~0ull});
            SpanClass classic{canonicalize(cat, compose_along(cat, s, pulls.front(), q))};
            SpanClass general = sc.compose(classes[i], classes[j]);
            if (classic != general) {
                report.fail("pair", "classic and generalized composites differ for classes of " +
                                        describe(cat, s) + " and " + describe(cat, q));
            }
        }
    }

    report.stat("cospans_compared", cospans_compared);
    report.stat("class_pairs_compared", pairs);
    return report;
}

} // namespace spanforge
