#include "spanforge/pullback.hpp"

#include <algorithm>
#include <atomic>
#include <optional>

#include "spanforge/errors.hpp"
#include "spanforge/parallel.hpp"

namespace spanforge {

namespace {

// Scratch for fiber counting, reused across calls on the same thread.
struct FiberScratch {
    std::vector<std::uint32_t> count_l;
    std::vector<std::uint32_t> count_r;
    std::vector<std::uint32_t> touched;

    void ensure(std::size_t n_mor) {
        if (count_l.size() < n_mor) {
            count_l.assign(n_mor, 0);
            count_r.assign(n_mor, 0);
        }
    }
};

FiberScratch& scratch() {
    thread_local FiberScratch s;
    return s;
}

} // namespace

std::uint64_t count_cospans(const FiniteCategory& cat) {
    std::uint64_t total = 0;
    for (std::uint32_t b = 0; b < cat.object_count(); ++b) {
        std::uint64_t in = cat.into(ObjId{b}).size();
        total += in * in;
    }
    return total;
}

std::vector<Cospan> enumerate_cospans(const FiniteCategory& cat, const SearchBudget& budget) {
    budget.require(count_cospans(cat), "enumerate_cospans");
    std::vector<Cospan> result;
    result.reserve(count_cospans(cat));
    for (std::uint32_t l = 0; l < cat.morphism_count(); ++l) {
        MorId lm{l};
        for (MorId rm : cat.into(cat.tgt(lm))) {
            result.push_back(Cospan{lm, rm});
        }
    }
    return result;
}

std::vector<std::uint64_t> paired_span_counts(const FiniteCategory& cat, Cospan c) {
    if (!is_valid_cospan(cat, c)) {
        raise(ErrorCode::InvalidInput, "not a cospan: targets differ");
    }
    const ObjId cl = left_foot(cat, c), cr = right_foot(cat, c);
    auto& buf = scratch();
    buf.ensure(cat.morphism_count());

    std::vector<std::uint64_t> counts(cat.object_count(), 0);
    for (std::uint32_t a = 0; a < cat.object_count(); ++a) {
        ObjId apex{a};
        const auto& hl = cat.hom(apex, cl);
        const auto& hr = cat.hom(apex, cr);
        if (hl.empty() || hr.empty()) continue;
        buf.touched.clear();
        for (MorId u : hl) {
            std::uint32_t w = cat.compose_unchecked(u, c.left).index;
            if (buf.count_l[w] == 0 && buf.count_r[w] == 0) buf.touched.push_back(w);
            buf.count_l[w]++;
        }
        for (MorId v : hr) {
            std::uint32_t w = cat.compose_unchecked(v, c.right).index;
            if (buf.count_l[w] == 0 && buf.count_r[w] == 0) buf.touched.push_back(w);
            buf.count_r[w]++;
        }
        std::uint64_t n = 0;
        for (std::uint32_t w : buf.touched) {
            n += static_cast<std::uint64_t>(buf.count_l[w]) * buf.count_r[w];
            buf.count_l[w] = 0;
            buf.count_r[w] = 0;
        }
        counts[a] = n;
    }
    return counts;
}

std::uint64_t count_paired_spans(const FiniteCategory& cat, Cospan c) {
    auto counts = paired_span_counts(cat, c);
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    return total;
}

std::vector<Span> paired_spans_with_apex(const FiniteCategory& cat, Cospan c, ObjId a) {
    const auto& hl = cat.hom(a, left_foot(cat, c));
    const auto& hr = cat.hom(a, right_foot(cat, c));
    std::vector<Span> result;
    if (hl.empty() || hr.empty()) return result;

    // Bucket right legs by their composite with c_R, then walk left legs.
    std::vector<std::pair<std::uint32_t, MorId>> buckets;
    buckets.reserve(hr.size());
    for (MorId v : hr) {
        buckets.emplace_back(cat.compose_unchecked(v, c.right).index, v);
    }
    std::stable_sort(buckets.begin(), buckets.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (MorId u : hl) {
        std::uint32_t w = cat.compose_unchecked(u, c.left).index;
        auto lo = std::lower_bound(buckets.begin(), buckets.end(), w,
                                   [](const auto& x, std::uint32_t k) { return x.first < k; });
        for (auto it = lo; it != buckets.end() && it->first == w; ++it) {
            result.push_back(Span{u, it->second});
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Span> paired_spans(const FiniteCategory& cat, Cospan c, const SearchBudget& budget) {
    budget.require(count_paired_spans(cat, c), "paired_spans");
    std::vector<Span> result;
    for (std::uint32_t a = 0; a < cat.object_count(); ++a) {
        auto part = paired_spans_with_apex(cat, c, ObjId{a});
        result.insert(result.end(), part.begin(), part.end());
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

// Epoch-stamped dedupe table, keyed by hom-set ranks: image spans of one
// apex live in hom(A, L) × hom(A, R), so a flat (rank_L, rank_R) grid
// suffices and nothing more than an epoch bump is needed between scans.
struct StampScratch {
    std::vector<std::uint64_t> stamp;
    std::uint64_t epoch = 0;

    std::uint64_t next(std::size_t size) {
        if (stamp.size() < size) stamp.resize(size, 0);
        return ++epoch;
    }
};

StampScratch& stamps() {
    thread_local StampScratch s;
    return s;
}

// Core of the universal-property check, assuming S paired with C and counts
// precomputed. For fixed apex A, a span morphism Φ: Q → S forces
// Q = (s_L∘Φ, s_R∘Φ), so "every paired span with apex A admits exactly one
// morphism to S" is equivalent to "Φ ↦ (s_L∘Φ, s_R∘Φ) is injective on
// hom(A, S_A) with image size counts[A]". Reports the first violating paired
// span when asked.
PullbackCheck check_universal(const FiniteCategory& cat, Span s, Cospan c,
                              const std::vector<std::uint64_t>& counts, bool want_witness) {
    const ObjId sa = apex(cat, s);
    auto& scratch = stamps();
    for (std::uint32_t a = 0; a < cat.object_count(); ++a) {
        ObjId from{a};
        const auto& h = cat.hom(from, sa);
        if (h.size() != counts[a]) {
            PullbackCheck fail{false, ""};
            if (want_witness) {
                // |hom(A, S_A)| < n_A: some paired span has no morphism to S;
                // > n_A: by pigeonhole some paired span has at least two.
                auto qs = paired_spans_with_apex(cat, c, from);
                for (Span q : qs) {
                    auto morphs = span_morphisms(cat, q, s);
                    if (morphs.size() != 1) {
                        fail.violation = describe(cat, q) + " admits " +
                                         std::to_string(morphs.size()) +
                                         " span morphisms to the candidate";
                        break;
                    }
                }
                if (fail.violation.empty()) {
                    fail.violation = "hom(" + cat.object_name(from) + ", " +
                                     cat.object_name(sa) + ") has " + std::to_string(h.size()) +
                                     " morphisms but " + std::to_string(counts[a]) +
                                     " paired spans";
                }
            }
            return fail;
        }
        if (h.empty()) continue;
        const std::size_t stride = cat.hom(from, cat.tgt(s.right)).size();
        const std::uint64_t epoch =
            scratch.next(cat.hom(from, cat.tgt(s.left)).size() * stride);
        for (MorId phi : h) {
            MorId il = cat.compose_unchecked(phi, s.left);
            MorId ir = cat.compose_unchecked(phi, s.right);
            std::size_t key = static_cast<std::size_t>(cat.hom_rank(il)) * stride +
                              cat.hom_rank(ir);
            if (scratch.stamp[key] == epoch) {
                PullbackCheck fail{false, ""};
                if (want_witness) {
                    fail.violation = describe(cat, Span{il, ir}) +
                                     " admits at least two span morphisms to the candidate";
                }
                return fail;
            }
            scratch.stamp[key] = epoch;
        }
    }
    return {true, ""};
}

} // namespace

PullbackCheck is_pullback_check(const FiniteCategory& cat, Span s, Cospan c,
                                const SearchBudget& budget) {
    if (!is_valid_span(cat, s)) raise(ErrorCode::InvalidInput, "not a span: sources differ");
    if (!is_paired(cat, s, c)) {
        return {false, describe(cat, s) + " is not paired with " + describe(cat, c)};
    }
    auto counts = paired_span_counts(cat, c);
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    budget.require(total, "is_pullback");
    return check_universal(cat, s, c, counts, true);
}

bool is_pullback(const FiniteCategory& cat, Span s, Cospan c, const SearchBudget& budget) {
    if (!is_valid_span(cat, s) || !is_paired(cat, s, c)) return false;
    auto counts = paired_span_counts(cat, c);
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    budget.require(total, "is_pullback");
    return check_universal(cat, s, c, counts, false).ok;
}

CheckReport is_pullback_report(const FiniteCategory& cat, Span s, Cospan c,
                               const SearchBudget& budget) {
    CheckReport report;
    auto counts = paired_span_counts(cat, c);
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    budget.require(total, "is_pullback");

    auto check = is_pullback_check(cat, s, c, budget);
    report.verdict = check.ok;
    if (check.ok) {
        report.witnesses.push_back(
            {"pullback", describe(cat, s) + " is a pullback of " + describe(cat, c)});
    } else {
        report.fail("paired_span", check.violation);
    }
    report.stat("paired_spans_examined", total);
    report.stat("cospans_examined", 1);
    return report;
}

std::vector<Span> find_pullbacks(const FiniteCategory& cat, Cospan c,
                                 const SearchBudget& budget) {
    auto counts = paired_span_counts(cat, c);
    std::uint64_t total = 0;
    for (auto n : counts) total += n;
    budget.require(total, "find_pullbacks");

    std::vector<Span> found;
    for (std::uint32_t x = 0; x < cat.object_count(); ++x) {
        ObjId candidate_apex{x};
        bool match = true;
        for (std::uint32_t a = 0; a < cat.object_count() && match; ++a) {
            match = cat.hom(ObjId{a}, candidate_apex).size() == counts[a];
        }
        if (!match) continue;
        for (Span s : paired_spans_with_apex(cat, c, candidate_apex)) {
            if (check_universal(cat, s, c, counts, false).ok) found.push_back(s);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

PullbackTester::PullbackTester(const FiniteCategory& cat, Cospan c)
    : cat_(cat), c_(c), counts_(paired_span_counts(cat, c)) {
    for (auto n : counts_) total_ += n;
}

bool PullbackTester::test(Span s) const {
    if (!is_valid_span(cat_, s) || !is_paired(cat_, s, c_)) return false;
    return check_universal(cat_, s, c_, counts_, false).ok;
}

CheckReport has_pullbacks(const FiniteCategory& cat, const SearchBudget& budget) {
    CheckReport report;
    auto cospans = enumerate_cospans(cat, budget);

    // Budget preflight over the whole sweep, computed before any search so the
    // outcome cannot depend on scheduling.
    std::vector<std::uint64_t> candidate_counts(cospans.size());
    parallel_chunks(cospans.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            candidate_counts[i] = count_paired_spans(cat, cospans[i]);
        }
    });
    std::uint64_t total = 0;
    for (auto n : candidate_counts) total += n;
    budget.require(total, "has_pullbacks");

    struct Failure {
        std::size_t index;
        std::string detail;
    };
    std::vector<std::optional<Failure>> chunk_failures(worker_count());
    std::atomic<std::uint64_t> pullbacks_found{0};
    std::atomic<std::uint64_t> cospans_without{0};

    parallel_chunks(cospans.size(), [&](std::size_t worker, std::size_t begin, std::size_t end) {
        std::optional<Failure>& failure = chunk_failures[worker];
        std::uint64_t local_found = 0, local_without = 0;
        for (std::size_t i = begin; i < end; ++i) {
            Cospan c = cospans[i];
            auto pulls = find_pullbacks(cat, c, SearchBudget{~0ull});
            if (pulls.empty()) {
                local_without++;
                if (!failure) {
                    failure = Failure{i, describe(cat, c) + " has no pullback"};
                }
                continue;
            }
            local_found += pulls.size();
            Span canon = canonicalize(cat, pulls.front());
            for (Span s : pulls) {
                if (canonicalize(cat, s) != canon) {
                    if (!failure || i < failure->index) {
                        failure = Failure{i, "pullbacks of " + describe(cat, c) +
                                                 " are not all span-isomorphic: " +
                                                 describe(cat, pulls.front()) + " vs " +
                                                 describe(cat, s)};
                    }
                    break;
                }
            }
        }
        pullbacks_found += local_found;
        cospans_without += local_without;
    });

    std::optional<Failure> first;
    for (const auto& f : chunk_failures) {
        if (f && (!first || f->index < first->index)) first = f;
    }
    report.verdict = !first.has_value();
    if (first) report.fail("cospan", first->detail);
    report.stat("cospans_examined", cospans.size());
    report.stat("candidate_spans_examined", total);
    report.stat("pullbacks_found", pullbacks_found.load());
    report.stat("cospans_without_pullback", cospans_without.load());
    return report;
}

CheckReport preserves_pullbacks(const Functor& fun, const SearchBudget& budget) {
    CheckReport report;
    const FiniteCategory& src = *fun.source();
    const FiniteCategory& dst = *fun.target();
    auto cospans = enumerate_cospans(src, budget);

    std::vector<std::uint64_t> candidate_counts(cospans.size());
    parallel_chunks(cospans.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            candidate_counts[i] = count_paired_spans(src, cospans[i]) +
                                  count_paired_spans(dst, apply(fun, cospans[i]));
        }
    });
    std::uint64_t total = 0;
    for (auto n : candidate_counts) total += n;
    budget.require(total, "preserves_pullbacks");

    struct Failure {
        std::size_t index;
        std::string detail;
    };
    std::vector<std::optional<Failure>> chunk_failures(worker_count());
    std::atomic<std::uint64_t> vacuous{0};
    std::atomic<std::uint64_t> checked{0};

    parallel_chunks(cospans.size(), [&](std::size_t worker, std::size_t begin, std::size_t end) {
        std::optional<Failure>& failure = chunk_failures[worker];
        std::uint64_t local_vacuous = 0, local_checked = 0;
        for (std::size_t i = begin; i < end; ++i) {
            Cospan c = cospans[i];
            auto pulls = find_pullbacks(src, c, SearchBudget{~0ull});
            if (pulls.empty()) {
                local_vacuous++;
                continue;
            }
            Cospan fc = apply(fun, c);
            for (Span s : pulls) {
                local_checked++;
                if (!is_pullback(dst, apply(fun, s), fc, SearchBudget{~0ull})) {
                    if (!failure || i < failure->index) {
                        failure = Failure{i, "image of " + describe(src, s) +
                                                 " is not a pullback of the image of " +
                                                 describe(src, c)};
                    }
                    break;
                }
            }
        }
        vacuous += local_vacuous;
        checked += local_checked;
    });

    std::optional<Failure> first;
    for (const auto& f : chunk_failures) {
        if (f && (!first || f->index < first->index)) first = f;
    }
    report.verdict = !first.has_value();
    if (first) report.fail("cospan", first->detail);
    report.stat("cospans_examined", cospans.size());
    report.stat("vacuous_cospans", vacuous.load());
    report.stat("pullbacks_checked", checked.load());
    return report;
}

} // namespace spanforge
