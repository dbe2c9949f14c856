#ifndef SPANFORGE_PULLBACK_HPP
#define SPANFORGE_PULLBACK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spanforge/budget.hpp"
#include "spanforge/category.hpp"
#include "spanforge/report.hpp"
#include "spanforge/span.hpp"

namespace spanforge {

inline Span apply(const Functor& f, Span s) { return {f.apply(s.left), f.apply(s.right)}; }
inline Cospan apply(const Functor& f, Cospan c) { return {f.apply(c.left), f.apply(c.right)}; }

std::uint64_t count_cospans(const FiniteCategory& cat);

/// All ordered pairs (c_L, c_R) with a common target, in (left, right)
/// lexicographic MorId order; includes c_L = c_R.
std::vector<Cospan> enumerate_cospans(const FiniteCategory& cat, const SearchBudget& budget = {});

/// Number of spans paired with `c` whose apex is A, for every object A.
/// This is a complete (if compressed) enumeration of the pairing quantifier:
/// the count at A groups the pairs (u, v) ∈ hom(A,C_L)×hom(A,C_R) with
/// c_L∘u = c_R∘v by the common composite.
std::vector<std::uint64_t> paired_span_counts(const FiniteCategory& cat, Cospan c);

std::uint64_t count_paired_spans(const FiniteCategory& cat, Cospan c);

/// All spans paired with `c`, in (left, right) lexicographic order.
std::vector<Span> paired_spans(const FiniteCategory& cat, Cospan c, const SearchBudget& budget = {});

/// Spans paired with `c` whose apex is `a`, in (left, right) order.
std::vector<Span> paired_spans_with_apex(const FiniteCategory& cat, Cospan c, ObjId a);

struct PullbackCheck {
    bool ok = false;
    std::string violation; // first violating paired span, when not ok
};

/// Universal-property check: S is a pullback of C iff it is paired with C and
/// every paired span Q admits exactly one span morphism to S.
///
/// Implementation note: for fixed apex A, a span morphism Φ: Q → S forces
/// Q = (s_L∘Φ, s_R∘Φ), so the condition over all Q with apex A is equivalent
/// to "Φ ↦ (s_L∘Φ, s_R∘Φ) on hom(A, S_A) is injective with image size equal
/// to the paired-span count at A". Every paired span is accounted for; the
/// naive per-Q loop is kept in the test suite as an oracle for this check.
PullbackCheck is_pullback_check(const FiniteCategory& cat, Span s, Cospan c,
                                const SearchBudget& budget = {});

bool is_pullback(const FiniteCategory& cat, Span s, Cospan c, const SearchBudget& budget = {});

CheckReport is_pullback_report(const FiniteCategory& cat, Span s, Cospan c,
                               const SearchBudget& budget = {});

/// All pullbacks of `c` (possibly none), in (left, right) order. Searches
/// only apexes whose hom-set counts match the paired-span counts — a
/// necessary condition forced by the universal property — then runs the full
/// check on each candidate.
std::vector<Span> find_pullbacks(const FiniteCategory& cat, Cospan c,
                                 const SearchBudget& budget = {});

/// Amortizes the paired-span census of one cospan across many is_pullback
/// queries against it.
class PullbackTester {
public:
    PullbackTester(const FiniteCategory& cat, Cospan c);

    std::uint64_t candidate_count() const { return total_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    bool test(Span s) const;

private:
    const FiniteCategory& cat_;
    Cospan c_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Whether every cospan has a pullback, unique up to span isomorphism.
/// The report carries the first cospan with no pullback (or a non-isomorphic
/// pullback pair) and full search statistics.
CheckReport has_pullbacks(const FiniteCategory& cat, const SearchBudget& budget = {});

/// Whether the functor maps every pullback square in its source to a pullback
/// square in its target. Cospans with no pullback at all satisfy the
/// implication vacuously and are tallied separately in the report stats.
CheckReport preserves_pullbacks(const Functor& fun, const SearchBudget& budget = {});

} // namespace spanforge

#endif
