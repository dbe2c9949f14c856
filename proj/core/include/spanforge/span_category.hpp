#ifndef SPANFORGE_SPAN_CATEGORY_HPP
#define SPANFORGE_SPAN_CATEGORY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spanforge/budget.hpp"
#include "spanforge/category.hpp"
#include "spanforge/pullback.hpp"
#include "spanforge/report.hpp"
#include "spanforge/span.hpp"

namespace spanforge {

/// All spans S paired with `c` whose image F(S) is a pullback of F(c) in the
/// target category, in (left, right) order. With F the identity this
/// coincides with find_pullbacks.
std::vector<Span> find_f_pullbacks(const Functor& fun, Cospan c, const SearchBudget& budget = {});

/// The composite of S and Q along P: the span (s_L∘p_L, q_R∘p_R) with apex
/// P_A. Requires S_R = Q_L and P paired with the cospan (s_R, q_L); throws
/// FeetMismatch / NotPaired.
Span compose_along(const FiniteCategory& cat, Span s, Span p, Span q);

/// Span tightness: for every cospan and every ordered pair (S, Q) of its
/// F-pullbacks, the unique span isomorphism Φ from F(S) to F(Q) downstairs
/// has a preimage Ψ with F(Ψ) = Φ that is a span isomorphism from S to Q.
///
/// The verdict is the lift property over every F-pullback pair that exists.
/// Whether every cospan has an F-pullback at all is reported separately in
/// the stats (cospans_without_f_pullbacks, with a witness entry): a finite
/// truncation of a function category can never be closed under fibered
/// products (a cospan m→1←m needs an m²-element apex), so folding existence
/// into the verdict would make every interesting fixture fail. Lift
/// uniqueness is reported, not required.
CheckReport is_span_tight(const Functor& fun, const SearchBudget& budget = {});

/// The generalized span category Span(C, F): objects of C, morphism classes
/// = span-isomorphism classes keyed by feet (source = right foot, target =
/// left foot), composition via F-pullbacks. Built eagerly: all classes are
/// materialized and every cospan's F-pullback list is precomputed, so
/// composition afterwards is pure lookup.
class SpanCategory {
public:
    const CategoryHandle& base() const { return base_; }
    const Functor& functor() const { return functor_; }

    std::size_t class_count() const { return classes_.size(); }
    const std::vector<SpanClass>& classes() const { return classes_; }
    const SpanClass& class_at(std::size_t i) const { return classes_[i]; }
    std::optional<std::size_t> class_index(Span s) const;

    /// Source object of a class: the right foot of its representative.
    ObjId source_of(const SpanClass& cls) const { return right_foot(*base_, cls.representative); }
    /// Target object of a class: the left foot of its representative.
    ObjId target_of(const SpanClass& cls) const { return left_foot(*base_, cls.representative); }

    SpanClass identity_class(ObjId x) const { return classes_[identity_class_[x.index]]; }

    /// F-pullbacks of the cospan (left, right), precomputed; empty when the
    /// truncated base has none.
    const std::vector<Span>& f_pullbacks(Cospan c) const;

    /// [A]∘[B]: requires source(A) = target(B), i.e. S_R = Q_L on the
    /// representatives. Composes the canonical representatives along the
    /// canonically least F-pullback of the middle cospan. Throws NoFPullback
    /// when the middle cospan has no F-pullback, FeetMismatch when not
    /// composable.
    SpanClass compose(const SpanClass& a, const SpanClass& b) const;

    /// Compose given representatives (not necessarily canonical), along the
    /// least F-pullback of their middle cospan.
    std::optional<SpanClass> compose_representatives(Span s, Span q) const;

    friend SpanCategory build_span_category(const Functor& fun, const SearchBudget& budget,
                                            bool force);

private:
    CategoryHandle base_;
    Functor functor_;
    std::vector<SpanClass> classes_;
    std::map<Span, std::size_t> class_by_rep_;
    std::vector<std::size_t> identity_class_;
    std::map<Cospan, std::vector<Span>> f_pullbacks_;
};

/// Builds Span(C, F) after checking span tightness; throws NotSpanTight
/// unless `force` is set (the diagnostic mode that composes anyway so law
/// checking can show where well-definedness breaks).
SpanCategory build_span_category(const Functor& fun, const SearchBudget& budget = {},
                                 bool force = false);

struct LawCheckConfig {
    enum class Mode { Exhaustive, Sampled };
    Mode mode = Mode::Exhaustive;
    std::uint64_t sample_count = 0; // instances per law family when sampled
    std::uint64_t seed = 0;         // required when sampled
    std::uint64_t exhaustive_triple_threshold = 50'000;
};

/// Verifies the four law families that make a built span category a genuine
/// category: (1) composites are independent of the chosen F-pullback,
/// (2) composites are independent of class representatives, (3) unit laws,
/// (4) associativity.
/// Instances whose middle cospan has no F-pullback in the truncated base are
/// counted under *_skipped stats rather than silently dropped; unit-law
/// instances are never skippable (their F-pullback always exists).
CheckReport check_category_laws(const SpanCategory& sc, const LawCheckConfig& config = {},
                                const SearchBudget& budget = {});

/// With F = identity on a category that has pullbacks, composition via
/// find_pullbacks and composition via find_f_pullbacks(identity) must agree
/// on every composable class pair, and the two searches must return the same
/// span lists on every cospan. Throws PreconditionFailed if the category does
/// not have pullbacks.
CheckReport classic_equivalence(const FiniteCategory& cat, const SearchBudget& budget = {});

} // namespace spanforge

#endif
