#ifndef SPANFORGE_SPAN_HPP
#define SPANFORGE_SPAN_HPP

#include <string>
#include <vector>

#include "spanforge/category.hpp"
#include "spanforge/ids.hpp"

namespace spanforge {

/// A pair of morphisms with the same source. The common source is the apex;
/// the targets are the left and right feet.
struct Span {
    MorId left;  // s_L: apex → left foot
    MorId right; // s_R: apex → right foot

    friend constexpr bool operator==(Span, Span) = default;
    friend constexpr auto operator<=>(Span, Span) = default;
};

/// A pair of morphisms with the same target (the apex); the sources are the
/// feet.
struct Cospan {
    MorId left;  // c_L: left foot → apex
    MorId right; // c_R: right foot → apex

    friend constexpr bool operator==(Cospan, Cospan) = default;
    friend constexpr auto operator<=>(Cospan, Cospan) = default;
};

inline ObjId apex(const FiniteCategory& cat, Span s) { return cat.src(s.left); }
inline ObjId left_foot(const FiniteCategory& cat, Span s) { return cat.tgt(s.left); }
inline ObjId right_foot(const FiniteCategory& cat, Span s) { return cat.tgt(s.right); }

inline ObjId apex(const FiniteCategory& cat, Cospan c) { return cat.tgt(c.left); }
inline ObjId left_foot(const FiniteCategory& cat, Cospan c) { return cat.src(c.left); }
inline ObjId right_foot(const FiniteCategory& cat, Cospan c) { return cat.src(c.right); }

bool is_valid_span(const FiniteCategory& cat, Span s);
bool is_valid_cospan(const FiniteCategory& cat, Cospan c);

/// Renders "(s_L, s_R): apex → (L, R)" style summaries for reports.
std::string describe(const FiniteCategory& cat, Span s);
std::string describe(const FiniteCategory& cat, Cospan c);

/// S is paired with C when the feet match and the square commutes:
/// c_L∘s_L = c_R∘s_R. Foot mismatch is just `false`.
bool is_paired(const FiniteCategory& cat, Span s, Cospan c);

/// All Φ ∈ hom(S_A, Q_A) with s_L = q_L∘Φ and s_R = q_R∘Φ, in MorId order.
/// Throws FeetMismatch when S and Q do not share both feet.
std::vector<MorId> span_morphisms(const FiniteCategory& cat, Span s, Span q);

/// True iff Φ is a span morphism from S to Q and is invertible.
bool is_span_isomorphism(const FiniteCategory& cat, MorId phi, Span s, Span q);

/// The full isomorphism class of `s`: transports (s_L∘φ⁻¹, s_R∘φ⁻¹) along
/// every isomorphism φ out of the apex, sorted and deduplicated.
std::vector<Span> span_class_members(const FiniteCategory& cat, Span s);

/// The lexicographically least member of the isomorphism class of `s` under
/// the (apex, left, right) index key. Idempotent; equal canonical forms iff
/// span-isomorphic.
Span canonicalize(const FiniteCategory& cat, Span s);

bool same_class(const FiniteCategory& cat, Span s, Span q);

/// A span-isomorphism class, held as its canonical representative.
struct SpanClass {
    Span representative;

    friend constexpr bool operator==(SpanClass, SpanClass) = default;
    friend constexpr auto operator<=>(SpanClass, SpanClass) = default;
};

inline SpanClass make_class(const FiniteCategory& cat, Span s) {
    return SpanClass{canonicalize(cat, s)};
}

} // namespace spanforge

#endif
