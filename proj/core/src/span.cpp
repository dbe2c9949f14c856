#include "spanforge/span.hpp"

#include <algorithm>

#include "spanforge/errors.hpp"

namespace spanforge {

bool is_valid_span(const FiniteCategory& cat, Span s) {
    return s.left.index < cat.morphism_count() && s.right.index < cat.morphism_count() &&
           cat.src(s.left) == cat.src(s.right);
}

bool is_valid_cospan(const FiniteCategory& cat, Cospan c) {
    return c.left.index < cat.morphism_count() && c.right.index < cat.morphism_count() &&
           cat.tgt(c.left) == cat.tgt(c.right);
}

std::string describe(const FiniteCategory& cat, Span s) {
    return "span (s_L = " + cat.morphism_name(s.left) + ", s_R = " + cat.morphism_name(s.right) +
           ") with apex " + cat.object_name(apex(cat, s)) + ", feet (" +
           cat.object_name(left_foot(cat, s)) + ", " + cat.object_name(right_foot(cat, s)) + ")";
}

std::string describe(const FiniteCategory& cat, Cospan c) {
    return "cospan (c_L = " + cat.morphism_name(c.left) + ", c_R = " +
           cat.morphism_name(c.right) + ") with apex " + cat.object_name(apex(cat, c)) +
           ", feet (" + cat.object_name(left_foot(cat, c)) + ", " +
           cat.object_name(right_foot(cat, c)) + ")";
}

bool is_paired(const FiniteCategory& cat, Span s, Cospan c) {
    if (left_foot(cat, s) != left_foot(cat, c) || right_foot(cat, s) != right_foot(cat, c)) {
        return false;
    }
    return cat.compose(s.left, c.left) == cat.compose(s.right, c.right);
}

std::vector<MorId> span_morphisms(const FiniteCategory& cat, Span s, Span q) {
    if (left_foot(cat, s) != left_foot(cat, q) || right_foot(cat, s) != right_foot(cat, q)) {
        raise(ErrorCode::FeetMismatch,
              describe(cat, s) + " vs " + describe(cat, q) + " do not share feet");
    }
    std::vector<MorId> result;
    for (MorId phi : cat.hom(apex(cat, s), apex(cat, q))) {
        if (cat.compose(phi, q.left) == s.left && cat.compose(phi, q.right) == s.right) {
            result.push_back(phi);
        }
    }
    return result;
}

bool is_span_isomorphism(const FiniteCategory& cat, MorId phi, Span s, Span q) {
    if (left_foot(cat, s) != left_foot(cat, q) || right_foot(cat, s) != right_foot(cat, q)) {
        raise(ErrorCode::FeetMismatch,
              describe(cat, s) + " vs " + describe(cat, q) + " do not share feet");
    }
    if (cat.src(phi) != apex(cat, s) || cat.tgt(phi) != apex(cat, q)) return false;
    return cat.is_iso(phi) && cat.compose(phi, q.left) == s.left &&
           cat.compose(phi, q.right) == s.right;
}

namespace {

// The class of S is exactly the orbit of S under transport along
// isomorphisms out of the apex: a span isomorphism Φ: S → Q forces
// Q = (s_L∘Φ⁻¹, s_R∘Φ⁻¹), and conversely every such transport is a class
// member. No scan over all spans of the category is needed.
template <typename Fn>
void for_each_class_member(const FiniteCategory& cat, Span s, Fn&& fn) {
    for (MorId phi : cat.isos_out_of(apex(cat, s))) {
        MorId inv = *cat.inverse(phi);
        fn(Span{cat.compose(inv, s.left), cat.compose(inv, s.right)});
    }
}

} // namespace

std::vector<Span> span_class_members(const FiniteCategory& cat, Span s) {
    std::vector<Span> members;
    for_each_class_member(cat, s, [&](Span m) { members.push_back(m); });
    std::sort(members.begin(), members.end(), [&](Span a, Span b) {
        return std::tuple(apex(cat, a), a.left, a.right) < std::tuple(apex(cat, b), b.left, b.right);
    });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

Span canonicalize(const FiniteCategory& cat, Span s) {
    Span best = s;
    auto key = [&](Span x) { return std::tuple(apex(cat, x), x.left, x.right); };
    for_each_class_member(cat, s, [&](Span m) {
        if (key(m) < key(best)) best = m;
    });
    return best;
}

bool same_class(const FiniteCategory& cat, Span s, Span q) {
    return canonicalize(cat, s) == canonicalize(cat, q);
}

} // namespace spanforge
