#ifndef SPANFORGE_CATALOG_HPP
#define SPANFORGE_CATALOG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spanforge/category.hpp"
#include "spanforge/span.hpp"

namespace spanforge::catalog {

// Hard feasibility caps: hom(4,4) = 256 keeps the largest composition block
// around 65k entries, and every exhaustive universal-property search finishes
// in seconds.
inline constexpr int kMaxFinsetSize = 4;
inline constexpr int kMaxFintopPoints = 3;
inline constexpr int kMaxFinsurjSize = 4;

std::string finset_object_name(int size);
std::string finset_morphism_name(int src, int tgt, const std::vector<std::uint8_t>& values);
std::string fintop_object_name(int points, int topology_index);
std::string fintop_morphism_name(const std::string& src_name, const std::string& tgt_name,
                                 const std::vector<std::uint8_t>& values);

/// Truncated category of finite sets S0..Smax and all functions, encoded by
/// value vectors; ids are lexicographic in (src, tgt, value vector).
CategorySpec finset_spec(int max_size);

/// Truncated surjections category: listed sizes, surjective functions only.
/// Object and morphism names match finset_spec so the inclusion functor is a
/// name matching.
CategorySpec finsurj_spec(const std::vector<int>& sizes);

/// All labeled topologies on 0..max_points points with every continuous map.
CategorySpec fintop_spec(int max_points);

/// Poset category from generating pairs: the reflexive-transitive closure is
/// taken, antisymmetry is required.
CategorySpec poset_spec(const std::string& name, const std::vector<std::string>& objects,
                        const std::vector<std::pair<std::string, std::string>>& pairs);

/// One-object category from a group multiplication table; table[i][j] is the
/// product (element i)·(element j), and composition first-f-then-g is g·f.
CategorySpec group_spec(const std::string& name, const std::vector<std::string>& elements,
                        const std::vector<std::vector<std::string>>& table);

struct GraphArrow {
    std::string name;
    std::string src;
    std::string tgt;
};

/// Free category on a finite graph: all directed paths. The graph must be
/// acyclic and its longest path must not exceed max_path_len.
CategorySpec free_spec(const std::string& name, const std::vector<std::string>& nodes,
                       const std::vector<GraphArrow>& arrows, int max_path_len);

/// The one-object, one-morphism category.
CategorySpec terminal_spec();

/// Validates a generator output; generator bugs surface as exceptions here.
CategoryHandle build(const CategorySpec& spec);

/// A generated finset category together with the value-vector encoding of
/// every morphism, which the fibered-product oracle and the hom/forgetful
/// functor builders consume.
struct FinsetFixture {
    CategoryHandle cat;
    int max_size = 0;
    std::vector<std::uint8_t> object_size;                  // by ObjId
    std::vector<std::vector<std::uint8_t>> morphism_values; // by MorId
};
FinsetFixture finset_fixture(int max_size);

/// A generated fintop category with each object's point count and open-set
/// family (bitmask-encoded) and each morphism's value vector.
struct FintopFixture {
    CategoryHandle cat;
    int max_points = 0;
    std::vector<std::uint8_t> object_points;
    std::vector<std::vector<std::uint32_t>> object_topology; // sorted open-set masks
    std::vector<std::vector<std::uint8_t>> morphism_values;
};
FintopFixture fintop_fixture(int max_points);

/// Every labeled topology on {0..n-1}, each a sorted vector of open-set
/// bitmasks, in deterministic (lexicographic) order.
std::vector<std::vector<std::uint32_t>> enumerate_topologies(int points);

CategoryHandle b2_lattice();
CategoryHandle z2_group();

/// Inclusion/forgetful functor by name matching; sub-category object and
/// morphism names must all resolve in the super category.
Functor inclusion(CategoryHandle sub, CategoryHandle super);

/// The INCL fixture: gen_finsurj([1,2]) included in gen_finset(4).
Functor incl_finsurj12_finset04();

/// Hom(B,−) into a generated finset category: object X goes to the set of
/// size |hom(B,X)| with elements identified with hom-set members in MorId
/// order, morphism f to the postcomposition function β ↦ f∘β.
Functor hom_functor(CategoryHandle cat, ObjId base, const FinsetFixture& target);

/// Forgetful functor from a generated fintop category: each space to its
/// point set, each continuous map to its underlying function.
Functor forgetful_fintop_to_finset(const FintopFixture& top, const FinsetFixture& set);

/// Pre-built fixture on which span tightness genuinely fails: two objects
/// with no connecting arrows upstairs plus a sink, mapped onto the walking
/// isomorphism so that two F-pullbacks of the same cospan have images joined
/// by an isomorphism with no upstairs preimage.
struct NegativeTightnessFixture {
    CategoryHandle source;
    CategoryHandle target;
    Functor functor;
};
NegativeTightnessFixture negative_tightness_fixture();

/// Fibered product built directly from the value tables (the element pairs
/// on which the two legs agree, in lexicographic order) with no
/// universal-property search; the independent oracle for find_pullbacks.
/// Throws ApexExceedsCap when the fibered product does not fit the category.
Span fibered_product_oracle(const FinsetFixture& fixture, Cospan c);

/// Same construction in fintop, with the subspace topology of the product
/// topology on the apex.
Span fibered_product_oracle(const FintopFixture& fixture, Cospan c);

/// Exact number of elements of the set-theoretic fibered product of `c`
/// (regardless of whether it fits the truncation).
std::uint64_t fibered_product_size(const FinsetFixture& fixture, Cospan c);

} // namespace spanforge::catalog

#endif
