#ifndef SPANFORGE_CATEGORY_HPP
#define SPANFORGE_CATEGORY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanforge/ids.hpp"
#include "spanforge/report.hpp"

namespace spanforge {

/// Raw, unvalidated category description, straight out of the interchange
/// format or a generator. `compositions` uses the diagrammatic order of the
/// file format: (first f, then g, equals h) means h = g∘f with tgt(f) = src(g).
struct CategorySpec {
    struct Morphism {
        std::string id;
        std::string src;
        std::string tgt;
    };
    struct Composition {
        std::string first;
        std::string then;
        std::string equals;
    };

    std::string name;
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<std::pair<std::string, std::string>> identities; // object -> morphism
    std::vector<Composition> compositions;
};

/// A finite category as a validated, immutable combinatorial table.
///
/// Morphism and object ids are dense indices in declaration order; every
/// enumeration in the library derives its order from them, which is what makes
/// searches and canonical representatives reproducible. Composition is stored
/// row-per-morphism over the out-list of the row's target, so lookup is O(1)
/// and storage is one entry per composable pair.
class FiniteCategory {
public:
    const std::string& name() const { return name_; }
    std::size_t object_count() const { return object_names_.size(); }
    std::size_t morphism_count() const { return mor_src_.size(); }

    const std::string& object_name(ObjId x) const { return object_names_[x.index]; }
    const std::string& morphism_name(MorId m) const { return mor_names_[m.index]; }
    std::optional<ObjId> object_by_name(const std::string& name) const;
    std::optional<MorId> morphism_by_name(const std::string& name) const;

    ObjId src(MorId m) const { return mor_src_[m.index]; }
    ObjId tgt(MorId m) const { return mor_tgt_[m.index]; }
    MorId identity(ObjId x) const { return identity_[x.index]; }
    bool is_identity(MorId m) const { return identity_[src(m).index] == m; }

    /// g∘f, i.e. "first f, then g". Requires tgt(f) = src(g); throws
    /// NotComposable otherwise.
    MorId compose(MorId f, MorId g) const {
        if (tgt(f) != src(g)) raise_not_composable(f, g);
        return compose_rows_[row_offset_[f.index] + out_pos_[g.index]];
    }

    /// g∘f without the composability check; callers must have established
    /// tgt(f) = src(g) structurally (e.g. g drawn from out_of(tgt(f))).
    MorId compose_unchecked(MorId f, MorId g) const {
        return compose_rows_[row_offset_[f.index] + out_pos_[g.index]];
    }

    /// All morphisms a → b in MorId order.
    const std::vector<MorId>& hom(ObjId a, ObjId b) const {
        return hom_sets_[a.index * object_count() + b.index];
    }
    /// All morphisms with source a, in MorId order.
    const std::vector<MorId>& out_of(ObjId a) const { return out_lists_[a.index]; }
    /// All morphisms with target b, in MorId order.
    const std::vector<MorId>& into(ObjId b) const { return in_lists_[b.index]; }

    /// Rank of m within hom(src(m), tgt(m)).
    std::uint32_t hom_rank(MorId m) const { return hom_rank_[m.index]; }

    /// Two-sided inverse if it exists (it is unique when it does).
    std::optional<MorId> inverse(MorId f) const { return inverse_[f.index]; }
    bool is_iso(MorId f) const { return inverse_[f.index].has_value(); }
    /// All isomorphisms with source a, in MorId order.
    const std::vector<MorId>& isos_out_of(ObjId a) const { return iso_out_[a.index]; }

    /// Validates every category axiom on the raw description. On success the
    /// returned handle is immutable and safe to share across threads; on
    /// failure the report lists every violated axiom with the offending
    /// pair/triple.
    static std::shared_ptr<const FiniteCategory> validate(const CategorySpec& spec,
                                                          ValidationReport& report);

    /// The raw description this category round-trips to (declaration order
    /// preserved, composable pairs listed exactly once, lexicographically).
    CategorySpec to_spec() const;

private:
    FiniteCategory() = default;
    void index_morphisms();
    void compute_inverses();
    [[noreturn]] void raise_not_composable(MorId f, MorId g) const;

    std::string name_;
    std::vector<std::string> object_names_;
    std::vector<std::string> mor_names_;
    std::vector<ObjId> mor_src_;
    std::vector<ObjId> mor_tgt_;
    std::vector<MorId> identity_;

    // CSR composition table: row f covers out_of(tgt(f)) in order;
    // compose_rows_[row_offset_[f] + out_pos_[g]] = g∘f.
    std::vector<std::uint64_t> row_offset_;
    std::vector<MorId> compose_rows_;
    std::vector<std::uint32_t> out_pos_; // rank of each morphism in out_of(src(m))

    std::vector<std::vector<MorId>> hom_sets_;
    std::vector<std::vector<MorId>> out_lists_;
    std::vector<std::vector<MorId>> in_lists_;
    std::vector<std::uint32_t> hom_rank_;
    std::vector<std::optional<MorId>> inverse_;
    std::vector<std::vector<MorId>> iso_out_;

    std::unordered_map<std::string, std::uint32_t> object_index_;
    std::unordered_map<std::string, std::uint32_t> morphism_index_;
};

using CategoryHandle = std::shared_ptr<const FiniteCategory>;

/// Raw functor description: object and morphism maps by name.
struct FunctorSpec {
    std::string name;
    std::vector<std::pair<std::string, std::string>> object_map;
    std::vector<std::pair<std::string, std::string>> morphism_map;
};

/// A functoriality-validated map between two finite categories.
class Functor {
public:
    const std::string& name() const { return name_; }
    const CategoryHandle& source() const { return source_; }
    const CategoryHandle& target() const { return target_; }

    ObjId apply(ObjId x) const { return object_map_[x.index]; }
    MorId apply(MorId m) const { return morphism_map_[m.index]; }

    /// Checks that the maps cover the whole source, respect sources/targets,
    /// identities, and every composite in the source's table.
    static std::optional<Functor> validate(const FunctorSpec& spec, CategoryHandle source,
                                           CategoryHandle target, ValidationReport& report);

    static Functor identity(CategoryHandle cat);

    FunctorSpec to_spec() const;

private:
    std::string name_;
    CategoryHandle source_;
    CategoryHandle target_;
    std::vector<ObjId> object_map_;
    std::vector<MorId> morphism_map_;
};

} // namespace spanforge

#endif
