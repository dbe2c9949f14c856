#include "spanforge/category.hpp"

#include <algorithm>

#include "spanforge/errors.hpp"

namespace spanforge {

std::optional<ObjId> FiniteCategory::object_by_name(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return ObjId{it->second};
}

std::optional<MorId> FiniteCategory::morphism_by_name(const std::string& name) const {
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end()) return std::nullopt;
    return MorId{it->second};
}

void FiniteCategory::raise_not_composable(MorId f, MorId g) const {
    raise(ErrorCode::NotComposable,
          "compose(" + morphism_name(f) + ", " + morphism_name(g) + "): tgt(" +
              morphism_name(f) + ") = " + object_name(tgt(f)) + " but src(" +
              morphism_name(g) + ") = " + object_name(src(g)));
}

void FiniteCategory::index_morphisms() {
    const std::size_t n_obj = object_names_.size();
    const std::size_t n_mor = mor_src_.size();

    object_index_.clear();
    for (std::size_t i = 0; i < n_obj; ++i) object_index_.emplace(object_names_[i], i);
    morphism_index_.clear();
    for (std::size_t i = 0; i < n_mor; ++i) morphism_index_.emplace(mor_names_[i], i);

    hom_sets_.assign(n_obj * n_obj, {});
    out_lists_.assign(n_obj, {});
    in_lists_.assign(n_obj, {});
    out_pos_.assign(n_mor, 0);
    hom_rank_.assign(n_mor, 0);
    for (std::size_t i = 0; i < n_mor; ++i) {
        MorId m{static_cast<std::uint32_t>(i)};
        auto& hom_set = hom_sets_[mor_src_[i].index * n_obj + mor_tgt_[i].index];
        hom_rank_[i] = static_cast<std::uint32_t>(hom_set.size());
        hom_set.push_back(m);
        out_pos_[i] = static_cast<std::uint32_t>(out_lists_[mor_src_[i].index].size());
        out_lists_[mor_src_[i].index].push_back(m);
        in_lists_[mor_tgt_[i].index].push_back(m);
    }
}

void FiniteCategory::compute_inverses() {
    // f: a→b is iso iff some g: b→a has g∘f = id_a and f∘g = id_b.
    const std::size_t n_mor = mor_src_.size();
    inverse_.assign(n_mor, std::nullopt);
    iso_out_.assign(object_names_.size(), {});
    for (std::size_t i = 0; i < n_mor; ++i) {
        MorId f{static_cast<std::uint32_t>(i)};
        ObjId a = mor_src_[i], b = mor_tgt_[i];
        for (MorId g : hom(b, a)) {
            if (compose(f, g) == identity(a) && compose(g, f) == identity(b)) {
                inverse_[i] = g;
                break;
            }
        }
        if (inverse_[i]) iso_out_[a.index].push_back(f);
    }
}

std::shared_ptr<const FiniteCategory> FiniteCategory::validate(const CategorySpec& spec,
                                                               ValidationReport& report) {
    auto cat = std::shared_ptr<FiniteCategory>(new FiniteCategory());
    cat->name_ = spec.name;

    std::unordered_map<std::string, std::uint32_t> obj_idx;
    for (const auto& o : spec.objects) {
        if (obj_idx.count(o)) {
            report.add(IssueKind::DuplicateName, "object '" + o + "' declared twice");
            continue;
        }
        obj_idx.emplace(o, static_cast<std::uint32_t>(cat->object_names_.size()));
        cat->object_names_.push_back(o);
    }

    std::unordered_map<std::string, std::uint32_t> mor_idx;
    for (const auto& m : spec.morphisms) {
        if (mor_idx.count(m.id)) {
            report.add(IssueKind::DuplicateName, "morphism '" + m.id + "' declared twice");
            continue;
        }
        auto s = obj_idx.find(m.src);
        auto t = obj_idx.find(m.tgt);
        if (s == obj_idx.end() || t == obj_idx.end()) {
            report.add(IssueKind::DanglingReference,
                       "morphism '" + m.id + "' references unknown object '" +
                           (s == obj_idx.end() ? m.src : m.tgt) + "'");
            continue;
        }
        mor_idx.emplace(m.id, static_cast<std::uint32_t>(cat->mor_names_.size()));
        cat->mor_names_.push_back(m.id);
        cat->mor_src_.push_back(ObjId{s->second});
        cat->mor_tgt_.push_back(ObjId{t->second});
    }
    if (!report.ok) return nullptr;

    const std::size_t n_obj = cat->object_names_.size();
    const std::size_t n_mor = cat->mor_names_.size();

    // Identity assignment: total, and id_x must be an endomorphism of x.
    cat->identity_.assign(n_obj, MorId{0});
    std::vector<bool> has_identity(n_obj, false);
    for (const auto& [obj, mor] : spec.identities) {
        auto o = obj_idx.find(obj);
        auto m = mor_idx.find(mor);
        if (o == obj_idx.end() || m == mor_idx.end()) {
            report.add(IssueKind::DanglingReference,
                       "identity entry (" + obj + " -> " + mor + ") references unknown id");
            continue;
        }
        if (has_identity[o->second]) {
            report.add(IssueKind::BadIdentity, "object '" + obj + "' assigned two identities");
            continue;
        }
        has_identity[o->second] = true;
        cat->identity_[o->second] = MorId{m->second};
        if (cat->mor_src_[m->second].index != o->second ||
            cat->mor_tgt_[m->second].index != o->second) {
            report.add(IssueKind::BadIdentity,
                       "identity of '" + obj + "' is '" + mor + "' which is not an endomorphism");
        }
    }
    for (std::size_t i = 0; i < n_obj; ++i) {
        if (!has_identity[i]) {
            report.add(IssueKind::BadIdentity,
                       "object '" + cat->object_names_[i] + "' has no identity");
        }
    }
    if (!report.ok) return nullptr;

    // Composition table, stored CSR (one slot per composable pair): exactly
    // one entry per composable pair, none elsewhere, right endpoints.
    cat->index_morphisms();
    cat->row_offset_.assign(n_mor + 1, 0);
    for (std::size_t f = 0; f < n_mor; ++f) {
        cat->row_offset_[f + 1] =
            cat->row_offset_[f] + cat->out_lists_[cat->mor_tgt_[f].index].size();
    }
    const MorId unset{0xFFFFFFFFu};
    cat->compose_rows_.assign(cat->row_offset_[n_mor], unset);
    for (const auto& c : spec.compositions) {
        auto f = mor_idx.find(c.first);
        auto g = mor_idx.find(c.then);
        auto h = mor_idx.find(c.equals);
        if (f == mor_idx.end() || g == mor_idx.end() || h == mor_idx.end()) {
            report.add(IssueKind::DanglingReference,
                       "composition entry (" + c.first + ", " + c.then + ", " + c.equals +
                           ") references unknown morphism");
            continue;
        }
        if (cat->mor_tgt_[f->second] != cat->mor_src_[g->second]) {
            report.add(IssueKind::SpuriousComposite,
                       "pair (" + c.first + ", " + c.then + ") is not composable");
            continue;
        }
        MorId& slot =
            cat->compose_rows_[cat->row_offset_[f->second] + cat->out_pos_[g->second]];
        if (slot != unset) {
            report.add(IssueKind::DuplicateComposite,
                       "pair (" + c.first + ", " + c.then + ") listed twice");
            continue;
        }
        slot = MorId{h->second};
        if (cat->mor_src_[h->second] != cat->mor_src_[f->second] ||
            cat->mor_tgt_[h->second] != cat->mor_tgt_[g->second]) {
            report.add(IssueKind::BadCompositeEndpoints,
                       c.equals + " = " + c.then + "∘" + c.first +
                           " has wrong source or target");
        }
    }
    for (std::size_t f = 0; f < n_mor && report.ok; ++f) {
        MorId fm{static_cast<std::uint32_t>(f)};
        for (MorId g : cat->out_of(cat->tgt(fm))) {
            if (cat->compose_rows_[cat->row_offset_[f] + cat->out_pos_[g.index]] == unset) {
                report.add(IssueKind::MissingComposite,
                           "composable pair (" + cat->mor_names_[f] + ", " +
                               cat->morphism_name(g) + ") missing from composition table");
            }
        }
    }
    if (!report.ok) return nullptr;

    // Identity laws: f∘id_src(f) = f and id_tgt(f)∘f = f.
    for (std::size_t i = 0; i < n_mor; ++i) {
        MorId f{static_cast<std::uint32_t>(i)};
        MorId left = cat->compose(cat->identity(cat->src(f)), f);
        MorId right = cat->compose(f, cat->identity(cat->tgt(f)));
        if (left != f) {
            report.add(IssueKind::BadIdentity,
                       cat->mor_names_[i] + "∘id_" + cat->object_name(cat->src(f)) + " = " +
                           cat->morphism_name(left) + " ≠ " + cat->mor_names_[i]);
        }
        if (right != f) {
            report.add(IssueKind::BadIdentity,
                       "id_" + cat->object_name(cat->tgt(f)) + "∘" + cat->mor_names_[i] + " = " +
                           cat->morphism_name(right) + " ≠ " + cat->mor_names_[i]);
        }
    }
    if (!report.ok) return nullptr;

    // Associativity over all composable triples; report the witness triple.
    for (std::size_t fi = 0; fi < n_mor && report.ok; ++fi) {
        MorId f{static_cast<std::uint32_t>(fi)};
        for (MorId g : cat->out_of(cat->tgt(f))) {
            MorId gf = cat->compose(f, g);
            for (MorId h : cat->out_of(cat->tgt(g))) {
                if (cat->compose(gf, h) != cat->compose(f, cat->compose(g, h))) {
                    report.add(IssueKind::AssociativityViolation,
                               "h∘(g∘f) ≠ (h∘g)∘f for (f,g,h) = (" + cat->morphism_name(f) +
                                   ", " + cat->morphism_name(g) + ", " + cat->morphism_name(h) +
                                   ")");
                    break;
                }
            }
            if (!report.ok) break;
        }
    }
    if (!report.ok) return nullptr;

    cat->compute_inverses();
    return cat;
}

CategorySpec FiniteCategory::to_spec() const {
    CategorySpec spec;
    spec.name = name_;
    spec.objects = object_names_;
    for (std::size_t i = 0; i < mor_names_.size(); ++i) {
        spec.morphisms.push_back({mor_names_[i], object_names_[mor_src_[i].index],
                                  object_names_[mor_tgt_[i].index]});
    }
    for (std::size_t i = 0; i < object_names_.size(); ++i) {
        spec.identities.emplace_back(object_names_[i], mor_names_[identity_[i].index]);
    }
    for (std::size_t f = 0; f < mor_names_.size(); ++f) {
        MorId fm{static_cast<std::uint32_t>(f)};
        for (MorId g : out_of(tgt(fm))) {
            spec.compositions.push_back(
                {mor_names_[f], mor_names_[g.index], mor_names_[compose(fm, g).index]});
        }
    }
    return spec;
}

std::optional<Functor> Functor::validate(const FunctorSpec& spec, CategoryHandle source,
                                         CategoryHandle target, ValidationReport& report) {
    Functor fun;
    fun.name_ = spec.name;
    fun.source_ = source;
    fun.target_ = target;

    const std::size_t n_obj = source->object_count();
    const std::size_t n_mor = source->morphism_count();
    fun.object_map_.assign(n_obj, ObjId{0});
    fun.morphism_map_.assign(n_mor, MorId{0});
    std::vector<bool> obj_seen(n_obj, false), mor_seen(n_mor, false);

    for (const auto& [from, to] : spec.object_map) {
        auto x = source->object_by_name(from);
        auto y = target->object_by_name(to);
        if (!x || !y) {
            report.add(IssueKind::DanglingReference,
                       "object_map entry (" + from + " -> " + to + ") references unknown object");
            continue;
        }
        obj_seen[x->index] = true;
        fun.object_map_[x->index] = *y;
    }
    for (const auto& [from, to] : spec.morphism_map) {
        auto m = source->morphism_by_name(from);
        auto n = target->morphism_by_name(to);
        if (!m || !n) {
            report.add(IssueKind::DanglingReference,
                       "morphism_map entry (" + from + " -> " + to +
                           ") references unknown morphism");
            continue;
        }
        mor_seen[m->index] = true;
        fun.morphism_map_[m->index] = *n;
    }
    for (std::size_t i = 0; i < n_obj; ++i) {
        if (!obj_seen[i]) {
            report.add(IssueKind::DanglingReference,
                       "object '" + source->object_name(ObjId{(std::uint32_t)i}) + "' unmapped");
        }
    }
    for (std::size_t i = 0; i < n_mor; ++i) {
        if (!mor_seen[i]) {
            report.add(IssueKind::DanglingReference,
                       "morphism '" + source->morphism_name(MorId{(std::uint32_t)i}) +
                           "' unmapped");
        }
    }
    if (!report.ok) return std::nullopt;

    // Sources/targets, identities, and the whole composition table.
    for (std::size_t i = 0; i < n_mor; ++i) {
        MorId m{static_cast<std::uint32_t>(i)};
        if (target->src(fun.apply(m)) != fun.apply(source->src(m)) ||
            target->tgt(fun.apply(m)) != fun.apply(source->tgt(m))) {
            report.add(IssueKind::NotAFunctor,
                       "image of '" + source->morphism_name(m) +
                           "' has wrong endpoints under the object map");
        }
    }
    for (std::size_t i = 0; i < n_obj; ++i) {
        ObjId x{static_cast<std::uint32_t>(i)};
        if (fun.apply(source->identity(x)) != target->identity(fun.apply(x))) {
            report.add(IssueKind::NotAFunctor,
                       "identity of '" + source->object_name(x) + "' not preserved");
        }
    }
    if (!report.ok) return std::nullopt;
    for (std::size_t fi = 0; fi < n_mor; ++fi) {
        MorId f{static_cast<std::uint32_t>(fi)};
        for (MorId g : source->out_of(source->tgt(f))) {
            if (fun.apply(source->compose(f, g)) !=
                target->compose(fun.apply(f), fun.apply(g))) {
                report.add(IssueKind::NotAFunctor,
                           "composite not preserved on pair (" + source->morphism_name(f) + ", " +
                               source->morphism_name(g) + ")");
                return std::nullopt;
            }
        }
    }
    return fun;
}

Functor Functor::identity(CategoryHandle cat) {
    Functor fun;
    fun.name_ = "id_" + cat->name();
    fun.source_ = cat;
    fun.target_ = cat;
    fun.object_map_.resize(cat->object_count());
    for (std::uint32_t i = 0; i < cat->object_count(); ++i) fun.object_map_[i] = ObjId{i};
    fun.morphism_map_.resize(cat->morphism_count());
    for (std::uint32_t i = 0; i < cat->morphism_count(); ++i) fun.morphism_map_[i] = MorId{i};
    return fun;
}

FunctorSpec Functor::to_spec() const {
    FunctorSpec spec;
    spec.name = name_;
    for (std::uint32_t i = 0; i < object_map_.size(); ++i) {
        spec.object_map.emplace_back(source_->object_name(ObjId{i}),
                                     target_->object_name(object_map_[i]));
    }
    for (std::uint32_t i = 0; i < morphism_map_.size(); ++i) {
        spec.morphism_map.emplace_back(source_->morphism_name(MorId{i}),
                                       target_->morphism_name(morphism_map_[i]));
    }
    return spec;
}

} // namespace spanforge
