#include "spanforge/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "spanforge/errors.hpp"

namespace spanforge::catalog {

namespace {

std::string digits(const std::vector<std::uint8_t>& values) {
    std::string s;
    for (auto v : values) s += static_cast<char>('0' + v);
    return s;
}

// Value vectors of all functions src -> tgt in lexicographic order. A
// 0-element source has exactly the empty function; a 0-element target admits
// functions only from the empty source.
std::vector<std::vector<std::uint8_t>> all_functions(int src, int tgt) {
    std::vector<std::vector<std::uint8_t>> out;
    if (src == 0) {
        out.push_back({});
        return out;
    }
    if (tgt == 0) return out;
    std::vector<std::uint8_t> v(src, 0);
    while (true) {
        out.push_back(v);
        int i = src - 1;
        while (i >= 0 && v[i] == tgt - 1) v[i--] = 0;
        if (i < 0) break;
        v[i]++;
    }
    return out;
}

bool is_surjective(const std::vector<std::uint8_t>& values, int tgt) {
    std::vector<bool> hit(tgt, false);
    for (auto v : values) hit[v] = true;
    for (bool h : hit) {
        if (!h) return false;
    }
    return true;
}

std::vector<std::uint8_t> compose_values(const std::vector<std::uint8_t>& f,
                                         const std::vector<std::uint8_t>& g) {
    std::vector<std::uint8_t> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
    return out;
}

// Shared builder for function categories (all functions or surjections only).
CategorySpec function_category(const std::string& name, const std::vector<int>& sizes,
                               bool surjections_only) {
    CategorySpec spec;
    spec.name = name;

    for (int n : sizes) spec.objects.push_back(finset_object_name(n));

    struct Entry {
        int src, tgt;
        std::vector<std::uint8_t> values;
    };
    std::vector<Entry> entries;
    std::map<std::pair<std::pair<int, int>, std::vector<std::uint8_t>>, std::string> names;

    for (int m : sizes) {
        for (int n : sizes) {
            for (auto& v : all_functions(m, n)) {
                if (surjections_only && !is_surjective(v, n)) continue;
                std::string id = finset_morphism_name(m, n, v);
                spec.morphisms.push_back(
                    {id, finset_object_name(m), finset_object_name(n)});
                names[{{m, n}, v}] = id;
                entries.push_back({m, n, v});
            }
        }
    }

    for (int n : sizes) {
        std::vector<std::uint8_t> idv(n);
        for (int i = 0; i < n; ++i) idv[i] = static_cast<std::uint8_t>(i);
        spec.identities.emplace_back(finset_object_name(n), finset_morphism_name(n, n, idv));
    }

    for (const auto& f : entries) {
        for (const auto& g : entries) {
            if (g.src != f.tgt) continue;
            auto h = compose_values(f.values, g.values);
            spec.compositions.push_back({names.at({{f.src, f.tgt}, f.values}),
                                         names.at({{g.src, g.tgt}, g.values}),
                                         names.at({{f.src, g.tgt}, h})});
        }
    }
    return spec;
}

} // namespace

std::string finset_object_name(int size) { return "S" + std::to_string(size); }

std::string finset_morphism_name(int src, int tgt, const std::vector<std::uint8_t>& values) {
    std::string name = "m" + std::to_string(src) + "to" + std::to_string(tgt);
    if (!values.empty()) name += "_" + digits(values);
    return name;
}

std::string fintop_object_name(int points, int topology_index) {
    return "T" + std::to_string(points) + "_" + std::to_string(topology_index);
}

std::string fintop_morphism_name(const std::string& src_name, const std::string& tgt_name,
                                 const std::vector<std::uint8_t>& values) {
    std::string name = "c_" + src_name + "_" + tgt_name;
    if (!values.empty()) name += "_" + digits(values);
    return name;
}

CategorySpec finset_spec(int max_size) {
    if (max_size < 0 || max_size > kMaxFinsetSize) {
        raise(ErrorCode::CapExceeded,
              "finset max_size " + std::to_string(max_size) + " outside 0.." +
                  std::to_string(kMaxFinsetSize));
    }
    std::vector<int> sizes;
    for (int n = 0; n <= max_size; ++n) sizes.push_back(n);
    return function_category("FINSET0" + std::to_string(max_size), sizes, false);
}

CategorySpec finsurj_spec(const std::vector<int>& sizes) {
    if (sizes.empty()) raise(ErrorCode::CapExceeded, "finsurj needs at least one size");
    std::string label;
    for (int n : sizes) {
        if (n < 1 || n > kMaxFinsurjSize) {
            raise(ErrorCode::CapExceeded,
                  "finsurj size " + std::to_string(n) + " outside 1.." +
                      std::to_string(kMaxFinsurjSize));
        }
        label += std::to_string(n);
    }
    std::vector<int> uniq = sizes;
    std::sort(uniq.begin(), uniq.end());
    if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end()) {
        raise(ErrorCode::CapExceeded, "finsurj sizes must be distinct");
    }
    return function_category("FINSURJ" + label, sizes, true);
}

std::vector<std::vector<std::uint32_t>> enumerate_topologies(int points) {
    std::vector<std::vector<std::uint32_t>> result;
    if (points == 0) {
        result.push_back({0}); // the empty space: the only open set is ∅ = X
        return result;
    }
    const std::uint32_t full = (1u << points) - 1;
    std::vector<std::uint32_t> proper;
    for (std::uint32_t s = 1; s < full; ++s) proper.push_back(s);

    const std::size_t n_proper = proper.size();
    for (std::uint64_t pick = 0; pick < (1ull << n_proper); ++pick) {
        std::vector<std::uint32_t> family{0, full};
        for (std::size_t i = 0; i < n_proper; ++i) {
            if (pick & (1ull << i)) family.push_back(proper[i]);
        }
        bool closed = true;
        for (std::size_t i = 0; i < family.size() && closed; ++i) {
            for (std::size_t j = i + 1; j < family.size() && closed; ++j) {
                std::uint32_t u = family[i] | family[j];
                std::uint32_t m = family[i] & family[j];
                closed = std::find(family.begin(), family.end(), u) != family.end() &&
                         std::find(family.begin(), family.end(), m) != family.end();
            }
        }
        if (closed) {
            std::sort(family.begin(), family.end());
            result.push_back(family);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

bool is_continuous(const std::vector<std::uint8_t>& values, int src_points,
                   const std::vector<std::uint32_t>& src_top,
                   const std::vector<std::uint32_t>& tgt_top) {
    for (std::uint32_t open : tgt_top) {
        std::uint32_t pre = 0;
        for (int x = 0; x < src_points; ++x) {
            if (open & (1u << values[x])) pre |= (1u << x);
        }
        if (std::find(src_top.begin(), src_top.end(), pre) == src_top.end()) return false;
    }
    return true;
}

struct FintopObjects {
    std::vector<std::string> names;
    std::vector<int> points;
    std::vector<std::vector<std::uint32_t>> topology;
};

FintopObjects fintop_objects(int max_points) {
    FintopObjects objs;
    for (int n = 0; n <= max_points; ++n) {
        auto tops = enumerate_topologies(n);
        for (std::size_t k = 0; k < tops.size(); ++k) {
            objs.names.push_back(fintop_object_name(n, static_cast<int>(k)));
            objs.points.push_back(n);
            objs.topology.push_back(tops[k]);
        }
    }
    return objs;
}

} // namespace

CategorySpec fintop_spec(int max_points) {
    if (max_points < 0 || max_points > kMaxFintopPoints) {
        raise(ErrorCode::CapExceeded,
              "fintop max_points " + std::to_string(max_points) + " outside 0.." +
                  std::to_string(kMaxFintopPoints));
    }
    CategorySpec spec;
    spec.name = "FINTOP" + std::to_string(max_points);
    FintopObjects objs = fintop_objects(max_points);
    spec.objects = objs.names;

    struct Entry {
        int src, tgt;
        std::vector<std::uint8_t> values;
        std::string id;
    };
    std::vector<Entry> entries;
    std::map<std::pair<std::pair<int, int>, std::vector<std::uint8_t>>, std::string> names;

    const int n_obj = static_cast<int>(objs.names.size());
    for (int i = 0; i < n_obj; ++i) {
        for (int j = 0; j < n_obj; ++j) {
            for (auto& v : all_functions(objs.points[i], objs.points[j])) {
                if (!is_continuous(v, objs.points[i], objs.topology[i], objs.topology[j])) {
                    continue;
                }
                std::string id = fintop_morphism_name(objs.names[i], objs.names[j], v);
                spec.morphisms.push_back({id, objs.names[i], objs.names[j]});
                names[{{i, j}, v}] = id;
                entries.push_back({i, j, v, id});
            }
        }
    }
    for (int i = 0; i < n_obj; ++i) {
        std::vector<std::uint8_t> idv(objs.points[i]);
        for (int p = 0; p < objs.points[i]; ++p) idv[p] = static_cast<std::uint8_t>(p);
        spec.identities.emplace_back(objs.names[i], names.at({{i, i}, idv}));
    }
    for (const auto& f : entries) {
        for (const auto& g : entries) {
            if (g.src != f.tgt) continue;
            auto h = compose_values(f.values, g.values);
            spec.compositions.push_back({f.id, g.id, names.at({{f.src, g.tgt}, h})});
        }
    }
    return spec;
}

CategorySpec poset_spec(const std::string& name, const std::vector<std::string>& objects,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
    const std::size_t n = objects.size();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[objects[i]] = i;

    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (const auto& [a, b] : pairs) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            raise(ErrorCode::DanglingReference,
                  "relation pair (" + a + ", " + b + ") references unknown object");
        }
        le[ia->second][ib->second] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (le[i][k] && le[k][j]) le[i][j] = true;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && le[i][j] && le[j][i]) {
                raise(ErrorCode::NotAPartialOrder,
                      "antisymmetry fails: " + objects[i] + " ≤ " + objects[j] + " ≤ " +
                          objects[i]);
            }
        }
    }

    CategorySpec spec;
    spec.name = name;
    spec.objects = objects;
    auto mor_name = [&](std::size_t i, std::size_t j) {
        return "le_" + objects[i] + "_" + objects[j];
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (le[i][j]) spec.morphisms.push_back({mor_name(i, j), objects[i], objects[j]});
        }
    }
    for (std::size_t i = 0; i < n; ++i) spec.identities.emplace_back(objects[i], mor_name(i, i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!le[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (le[j][k]) {
                    spec.compositions.push_back({mor_name(i, j), mor_name(j, k), mor_name(i, k)});
                }
            }
        }
    }
    return spec;
}

CategorySpec group_spec(const std::string& name, const std::vector<std::string>& elements,
                        const std::vector<std::vector<std::string>>& table) {
    const std::size_t n = elements.size();
    if (n == 0) raise(ErrorCode::NotAGroup, "empty element list");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[elements[i]] = i;
    if (table.size() != n) raise(ErrorCode::NotAGroup, "table must be square");

    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) raise(ErrorCode::NotAGroup, "table must be square");
        for (std::size_t j = 0; j < n; ++j) {
            auto it = index.find(table[i][j]);
            if (it == index.end()) {
                raise(ErrorCode::NotAGroup, "table entry '" + table[i][j] + "' is not an element");
            }
            mul[i][j] = it->second;
        }
    }

    std::size_t identity = n;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity == n) raise(ErrorCode::NotAGroup, "no identity element");
    for (std::size_t x = 0; x < n; ++x) {
        bool has_inverse = false;
        for (std::size_t y = 0; y < n && !has_inverse; ++y) {
            has_inverse = mul[x][y] == identity && mul[y][x] == identity;
        }
        if (!has_inverse) {
            raise(ErrorCode::NotAGroup, "element '" + elements[x] + "' has no inverse");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
                    raise(ErrorCode::NotAGroup,
                          "associativity fails on (" + elements[a] + ", " + elements[b] + ", " +
                              elements[c] + ")");
                }
            }
        }
    }

    CategorySpec spec;
    spec.name = name;
    spec.objects = {"*"};
    for (const auto& e : elements) spec.morphisms.push_back({e, "*", "*"});
    spec.identities.emplace_back("*", elements[identity]);
    // first f then g is the product g·f.
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t g = 0; g < n; ++g) {
            spec.compositions.push_back({elements[f], elements[g], elements[mul[g][f]]});
        }
    }
    return spec;
}

CategorySpec free_spec(const std::string& name, const std::vector<std::string>& nodes,
                       const std::vector<GraphArrow>& arrows, int max_path_len) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    for (const auto& a : arrows) {
        if (!index.count(a.src) || !index.count(a.tgt)) {
            raise(ErrorCode::DanglingReference, "arrow '" + a.name + "' references unknown node");
        }
    }

    // Paths, breadth-first by length; a path longer than the node count means
    // a cycle, and the free category on a cyclic graph is infinite.
    struct Path {
        std::vector<std::size_t> arrows; // indices, in diagram order
        std::size_t src, tgt;
    };
    std::vector<Path> paths;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        paths.push_back({{i}, index.at(arrows[i].src), index.at(arrows[i].tgt)});
    }
    for (std::size_t head = 0; head < paths.size(); ++head) {
        Path p = paths[head];
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            if (index.at(arrows[i].src) != p.tgt) continue;
            // A path with more edges than nodes repeats a node, so the graph
            // is cyclic and the free category is infinite.
            if (p.arrows.size() + 1 > nodes.size() ||
                static_cast<int>(p.arrows.size()) + 1 > max_path_len) {
                raise(ErrorCode::CapExceeded,
                      "path length exceeds " + std::to_string(max_path_len) +
                          " (cyclic graph or cap too small)");
            }
            Path q = p;
            q.arrows.push_back(i);
            q.tgt = index.at(arrows[i].tgt);
            paths.push_back(q);
        }
    }

    auto path_name = [&](const Path& p) {
        std::string s = "p";
        for (std::size_t i : p.arrows) s += "_" + arrows[i].name;
        return s;
    };

    CategorySpec spec;
    spec.name = name;
    spec.objects = nodes;
    for (const auto& node : nodes) spec.morphisms.push_back({"id_" + node, node, node});
    std::map<std::vector<std::size_t>, std::string> by_arrows;
    for (const auto& p : paths) {
        std::string id = path_name(p);
        spec.morphisms.push_back({id, nodes[p.src], nodes[p.tgt]});
        by_arrows[p.arrows] = id;
    }
    for (const auto& node : nodes) spec.identities.emplace_back(node, "id_" + node);

    auto concat_name = [&](const Path& a, const Path& b) {
        std::vector<std::size_t> joined = a.arrows;
        joined.insert(joined.end(), b.arrows.begin(), b.arrows.end());
        auto it = by_arrows.find(joined);
        if (it == by_arrows.end()) {
            raise(ErrorCode::CapExceeded, "composite path exceeds the path-length cap");
        }
        return it->second;
    };
    // identities compose with everything; paths concatenate.
    for (const auto& node : nodes) {
        spec.compositions.push_back({"id_" + node, "id_" + node, "id_" + node});
    }
    for (const auto& p : paths) {
        std::string id = by_arrows.at(p.arrows);
        spec.compositions.push_back({"id_" + nodes[p.src], id, id});
        spec.compositions.push_back({id, "id_" + nodes[p.tgt], id});
        for (const auto& q : paths) {
            if (q.src == p.tgt) {
                spec.compositions.push_back({id, by_arrows.at(q.arrows), concat_name(p, q)});
            }
        }
    }
    return spec;
}

CategorySpec terminal_spec() {
    CategorySpec spec;
    spec.name = "TERMINAL";
    spec.objects = {"*"};
    spec.morphisms.push_back({"id", "*", "*"});
    spec.identities.emplace_back("*", "id");
    spec.compositions.push_back({"id", "id", "id"});
    return spec;
}

CategoryHandle build(const CategorySpec& spec) {
    ValidationReport report;
    auto cat = FiniteCategory::validate(spec, report);
    if (!cat) {
        raise(ErrorCode::InvalidInput,
              "generated category '" + spec.name + "' failed validation:\n" + report.to_text());
    }
    return cat;
}

FinsetFixture finset_fixture(int max_size) {
    FinsetFixture fx;
    fx.max_size = max_size;
    fx.cat = build(finset_spec(max_size));
    fx.object_size.resize(fx.cat->object_count());
    for (int n = 0; n <= max_size; ++n) {
        fx.object_size[fx.cat->object_by_name(finset_object_name(n))->index] =
            static_cast<std::uint8_t>(n);
    }
    fx.morphism_values.resize(fx.cat->morphism_count());
    for (int m = 0; m <= max_size; ++m) {
        for (int n = 0; n <= max_size; ++n) {
            for (auto& v : all_functions(m, n)) {
                auto id = fx.cat->morphism_by_name(finset_morphism_name(m, n, v));
                fx.morphism_values[id->index] = v;
            }
        }
    }
    return fx;
}

FintopFixture fintop_fixture(int max_points) {
    FintopFixture fx;
    fx.max_points = max_points;
    fx.cat = build(fintop_spec(max_points));
    FintopObjects objs = fintop_objects(max_points);
    fx.object_points.resize(fx.cat->object_count());
    fx.object_topology.resize(fx.cat->object_count());
    for (std::size_t i = 0; i < objs.names.size(); ++i) {
        auto id = fx.cat->object_by_name(objs.names[i]);
        fx.object_points[id->index] = static_cast<std::uint8_t>(objs.points[i]);
        fx.object_topology[id->index] = objs.topology[i];
    }
    fx.morphism_values.resize(fx.cat->morphism_count());
    for (std::size_t i = 0; i < objs.names.size(); ++i) {
        for (std::size_t j = 0; j < objs.names.size(); ++j) {
            for (auto& v : all_functions(objs.points[i], objs.points[j])) {
                auto id = fx.cat->morphism_by_name(
                    fintop_morphism_name(objs.names[i], objs.names[j], v));
                if (id) fx.morphism_values[id->index] = v;
            }
        }
    }
    return fx;
}

CategoryHandle b2_lattice() {
    return build(poset_spec("B2", {"bot", "a", "b", "top"},
                            {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}}));
}

CategoryHandle z2_group() {
    return build(group_spec("Z2", {"e", "s"}, {{"e", "s"}, {"s", "e"}}));
}

Functor inclusion(CategoryHandle sub, CategoryHandle super) {
    FunctorSpec spec;
    spec.name = "incl_" + sub->name() + "_" + super->name();
    for (std::uint32_t i = 0; i < sub->object_count(); ++i) {
        const std::string& name = sub->object_name(ObjId{i});
        if (!super->object_by_name(name)) {
            raise(ErrorCode::NotAFunctor,
                  "object '" + name + "' of " + sub->name() + " not present in " + super->name());
        }
        spec.object_map.emplace_back(name, name);
    }
    for (std::uint32_t i = 0; i < sub->morphism_count(); ++i) {
        const std::string& name = sub->morphism_name(MorId{i});
        if (!super->morphism_by_name(name)) {
            raise(ErrorCode::NotAFunctor,
                  "morphism '" + name + "' of " + sub->name() + " not present in " +
                      super->name());
        }
        spec.morphism_map.emplace_back(name, name);
    }
    ValidationReport report;
    auto fun = Functor::validate(spec, sub, super, report);
    if (!fun) {
        raise(ErrorCode::NotAFunctor,
              "inclusion of " + sub->name() + " into " + super->name() +
                  " is not structure-preserving:\n" + report.to_text());
    }
    return *fun;
}

Functor incl_finsurj12_finset04() {
    return inclusion(build(finsurj_spec({1, 2})), build(finset_spec(4)));
}

Functor hom_functor(CategoryHandle cat, ObjId base, const FinsetFixture& target) {
    FunctorSpec spec;
    spec.name = "hom_" + cat->name() + "_" + cat->object_name(base);

    const auto n_obj = cat->object_count();
    std::vector<int> hom_size(n_obj);
    for (std::uint32_t x = 0; x < n_obj; ++x) {
        const auto& h = cat->hom(base, ObjId{x});
        if (static_cast<int>(h.size()) > target.max_size) {
            raise(ErrorCode::HomSetTooLarge,
                  "hom(" + cat->object_name(base) + ", " + cat->object_name(ObjId{x}) + ") has " +
                      std::to_string(h.size()) + " elements; target caps at " +
                      std::to_string(target.max_size));
        }
        hom_size[x] = static_cast<int>(h.size());
        spec.object_map.emplace_back(cat->object_name(ObjId{x}),
                                     finset_object_name(hom_size[x]));
    }
    for (std::uint32_t m = 0; m < cat->morphism_count(); ++m) {
        MorId f{m};
        ObjId x = cat->src(f), y = cat->tgt(f);
        const auto& hx = cat->hom(base, x);
        const auto& hy = cat->hom(base, y);
        std::vector<std::uint8_t> values(hx.size());
        for (std::size_t i = 0; i < hx.size(); ++i) {
            MorId image = cat->compose(hx[i], f); // postcomposition: β ↦ f∘β
            auto pos = std::find(hy.begin(), hy.end(), image);
            values[i] = static_cast<std::uint8_t>(pos - hy.begin());
        }
        spec.morphism_map.emplace_back(
            cat->morphism_name(f),
            finset_morphism_name(hom_size[x.index], hom_size[y.index], values));
    }

    ValidationReport report;
    auto fun = Functor::validate(spec, cat, target.cat, report);
    if (!fun) {
        raise(ErrorCode::InvalidInput,
              "hom functor construction produced an invalid functor:\n" + report.to_text());
    }
    return *fun;
}

Functor forgetful_fintop_to_finset(const FintopFixture& top, const FinsetFixture& set) {
    FunctorSpec spec;
    spec.name = "forget_" + top.cat->name() + "_" + set.cat->name();
    for (std::uint32_t x = 0; x < top.cat->object_count(); ++x) {
        if (top.object_points[x] > set.max_size) {
            raise(ErrorCode::CapExceeded, "space has more points than the finset cap");
        }
        spec.object_map.emplace_back(top.cat->object_name(ObjId{x}),
                                     finset_object_name(top.object_points[x]));
    }
    for (std::uint32_t m = 0; m < top.cat->morphism_count(); ++m) {
        MorId f{m};
        spec.morphism_map.emplace_back(
            top.cat->morphism_name(f),
            finset_morphism_name(top.object_points[top.cat->src(f).index],
                                 top.object_points[top.cat->tgt(f).index],
                                 top.morphism_values[m]));
    }
    ValidationReport report;
    auto fun = Functor::validate(spec, top.cat, set.cat, report);
    if (!fun) {
        raise(ErrorCode::InvalidInput,
              "forgetful functor construction produced an invalid functor:\n" + report.to_text());
    }
    return *fun;
}

NegativeTightnessFixture negative_tightness_fixture() {
    CategorySpec src;
    src.name = "NEGSRC";
    src.objects = {"a", "b", "t"};
    src.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"id_t", "t", "t"},
                     {"f", "a", "t"},   {"g", "b", "t"}};
    src.identities = {{"a", "id_a"}, {"b", "id_b"}, {"t", "id_t"}};
    src.compositions = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"},
                        {"id_t", "id_t", "id_t"}, {"id_a", "f", "f"},
                        {"f", "id_t", "f"},       {"id_b", "g", "g"},
                        {"g", "id_t", "g"}};

    CategorySpec tgt;
    tgt.name = "WALKISO";
    tgt.objects = {"x", "y"};
    tgt.morphisms = {{"id_x", "x", "x"}, {"id_y", "y", "y"}, {"u", "x", "y"}, {"u_inv", "y", "x"}};
    tgt.identities = {{"x", "id_x"}, {"y", "id_y"}};
    tgt.compositions = {{"id_x", "id_x", "id_x"}, {"id_y", "id_y", "id_y"},
                        {"id_x", "u", "u"},       {"u", "id_y", "u"},
                        {"id_y", "u_inv", "u_inv"}, {"u_inv", "id_x", "u_inv"},
                        {"u", "u_inv", "id_x"},   {"u_inv", "u", "id_y"}};

    NegativeTightnessFixture fx;
    fx.source = build(src);
    fx.target = build(tgt);

    FunctorSpec fun;
    fun.name = "NEGF";
    fun.object_map = {{"a", "x"}, {"b", "y"}, {"t", "y"}};
    fun.morphism_map = {
        {"id_a", "id_x"}, {"id_b", "id_y"}, {"id_t", "id_y"}, {"f", "u"}, {"g", "id_y"}};
    ValidationReport report;
    auto validated = Functor::validate(fun, fx.source, fx.target, report);
    if (!validated) {
        raise(ErrorCode::InvalidInput,
              "negative fixture functor failed validation:\n" + report.to_text());
    }
    fx.functor = *validated;
    return fx;
}

std::uint64_t fibered_product_size(const FinsetFixture& fixture, Cospan c) {
    const auto& f = fixture.morphism_values[c.left.index];
    const auto& g = fixture.morphism_values[c.right.index];
    std::uint64_t size = 0;
    for (auto x : f) {
        for (auto y : g) {
            if (x == y) size++;
        }
    }
    return size;
}

Span fibered_product_oracle(const FinsetFixture& fixture, Cospan c) {
    const FiniteCategory& cat = *fixture.cat;
    if (!is_valid_cospan(cat, c)) raise(ErrorCode::InvalidInput, "not a cospan");
    const auto& f = fixture.morphism_values[c.left.index];
    const auto& g = fixture.morphism_values[c.right.index];

    std::vector<std::pair<std::uint8_t, std::uint8_t>> elements;
    for (std::uint8_t x = 0; x < f.size(); ++x) {
        for (std::uint8_t y = 0; y < g.size(); ++y) {
            if (f[x] == g[y]) elements.emplace_back(x, y);
        }
    }
    if (static_cast<int>(elements.size()) > fixture.max_size) {
        raise(ErrorCode::ApexExceedsCap,
              "fibered product has " + std::to_string(elements.size()) +
                  " elements; category caps at " + std::to_string(fixture.max_size));
    }

    const int left_size = fixture.object_size[left_foot(cat, c).index];
    const int right_size = fixture.object_size[right_foot(cat, c).index];
    std::vector<std::uint8_t> proj_l(elements.size()), proj_r(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        proj_l[i] = elements[i].first;
        proj_r[i] = elements[i].second;
    }
    auto left = cat.morphism_by_name(
        finset_morphism_name(static_cast<int>(elements.size()), left_size, proj_l));
    auto right = cat.morphism_by_name(
        finset_morphism_name(static_cast<int>(elements.size()), right_size, proj_r));
    return Span{*left, *right};
}

Span fibered_product_oracle(const FintopFixture& fixture, Cospan c) {
    const FiniteCategory& cat = *fixture.cat;
    if (!is_valid_cospan(cat, c)) raise(ErrorCode::InvalidInput, "not a cospan");
    const auto& f = fixture.morphism_values[c.left.index];
    const auto& g = fixture.morphism_values[c.right.index];
    const ObjId lf = left_foot(cat, c), rf = right_foot(cat, c);
    const int lp = fixture.object_points[lf.index], rp = fixture.object_points[rf.index];

    std::vector<std::pair<int, int>> elements;
    for (int x = 0; x < lp; ++x) {
        for (int y = 0; y < rp; ++y) {
            if (f[x] == g[y]) elements.emplace_back(x, y);
        }
    }
    if (static_cast<int>(elements.size()) > fixture.max_points) {
        raise(ErrorCode::ApexExceedsCap,
              "fibered product has " + std::to_string(elements.size()) +
                  " points; category caps at " + std::to_string(fixture.max_points));
    }

    // Product topology on lp×rp points: all unions of open rectangles U×V.
    auto grid_mask = [&](std::uint32_t u, std::uint32_t v) {
        std::uint64_t mask = 0;
        for (int x = 0; x < lp; ++x) {
            for (int y = 0; y < rp; ++y) {
                if ((u & (1u << x)) && (v & (1u << y))) mask |= (1ull << (x * rp + y));
            }
        }
        return mask;
    };
    std::set<std::uint64_t> product_opens;
    for (std::uint32_t u : fixture.object_topology[lf.index]) {
        for (std::uint32_t v : fixture.object_topology[rf.index]) {
            product_opens.insert(grid_mask(u, v));
        }
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> current(product_opens.begin(), product_opens.end());
        for (std::uint64_t a : current) {
            for (std::uint64_t b : current) {
                if (product_opens.insert(a | b).second) grew = true;
            }
        }
    }

    // Subspace topology: intersect with the fibered product, re-indexed by
    // the lex order of its elements.
    std::set<std::uint32_t> subspace;
    for (std::uint64_t open : product_opens) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            auto [x, y] = elements[i];
            if (open & (1ull << (x * rp + y))) mask |= (1u << i);
        }
        subspace.insert(mask);
    }
    std::vector<std::uint32_t> family(subspace.begin(), subspace.end());

    // Locate the space with exactly this topology.
    std::optional<ObjId> apex_obj;
    for (std::uint32_t i = 0; i < cat.object_count(); ++i) {
        if (fixture.object_points[i] == static_cast<int>(elements.size()) &&
            fixture.object_topology[i] == family) {
            apex_obj = ObjId{i};
            break;
        }
    }
    if (!apex_obj) {
        raise(ErrorCode::ApexExceedsCap, "subspace topology not found among catalog spaces");
    }

    std::vector<std::uint8_t> proj_l(elements.size()), proj_r(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        proj_l[i] = static_cast<std::uint8_t>(elements[i].first);
        proj_r[i] = static_cast<std::uint8_t>(elements[i].second);
    }
    auto left = cat.morphism_by_name(fintop_morphism_name(
        cat.object_name(*apex_obj), cat.object_name(lf), proj_l));
    auto right = cat.morphism_by_name(fintop_morphism_name(
        cat.object_name(*apex_obj), cat.object_name(rf), proj_r));
    if (!left || !right) {
        raise(ErrorCode::InvalidInput, "oracle projections are not continuous catalog morphisms");
    }
    return Span{*left, *right};
}

} // namespace spanforge::catalog
