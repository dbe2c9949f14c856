// spanforge — command-line front end for the span-category toolkit.
//
// Exit codes: 0 = verdict true / success, 1 = verdict false (no pullback,
// not span tight, law violation, not invertible, composite undefined),
// 2 = input or validation error, 3 = search budget exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spanforge/budget.hpp"
#include "spanforge/catalog.hpp"
#include "spanforge/category.hpp"
#include "spanforge/errors.hpp"
#include "spanforge/io.hpp"
#include "spanforge/pullback.hpp"
#include "spanforge/report.hpp"
#include "spanforge/span.hpp"
#include "spanforge/span_category.hpp"

using namespace spanforge;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    bool json = false;
    SearchBudget budget;
};

MorId morphism_or_die(const FiniteCategory& cat, const std::string& name) {
    auto m = cat.morphism_by_name(name);
    if (!m) {
        raise(ErrorCode::InvalidInput,
              "no morphism named '" + name + "' in category '" + cat.name() + "'");
    }
    return *m;
}

ObjId object_or_die(const FiniteCategory& cat, const std::string& name) {
    auto o = cat.object_by_name(name);
    if (!o) {
        raise(ErrorCode::InvalidInput,
              "no object named '" + name + "' in category '" + cat.name() + "'");
    }
    return *o;
}

std::pair<std::string, std::string> split_pair(const std::string& arg) {
    auto comma = arg.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == arg.size()) {
        raise(ErrorCode::InvalidInput, "expected LEFT,RIGHT morphism pair, got '" + arg + "'");
    }
    return {arg.substr(0, comma), arg.substr(comma + 1)};
}

Cospan parse_cospan(const FiniteCategory& cat, const std::string& arg) {
    auto [l, r] = split_pair(arg);
    Cospan c{morphism_or_die(cat, l), morphism_or_die(cat, r)};
    if (!is_valid_cospan(cat, c)) {
        raise(ErrorCode::InvalidInput, "morphisms '" + l + "' and '" + r +
                                           "' do not share a target (not a cospan)");
    }
    return c;
}

Span parse_span(const FiniteCategory& cat, const std::string& arg) {
    auto [l, r] = split_pair(arg);
    Span s{morphism_or_die(cat, l), morphism_or_die(cat, r)};
    if (!is_valid_span(cat, s)) {
        raise(ErrorCode::InvalidInput,
              "morphisms '" + l + "' and '" + r + "' do not share a source (not a span)");
    }
    return s;
}

ordered_json span_json(const FiniteCategory& cat, Span s) {
    return {{"left", cat.morphism_name(s.left)},
            {"right", cat.morphism_name(s.right)},
            {"apex", cat.object_name(apex(cat, s))}};
}

int emit_report(const CheckReport& report, const Options& opt) {
    if (opt.json) {
        std::cout << report.to_json_string();
    } else {
        std::cout << report.to_text();
    }
    return report.verdict ? 0 : 1;
}

int emit_span_list(const FiniteCategory& cat, const std::vector<Span>& spans, const Options& opt,
                   const std::string& what) {
    if (opt.json) {
        ordered_json j;
        j["count"] = spans.size();
        j["spans"] = ordered_json::array();
        for (Span s : spans) j["spans"].push_back(span_json(cat, s));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << what << ": " << spans.size() << " found\n";
        for (Span s : spans) std::cout << "  " << describe(cat, s) << "\n";
    }
    return spans.empty() ? 1 : 0;
}

LawCheckConfig parse_law_config(const std::string& mode, std::uint64_t samples,
                                std::uint64_t seed, bool seed_set) {
    LawCheckConfig config;
    if (mode == "exhaustive") {
        config.mode = LawCheckConfig::Mode::Exhaustive;
    } else if (mode == "sampled") {
        if (!seed_set) {
            raise(ErrorCode::InvalidInput, "sampled mode requires --seed");
        }
        if (samples == 0) {
            raise(ErrorCode::InvalidInput, "sampled mode requires --samples > 0");
        }
        config.mode = LawCheckConfig::Mode::Sampled;
        config.sample_count = samples;
        config.seed = seed;
    } else {
        raise(ErrorCode::InvalidInput, "mode must be 'exhaustive' or 'sampled'");
    }
    return config;
}

// `gen hom` and the forgetful branch of `gen inclusion` need the value-table
// metadata of a generated finset/fintop file; regenerate from the caps read
// off the object names and insist the file matches the generator bit for bit.
int detect_finset_cap(const FiniteCategory& cat) {
    int cap = -1;
    for (std::uint32_t i = 0; i < cat.object_count(); ++i) {
        const std::string& name = cat.object_name(ObjId{i});
        if (name.size() < 2 || name[0] != 'S') return -1;
        int n = std::atoi(name.c_str() + 1);
        cap = std::max(cap, n);
    }
    return cap;
}

catalog::FinsetFixture regenerated_finset(const std::string& path) {
    CategorySpec on_disk = io::parse_category(io::read_file(path));
    int cap = -1;
    for (const auto& o : on_disk.objects) {
        if (o.size() < 2 || o[0] != 'S') {
            raise(ErrorCode::InvalidInput, "'" + path + "' is not a gen finset output");
        }
        cap = std::max(cap, std::atoi(o.c_str() + 1));
    }
    auto fixture = catalog::finset_fixture(cap);
    if (io::serialize(on_disk) != io::serialize(fixture.cat->to_spec())) {
        raise(ErrorCode::InvalidInput,
              "'" + path + "' does not match the gen finset output for max size " +
                  std::to_string(cap));
    }
    return fixture;
}

int run(int argc, char** argv) {
    CLI::App app{"spanforge — pullbacks, span tightness, and generalized span categories "
                 "on finite categories"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("SPANFORGE_BUDGET")) {
        opt.budget.max_candidates = std::strtoull(env, nullptr, 10);
    }
    app.add_flag("--json", opt.json, "emit machine-readable JSON reports");
    app.add_option("--budget", opt.budget.max_candidates,
                   "cap on candidate spans per query (env SPANFORGE_BUDGET)");

    // validate
    std::string validate_path;
    auto* cmd_validate = app.add_subcommand("validate", "validate a category or functor file");
    cmd_validate->add_option("file", validate_path)->required();

    // compose: morphisms or span classes
    std::string compose_path, compose_f, compose_g, compose_span1, compose_span2;
    bool compose_force = false;
    auto* cmd_compose =
        app.add_subcommand("compose", "compose two morphisms (--f,--g on a category file) or "
                                      "two span classes (--span1,--span2 on a functor file)");
    cmd_compose->add_option("file", compose_path)->required();
    cmd_compose->add_option("--f", compose_f, "first morphism (applied first)");
    cmd_compose->add_option("--g", compose_g, "second morphism (applied after --f)");
    cmd_compose->add_option("--span1", compose_span1, "left class representative LEFT,RIGHT");
    cmd_compose->add_option("--span2", compose_span2, "right class representative LEFT,RIGHT");
    cmd_compose->add_flag("--force", compose_force,
                          "compose even when the functor is not span tight (diagnostic)");

    // hom
    std::string hom_path, hom_a, hom_b;
    auto* cmd_hom = app.add_subcommand("hom", "list hom(a, b)");
    cmd_hom->add_option("file", hom_path)->required();
    cmd_hom->add_option("a", hom_a)->required();
    cmd_hom->add_option("b", hom_b)->required();

    // invert
    std::string invert_path, invert_f;
    auto* cmd_invert = app.add_subcommand("invert", "two-sided inverse of a morphism");
    cmd_invert->add_option("file", invert_path)->required();
    cmd_invert->add_option("morphism", invert_f)->required();

    // pullback
    std::string pb_path, pb_cospan;
    bool pb_all = false, pb_canonical = false;
    auto* cmd_pullback = app.add_subcommand("pullback", "find pullbacks of a cospan");
    cmd_pullback->add_option("file", pb_path)->required();
    cmd_pullback->add_option("--cospan", pb_cospan, "LEFT,RIGHT morphism names")->required();
    cmd_pullback->add_flag("--all", pb_all, "list every pullback (default)");
    cmd_pullback->add_flag("--canonical", pb_canonical, "print only the canonical representative");

    // has-pullbacks
    std::string hp_path;
    auto* cmd_hp = app.add_subcommand("has-pullbacks", "decide whether every cospan has a pullback");
    cmd_hp->add_option("file", hp_path)->required();

    // preserves
    std::string pres_path;
    auto* cmd_pres = app.add_subcommand("preserves", "check pullback preservation of a functor");
    cmd_pres->add_option("file", pres_path)->required();

    // fpullback
    std::string fp_path, fp_cospan;
    auto* cmd_fp = app.add_subcommand("fpullback", "find F-pullbacks of a cospan in the source");
    cmd_fp->add_option("file", fp_path)->required();
    cmd_fp->add_option("--cospan", fp_cospan, "LEFT,RIGHT morphism names")->required();

    // span-tight
    std::string st_path;
    auto* cmd_st = app.add_subcommand("span-tight", "decide span tightness of a functor");
    cmd_st->add_option("file", st_path)->required();

    // check-laws
    std::string laws_path, laws_mode = "exhaustive";
    std::uint64_t laws_samples = 0, laws_seed = 0;
    bool laws_force = false;
    auto* cmd_laws = app.add_subcommand("check-laws", "verify the category laws of Span(C, F)");
    cmd_laws->add_option("file", laws_path)->required();
    cmd_laws->add_option("--mode", laws_mode, "exhaustive | sampled");
    cmd_laws->add_option("--samples", laws_samples, "instances per family when sampled");
    auto* seed_opt = cmd_laws->add_option("--seed", laws_seed, "PRNG seed (required when sampled)");
    cmd_laws->add_flag("--force", laws_force, "build Span(C, F) even when not span tight");

    // classic-equiv
    std::string ce_path;
    auto* cmd_ce = app.add_subcommand(
        "classic-equiv", "check Span(C, Id) composition against the classic Span(C) recipe");
    cmd_ce->add_option("file", ce_path)->required();

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate catalog fixtures");
    cmd_gen->require_subcommand(1);
    std::string gen_out;
    int gen_finset_size = 0;
    auto* gen_finset = cmd_gen->add_subcommand("finset", "truncated finite-set category");
    gen_finset->add_option("--max-size", gen_finset_size)->required()->check(CLI::Range(0, 4));
    gen_finset->add_option("-o,--output", gen_out)->required();

    std::vector<int> gen_sizes;
    auto* gen_finsurj = cmd_gen->add_subcommand("finsurj", "truncated surjections category");
    gen_finsurj->add_option("--sizes", gen_sizes, "object sizes, e.g. 1,2")
        ->required()
        ->delimiter(',');
    gen_finsurj->add_option("-o,--output", gen_out)->required();

    int gen_points = 0;
    auto* gen_fintop = cmd_gen->add_subcommand("fintop", "finite topological spaces");
    gen_fintop->add_option("--max-points", gen_points)->required()->check(CLI::Range(0, 3));
    gen_fintop->add_option("-o,--output", gen_out)->required();

    std::string gen_relation;
    auto* gen_poset = cmd_gen->add_subcommand("poset", "poset category from a relation file");
    gen_poset->add_option("--relation", gen_relation)->required();
    gen_poset->add_option("-o,--output", gen_out)->required();

    std::string gen_table;
    auto* gen_group = cmd_gen->add_subcommand("group", "one-object category from a group table");
    gen_group->add_option("--table", gen_table)->required();
    gen_group->add_option("-o,--output", gen_out)->required();

    std::string gen_graph;
    int gen_maxlen = 16;
    auto* gen_free = cmd_gen->add_subcommand("free", "free category on an acyclic graph");
    gen_free->add_option("--graph", gen_graph)->required();
    gen_free->add_option("--max-path-len", gen_maxlen);
    gen_free->add_option("-o,--output", gen_out)->required();

    std::string gen_hom_base, gen_hom_cat, gen_hom_target;
    auto* gen_hom = cmd_gen->add_subcommand("hom", "hom functor Hom(B,−) into a finset category");
    gen_hom->add_option("--base", gen_hom_base)->required();
    gen_hom->add_option("--cat", gen_hom_cat)->required();
    gen_hom->add_option("--target", gen_hom_target)->required();
    gen_hom->add_option("-o,--output", gen_out)->required();

    std::string gen_sub, gen_super;
    auto* gen_incl = cmd_gen->add_subcommand(
        "inclusion", "inclusion functor by name matching (or fintop→finset forgetful)");
    gen_incl->add_option("--sub", gen_sub)->required();
    gen_incl->add_option("--super", gen_super)->required();
    gen_incl->add_option("-o,--output", gen_out)->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_validate->parsed()) {
        std::string text = io::read_file(validate_path);
        ValidationReport report;
        // Category files carry "objects"; functor files carry "object_map".
        if (text.find("\"object_map\"") != std::string::npos) {
            io::FunctorFile file = io::parse_functor(text);
            std::filesystem::path dir = std::filesystem::path(validate_path).parent_path();
            auto resolve = [&](const std::string& p) {
                std::filesystem::path fp(p);
                return fp.is_absolute() ? fp.string() : (dir / fp).string();
            };
            CategoryHandle source = io::load_category(resolve(file.source_path));
            CategoryHandle target = io::load_category(resolve(file.target_path));
            Functor::validate(file.spec, source, target, report);
        } else {
            CategorySpec spec = io::parse_category(text);
            FiniteCategory::validate(spec, report);
        }
        if (opt.json) {
            std::cout << report.to_json_string();
        } else {
            std::cout << report.to_text();
        }
        return report.ok ? 0 : 1;
    }

    if (cmd_compose->parsed()) {
        bool span_route = !compose_span1.empty() || !compose_span2.empty();
        bool mor_route = !compose_f.empty() || !compose_g.empty();
        if (span_route == mor_route) {
            raise(ErrorCode::InvalidInput, "compose needs either --f/--g or --span1/--span2");
        }
        if (mor_route) {
            CategoryHandle cat = io::load_category(compose_path);
            MorId f = morphism_or_die(*cat, compose_f);
            MorId g = morphism_or_die(*cat, compose_g);
            MorId h = cat->compose(f, g); // throws NotComposable -> exit 2
            if (opt.json) {
                ordered_json j{{"result", cat->morphism_name(h)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << compose_g << "∘" << compose_f << " = " << cat->morphism_name(h)
                          << "\n";
            }
            return 0;
        }
        Functor fun = io::load_functor(compose_path);
        const FiniteCategory& base = *fun.source();
        Span s1 = parse_span(base, compose_span1);
        Span s2 = parse_span(base, compose_span2);
        SpanCategory sc = build_span_category(fun, opt.budget, compose_force);
        auto c1 = sc.class_index(s1), c2 = sc.class_index(s2);
        try {
            SpanClass result = sc.compose(sc.class_at(*c1), sc.class_at(*c2));
            if (opt.json) {
                ordered_json j{{"result", span_json(base, result.representative)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "[span1]∘[span2] = class of " << describe(base, result.representative)
                          << "\n";
            }
            return 0;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoFPullback) {
                std::cout << (opt.json ? std::string("{\n  \"result\": null\n}\n")
                                       : std::string(e.what()) + "\n");
                return 1;
            }
            throw;
        }
    }

    if (cmd_hom->parsed()) {
        CategoryHandle cat = io::load_category(hom_path);
        const auto& hs = cat->hom(object_or_die(*cat, hom_a), object_or_die(*cat, hom_b));
        if (opt.json) {
            ordered_json j;
            j["count"] = hs.size();
            j["morphisms"] = ordered_json::array();
            for (MorId m : hs) j["morphisms"].push_back(cat->morphism_name(m));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "hom(" << hom_a << ", " << hom_b << "): " << hs.size() << " morphisms\n";
            for (MorId m : hs) std::cout << "  " << cat->morphism_name(m) << "\n";
        }
        return 0;
    }

    if (cmd_invert->parsed()) {
        CategoryHandle cat = io::load_category(invert_path);
        auto inverse = cat->inverse(morphism_or_die(*cat, invert_f));
        if (opt.json) {
            ordered_json j{{"inverse", inverse ? ordered_json(cat->morphism_name(*inverse))
                                               : ordered_json(nullptr)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (inverse ? "inverse: " + cat->morphism_name(*inverse) : "NotIso") << "\n";
        }
        return inverse ? 0 : 1;
    }

    if (cmd_pullback->parsed()) {
        CategoryHandle cat = io::load_category(pb_path);
        Cospan c = parse_cospan(*cat, pb_cospan);
        auto pulls = find_pullbacks(*cat, c, opt.budget);
        if (pb_canonical && !pulls.empty()) {
            pulls = {canonicalize(*cat, pulls.front())};
        }
        (void)pb_all;
        return emit_span_list(*cat, pulls, opt, "pullbacks of " + describe(*cat, c));
    }

    if (cmd_hp->parsed()) {
        CategoryHandle cat = io::load_category(hp_path);
        return emit_report(has_pullbacks(*cat, opt.budget), opt);
    }

    if (cmd_pres->parsed()) {
        Functor fun = io::load_functor(pres_path);
        return emit_report(preserves_pullbacks(fun, opt.budget), opt);
    }

    if (cmd_fp->parsed()) {
        Functor fun = io::load_functor(fp_path);
        Cospan c = parse_cospan(*fun.source(), fp_cospan);
        auto fps = find_f_pullbacks(fun, c, opt.budget);
        return emit_span_list(*fun.source(), fps, opt,
                              "F-pullbacks of " + describe(*fun.source(), c));
    }

    if (cmd_st->parsed()) {
        Functor fun = io::load_functor(st_path);
        return emit_report(is_span_tight(fun, opt.budget), opt);
    }

    if (cmd_laws->parsed()) {
        Functor fun = io::load_functor(laws_path);
        LawCheckConfig config =
            parse_law_config(laws_mode, laws_samples, laws_seed, seed_opt->count() > 0);
        try {
            SpanCategory sc = build_span_category(fun, opt.budget, laws_force);
            return emit_report(check_category_laws(sc, config, opt.budget), opt);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotSpanTight) {
                std::cout << e.what() << "\n";
                return 1;
            }
            throw;
        }
    }

    if (cmd_ce->parsed()) {
        CategoryHandle cat = io::load_category(ce_path);
        return emit_report(classic_equivalence(*cat, opt.budget), opt);
    }

    if (gen_finset->parsed()) {
        io::write_file(gen_out, io::serialize(catalog::finset_spec(gen_finset_size)));
        return 0;
    }
    if (gen_finsurj->parsed()) {
        io::write_file(gen_out, io::serialize(catalog::finsurj_spec(gen_sizes)));
        return 0;
    }
    if (gen_fintop->parsed()) {
        io::write_file(gen_out, io::serialize(catalog::fintop_spec(gen_points)));
        return 0;
    }
    if (gen_poset->parsed()) {
        auto j = nlohmann::json::parse(io::read_file(gen_relation), nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("name") ||
            !j.contains("objects") || !j.contains("pairs")) {
            raise(ErrorCode::ParseError,
                  "relation file needs {\"name\", \"objects\": [...], \"pairs\": [[a,b],...]}");
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : j["pairs"]) pairs.emplace_back(p.at(0), p.at(1));
        io::write_file(gen_out, io::serialize(catalog::poset_spec(
                                    j["name"], j["objects"].get<std::vector<std::string>>(),
                                    pairs)));
        return 0;
    }
    if (gen_group->parsed()) {
        auto j = nlohmann::json::parse(io::read_file(gen_table), nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("name") ||
            !j.contains("elements") || !j.contains("table")) {
            raise(ErrorCode::ParseError,
                  "table file needs {\"name\", \"elements\": [...], \"table\": [[...],...]}");
        }
        io::write_file(gen_out,
                       io::serialize(catalog::group_spec(
                           j["name"], j["elements"].get<std::vector<std::string>>(),
                           j["table"].get<std::vector<std::vector<std::string>>>())));
        return 0;
    }
    if (gen_free->parsed()) {
        auto j = nlohmann::json::parse(io::read_file(gen_graph), nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("name") || !j.contains("nodes") ||
            !j.contains("arrows")) {
            raise(ErrorCode::ParseError,
                  "graph file needs {\"name\", \"nodes\": [...], \"arrows\": "
                  "[{\"name\",\"src\",\"tgt\"},...]}");
        }
        std::vector<catalog::GraphArrow> arrows;
        for (const auto& a : j["arrows"]) {
            arrows.push_back({a.at("name"), a.at("src"), a.at("tgt")});
        }
        io::write_file(gen_out, io::serialize(catalog::free_spec(
                                    j["name"], j["nodes"].get<std::vector<std::string>>(), arrows,
                                    gen_maxlen)));
        return 0;
    }
    if (gen_hom->parsed()) {
        CategoryHandle cat = io::load_category(gen_hom_cat);
        auto target = regenerated_finset(gen_hom_target);
        Functor fun = catalog::hom_functor(cat, object_or_die(*cat, gen_hom_base), target);
        io::save_functor(fun, gen_hom_cat, gen_hom_target, gen_out);
        return 0;
    }
    if (gen_incl->parsed()) {
        CategoryHandle sub = io::load_category(gen_sub);
        CategoryHandle super = io::load_category(gen_super);
        try {
            Functor fun = catalog::inclusion(sub, super);
            io::save_functor(fun, gen_sub, gen_super, gen_out);
            return 0;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAFunctor) throw;
            // fintop→finset forgetful convention: spaces T{n}_{k} to sets S{n}.
            if (detect_finset_cap(*super) < 0) throw;
            int points = 0;
            for (std::uint32_t i = 0; i < sub->object_count(); ++i) {
                const std::string& name = sub->object_name(ObjId{i});
                if (name.size() < 2 || name[0] != 'T') throw;
                points = std::max(points, std::atoi(name.c_str() + 1));
            }
            auto top = catalog::fintop_fixture(points);
            if (io::serialize(sub->to_spec()) != io::serialize(top.cat->to_spec())) throw;
            auto set = regenerated_finset(gen_super);
            Functor fun = catalog::forgetful_fintop_to_finset(top, set);
            io::save_functor(fun, gen_sub, gen_super, gen_out);
            return 0;
        }
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::BudgetExceeded: return 3;
            default: return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
