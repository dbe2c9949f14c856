#include "spanforge/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spanforge/errors.hpp"

namespace spanforge::io {

using json = nlohmann::ordered_json;
using ordered_json = nlohmann::ordered_json;

namespace {

const json& require(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) {
        raise(ErrorCode::ParseError, std::string(what) + ": missing key '" + key + "'");
    }
    return *it;
}

std::string require_string(const json& j, const char* key, const char* what) {
    const json& v = require(j, key, what);
    if (!v.is_string()) {
        raise(ErrorCode::ParseError, std::string(what) + ": key '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

} // namespace

CategorySpec parse_category(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) raise(ErrorCode::ParseError, "category file is not valid JSON");
    if (!j.is_object()) raise(ErrorCode::ParseError, "category file must be a JSON object");

    CategorySpec spec;
    spec.name = require_string(j, "name", "category");

    const json& objects = require(j, "objects", "category");
    if (!objects.is_array()) raise(ErrorCode::ParseError, "'objects' must be an array");
    for (const auto& o : objects) {
        if (!o.is_string()) raise(ErrorCode::ParseError, "'objects' entries must be strings");
        spec.objects.push_back(o.get<std::string>());
    }

    const json& morphisms = require(j, "morphisms", "category");
    if (!morphisms.is_array()) raise(ErrorCode::ParseError, "'morphisms' must be an array");
    for (const auto& m : morphisms) {
        if (!m.is_object()) raise(ErrorCode::ParseError, "'morphisms' entries must be objects");
        spec.morphisms.push_back({require_string(m, "id", "morphism"),
                                  require_string(m, "src", "morphism"),
                                  require_string(m, "tgt", "morphism")});
    }

    const json& identities = require(j, "identities", "category");
    if (!identities.is_object()) raise(ErrorCode::ParseError, "'identities' must be an object");
    for (const auto& [obj, mor] : identities.items()) {
        if (!mor.is_string()) raise(ErrorCode::ParseError, "'identities' values must be strings");
        spec.identities.emplace_back(obj, mor.get<std::string>());
    }

    const json& comp = require(j, "composition", "category");
    if (!comp.is_array()) raise(ErrorCode::ParseError, "'composition' must be an array");
    for (const auto& c : comp) {
        if (!c.is_object()) raise(ErrorCode::ParseError, "'composition' entries must be objects");
        spec.compositions.push_back({require_string(c, "first", "composition"),
                                     require_string(c, "then", "composition"),
                                     require_string(c, "equals", "composition")});
    }
    return spec;
}

std::string serialize(const CategorySpec& spec) {
    ordered_json j;
    j["name"] = spec.name;
    j["objects"] = spec.objects;
    j["morphisms"] = ordered_json::array();
    for (const auto& m : spec.morphisms) {
        j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
    }
    ordered_json ids = ordered_json::object();
    for (const auto& [obj, mor] : spec.identities) ids[obj] = mor;
    j["identities"] = ids;
    j["composition"] = ordered_json::array();
    for (const auto& c : spec.compositions) {
        j["composition"].push_back({{"first", c.first}, {"then", c.then}, {"equals", c.equals}});
    }
    return j.dump(2) + "\n";
}

FunctorFile parse_functor(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) raise(ErrorCode::ParseError, "functor file is not valid JSON");
    if (!j.is_object()) raise(ErrorCode::ParseError, "functor file must be a JSON object");

    FunctorFile file;
    file.spec.name = require_string(j, "name", "functor");
    file.source_path = require_string(j, "source", "functor");
    file.target_path = require_string(j, "target", "functor");

    const json& omap = require(j, "object_map", "functor");
    if (!omap.is_object()) raise(ErrorCode::ParseError, "'object_map' must be an object");
    for (const auto& [from, to] : omap.items()) {
        if (!to.is_string()) raise(ErrorCode::ParseError, "'object_map' values must be strings");
        file.spec.object_map.emplace_back(from, to.get<std::string>());
    }
    const json& mmap = require(j, "morphism_map", "functor");
    if (!mmap.is_object()) raise(ErrorCode::ParseError, "'morphism_map' must be an object");
    for (const auto& [from, to] : mmap.items()) {
        if (!to.is_string()) raise(ErrorCode::ParseError, "'morphism_map' values must be strings");
        file.spec.morphism_map.emplace_back(from, to.get<std::string>());
    }
    return file;
}

std::string serialize(const FunctorFile& file) {
    ordered_json j;
    j["name"] = file.spec.name;
    j["source"] = file.source_path;
    j["target"] = file.target_path;
    ordered_json omap = ordered_json::object();
    for (const auto& [from, to] : file.spec.object_map) omap[from] = to;
    j["object_map"] = omap;
    ordered_json mmap = ordered_json::object();
    for (const auto& [from, to] : file.spec.morphism_map) mmap[from] = to;
    j["morphism_map"] = mmap;
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << contents;
}

CategoryHandle load_category(const std::string& path) {
    CategorySpec spec = parse_category(read_file(path));
    ValidationReport report;
    auto cat = FiniteCategory::validate(spec, report);
    if (!cat) {
        raise(ErrorCode::InvalidInput, "category '" + path + "' failed validation:\n" +
                                           report.to_text());
    }
    return cat;
}

Functor load_functor(const std::string& path) {
    FunctorFile file = parse_functor(read_file(path));
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (dir / fp).string();
    };
    CategoryHandle source = load_category(resolve(file.source_path));
    CategoryHandle target = load_category(resolve(file.target_path));
    ValidationReport report;
    auto fun = Functor::validate(file.spec, source, target, report);
    if (!fun) {
        raise(ErrorCode::InvalidInput,
              "functor '" + path + "' failed validation:\n" + report.to_text());
    }
    return *fun;
}

void save_category(const FiniteCategory& cat, const std::string& path) {
    write_file(path, serialize(cat.to_spec()));
}

void save_functor(const Functor& fun, const std::string& source_path,
                  const std::string& target_path, const std::string& path) {
    FunctorFile file;
    file.spec = fun.to_spec();
    file.source_path = source_path;
    file.target_path = target_path;
    write_file(path, serialize(file));
}

} // namespace spanforge::io
