#ifndef SPANFORGE_IO_HPP
#define SPANFORGE_IO_HPP

#include <string>

#include "spanforge/category.hpp"

namespace spanforge::io {

/// Parses the category interchange format. Throws ParseError with the
/// offending key on malformed input; structural validity is checked later by
/// FiniteCategory::validate.
CategorySpec parse_category(const std::string& json_text);

/// Serializes bit-exactly: key order fixed, arrays in declaration order,
/// composable pairs exactly once in lexicographic (first, then) order,
/// 2-space indent, trailing newline.
std::string serialize(const CategorySpec& spec);

struct FunctorFile {
    FunctorSpec spec;
    std::string source_path; // as written in the file
    std::string target_path;
};

FunctorFile parse_functor(const std::string& json_text);
std::string serialize(const FunctorFile& file);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Loads and validates a category file. Throws ParseError (malformed JSON) or
/// InvalidInput carrying the validation report text.
CategoryHandle load_category(const std::string& path);

/// Loads a functor file, resolving its source/target category paths relative
/// to the functor file's directory, and validates everything.
Functor load_functor(const std::string& path);

void save_category(const FiniteCategory& cat, const std::string& path);
void save_functor(const Functor& fun, const std::string& source_path,
                  const std::string& target_path, const std::string& path);

} // namespace spanforge::io

#endif
