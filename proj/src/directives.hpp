#pragma once

// Line-oriented "key: value" input shared by the variety and map readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace segrekit::detail {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

struct Directive {
  std::size_t line;
  std::size_t key_column;
  std::string key;
  std::string rest;
  std::size_t rest_column;
};

/// Strips comments and blank lines; ParseError for lines without ':'.
std::vector<Directive> read_directives(std::string_view text);

/// "a, b, c" as identifiers.
std::vector<std::string> parse_name_list(const Directive& d);
/// "x y, s t" as name pairs.
std::vector<std::pair<std::string, std::string>> parse_name_pairs(const Directive& d);

}  // namespace segrekit::detail
