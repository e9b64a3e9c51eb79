#include "directives.hpp"

#include <cctype>
#include <sstream>

#include "segrekit/errors.hpp"
#include "segrekit/expression.hpp"

namespace segrekit::detail {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto at = s.find(sep, start);
    out.push_back(std::string(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<Directive> read_directives(std::string_view text) {
  std::vector<Directive> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::size_t indent = line.find_first_not_of(" \t");
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected a 'key: value' line", line_no, indent + 1);
    out.push_back({line_no, indent + 1, trim(std::string_view(line).substr(0, colon)), line.substr(colon + 1), colon + 2});
  }
  return out;
}

std::vector<std::string> parse_name_list(const Directive& d) {
  std::vector<std::string> out;
  std::size_t column = d.rest_column;
  for (const auto& piece : split(d.rest, ',')) {
    std::string t = trim(piece);
    if (!is_identifier(t)) {
      auto offset = piece.find_first_not_of(" \t");
      throw ParseError("invalid variable name '" + t + "'", d.line, column + (offset == std::string::npos ? 0 : offset));
    }
    out.push_back(t);
    column += piece.size() + 1;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_name_pairs(const Directive& d) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t column = d.rest_column;
  for (const auto& group : split(d.rest, ',')) {
    std::istringstream in{group};
    std::string x, y, extra;
    if (!(in >> x >> y) || (in >> extra) || !is_identifier(x) || !is_identifier(y)) {
      throw ParseError("each group needs exactly two names", d.line, column);
    }
    out.emplace_back(x, y);
    column += group.size() + 1;
  }
  return out;
}

}  // namespace segrekit::detail
