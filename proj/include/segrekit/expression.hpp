#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

#include "segrekit/polynomial.hpp"

namespace segrekit {

/// Where a fragment of text sits in its source file (1-based).
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Name resolution and conj() semantics for parse_expression.
struct ExpressionEnv {
  VarContext context;
  /// Maps an identifier to its value; nullopt means unknown.
  std::function<std::optional<Polynomial>(std::string_view)> resolve;
  /// Applied to the argument of conj(...). Empty: conj is rejected.
  std::function<Polynomial(const Polynomial&)> conj;
};

/// Parses +, -, *, / (by nonzero constants), ^ (nonnegative integer
/// constants), parentheses, decimal or integer literals, the imaginary
/// unit i, identifiers and conj(...). Throws ParseError with positions
/// relative to pos.
Polynomial parse_expression(std::string_view text, const ExpressionEnv& env, SourcePos pos = {});

/// A constant expression such as "1/2-3/4*i".
GaussianRational parse_constant(std::string_view text, SourcePos pos = {});

bool is_identifier(std::string_view name);

}  // namespace segrekit
