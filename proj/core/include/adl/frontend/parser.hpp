#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adl/frontend/ast.hpp"
#include "adl/frontend/lexer.hpp"

namespace adl::frontend {

/// Parses a token stream (which must end with end-of-input). Syntax errors are
/// recovered at the next `;` or `}` so that one pass reports every error.
Outcome<CompilationUnit> parse(const std::vector<Token>& tokens);

/// tokenize + parse. `file` names the unit in diagnostics and positions.
Outcome<CompilationUnit> parse_source(std::string_view source, std::string_view file);

/// Canonical text form of a unit. Comments are not preserved.
std::string pretty_print(const CompilationUnit& unit);

} // namespace adl::frontend
