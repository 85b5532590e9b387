#pragma once

#include "jooip/host_ast.hpp"

#include <string>
#include <string_view>

namespace jooip::host {

/// Parses a hybrid unit. Segments `/@#TAG ... @/` are cut out verbatim and
/// numbered from 1 in source order. Throws CompileError for unterminated or
/// nested segments and host syntax errors.
Unit parse_host(std::string_view text, const std::string& file = "<input>");

}  // namespace jooip::host
