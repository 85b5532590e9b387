#pragma once

#include "jooip/lucid_ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jooip::lucid {

/// Lucid variants that may tag an embedded segment.
enum class DialectTag { GIPL, IndexicalLucid, JLucid, ObjectiveLucid, Lucx };

const char* to_string(DialectTag tag);

/// Accepts exactly the variant identifiers; the empty string is GIPL.
std::optional<DialectTag> parse_dialect(std::string_view name);

/// Valid identifiers joined for diagnostics.
std::string dialect_names();

struct ParseOptions {
    /// Whether first/next/fby/wvr/upon/asa are accepted.
    bool indexical = true;
};

/// Parses one complete Lucid expression. `@.d E` is read as `@[d:E]` and a
/// trailing `fi` after an else branch is optional.
ExprPtr parse_gipl(std::string_view text, const ParseOptions& options = {});

/// Result of dispatching a segment to its variant front end.
struct SegmentParse {
    ExprPtr ast;               // GIPL plus dot notation, ids numbered
    DialectTag dialect = DialectTag::GIPL;
    bool dot_notation = false; // object access allowed by the variant
    std::vector<std::string> warnings;
};

/// Parses `text` under the variant named by `tag` and desugars Indexical
/// operators. Throws CompileError naming the valid tags when `tag` is unknown.
SegmentParse parse_segment(std::string_view tag, std::string_view text);

}  // namespace jooip::lucid
