#pragma once

// Compilation of a whole hybrid unit: host parse, symbol tables, one Geer per
// embedded segment, and the member free-dimension fixpoint.

#include "jooip/geer.hpp"
#include "jooip/host_ast.hpp"
#include "jooip/lucid_parser.hpp"
#include "jooip/symbol_table.hpp"

#include <memory>
#include <string>
#include <vector>

namespace jooip {

struct SegmentInfo {
    std::size_t index = 0;
    std::string tag;
    std::string text;
    SourceLoc origin;               // where `text` starts in the host file
    std::string class_name;         // empty inside a free function
    std::string member;             // intensional member; empty for expression segments
    host::TypeRef member_type;
    bool static_context = false;
    std::vector<std::string> locals;   // method parameters and locals in scope
    lucid::DialectTag dialect = lucid::DialectTag::GIPL;
    std::shared_ptr<Geer> geer;
};

struct Program {
    host::Unit unit;
    SymbolTables tables;
    std::vector<SegmentInfo> segments;
    std::vector<std::string> warnings;

    const SegmentInfo& segment(std::size_t index) const { return segments.at(index - 1); }
    const SegmentInfo* member_segment(const std::string& class_name, const std::string& member) const;
};

/// Parses and compiles `source`. Throws CompileError, located in `file`.
std::unique_ptr<Program> compile_program(const std::string& source, const std::string& file = "<input>");

/// Finds every segment of `unit` with its host scope (not yet compiled).
std::vector<SegmentInfo> collect_segments(const host::Unit& unit);

/// Host identifiers a segment may capture.
HostEnv host_env_for(const host::Unit& unit, const std::vector<SegmentInfo>& segments, const SegmentInfo& segment);

/// Compiles every segment against its host scope and iterates member free
/// dimensions to a fixpoint. Dialect warnings are appended to `warnings`.
void compile_segments(const host::Unit& unit, std::vector<SegmentInfo>& segments, std::vector<std::string>& warnings);

}  // namespace jooip
