#pragma once

// Per-class symbol tables of a hybrid unit, plus the `ffw` table that wraps
// top-level free functions.

#include "jooip/geer.hpp"
#include "jooip/host_ast.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jooip {

struct IdentifierSymbolEntry {
    enum class Kind { Field, Method, FreeFunction };

    std::string id;
    Kind kind = Kind::Field;
    bool is_host_member = true;
    int mapped_type = -1;              // type-map row, -1 when unmapped
    std::string owning_class;
    std::string decl_source;           // declaration text; Lucid source for intensional members
    bool is_static = false;
    host::Visibility visibility = host::Visibility::Default;
    std::optional<NodeId> ast_entry;           // segment root, intensional members only
    const Dictionary* lucid_dictionary = nullptr;
};

struct ClassSymbolTable {
    std::string class_name;
    std::optional<std::string> parent_name;
    std::vector<std::string> interface_names;
    std::map<std::string, IdentifierSymbolEntry> members;

    const IdentifierSymbolEntry* find(const std::string& id) const;
};

using SymbolTables = std::map<std::string, ClassSymbolTable>;

inline constexpr const char* kFreeFunctionTable = "ffw";

/// One table per class; intensional fields are entered with
/// is_host_member=false. Throws CompileError on duplicate classes, members
/// or free functions.
SymbolTables build_symbol_tables(const host::Unit& unit);

/// Checks that ast_entry and lucid_dictionary are set exactly for the
/// non-host members.
bool symbol_tables_consistent(const SymbolTables& tables);

}  // namespace jooip
