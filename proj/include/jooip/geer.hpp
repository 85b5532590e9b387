#pragma once

// The compiled intensional unit handed to the engine: the desugared AST, its
// definition environment, the host identifiers it captures, and a static
// bound on the dimensions each node can observe.

#include "jooip/dimset.hpp"
#include "jooip/lucid_ast.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace jooip {

using lucid::NodeId;

/// Host declarations visible from an embedded segment: fields of the
/// enclosing class, parameters and locals of the enclosing method, and the
/// free functions of the unit.
struct HostEnv {
    struct Field {
        std::string name;
        bool intensional = false;
        bool is_static = false;
    };
    struct FreeFunction {
        std::string name;
        std::size_t arity = 0;
    };

    std::string class_name;
    std::vector<Field> fields;
    std::vector<std::string> locals;
    std::vector<FreeFunction> free_functions;
    bool static_context = false;
};

enum class CaptureKind { HostField, IntensionalMember, MethodLocal };

const char* to_string(CaptureKind kind);

struct Capture {
    std::string name;
    CaptureKind kind = CaptureKind::HostField;
    friend bool operator==(const Capture&, const Capture&) = default;
};

enum class RecordKind { Dimension, Variable, Function, HostMember, HostClass, FreeFunction };

const char* to_string(RecordKind kind);

struct DictionaryEntry {
    std::string scope;
    std::string id;
    RecordKind kind = RecordKind::Variable;
    NodeId def_node = 0;   // defining expression, when there is one
    std::vector<std::string> dim_params;
    std::vector<std::string> params;
};

/// Definition environment: one entry per (scope, identifier).
class Dictionary {
public:
    /// Throws CompileError "multiply defined identifier" on a duplicate.
    void add(DictionaryEntry entry, SourceLoc loc = {});

    const DictionaryEntry* find(const std::string& scope, const std::string& id) const;
    const std::vector<DictionaryEntry>& entries() const { return entries_; }

    /// Sorted `scope identifier kind` lines.
    std::vector<std::string> dump() const;

private:
    std::vector<DictionaryEntry> entries_;
};

/// What an Identifier or Call node refers to.
struct Binding {
    enum class Kind { Variable, Param, Capture, Function, FreeFunction };
    Kind kind = Kind::Variable;
    NodeId where_node = 0;     // Where that declares the variable/function
    std::size_t decl_index = 0;
    std::size_t index = 0;     // parameter index or capture index
    std::string name;
};

/// A dimension occurrence: a declared name, or a dimension parameter of an
/// enclosing function that is substituted per call.
struct DimRef {
    std::string name;
    bool is_param = false;
    NodeId where_node = 0;     // function's declaring Where
    std::size_t decl_index = 0;
    std::size_t param_index = 0;
};

struct CompileOptions {
    std::string source;          // hashed into the digest
    bool dot_notation = true;
    std::string label = "seg";   // root scope name in the dictionary dump
    std::vector<std::string> ambient_dimensions;  // declared outside the segment
};

/// Given an intensional member name, its current free-dimension estimate.
using MemberDims = std::function<DimSet(const std::string&)>;

class Geer {
public:
    lucid::ExprPtr root;
    Dictionary dictionary;
    std::vector<Capture> captures;
    std::map<NodeId, DimSet> free_dims;
    std::string digest;
    std::string label;
    std::string host_class;

    // Resolution tables for the evaluator.
    std::unordered_map<NodeId, Binding> bindings;
    std::unordered_map<NodeId, std::vector<DimRef>> dims;   // TagQuery, At, Call
    std::unordered_map<NodeId, const lucid::Expr*> nodes;

    /// Throws InternalError for an unknown node id.
    const DimSet& free_dimensions(NodeId node) const;
    const lucid::Expr& node(NodeId id) const;
    const lucid::Decl& decl(NodeId where_node, std::size_t index) const;
    std::optional<std::size_t> capture_index(const std::string& name) const;
};

/// Scope-checks a desugared AST against `env`, builds its dictionary and
/// resolution tables, and computes free dimensions (intensional member
/// captures are bounded by `member_dims`, every dimension when absent).
/// Throws CompileError for undefined or multiply defined identifiers and
/// undefined dimensions.
Geer compile(const lucid::ExprPtr& ast, const HostEnv& env, const CompileOptions& options = {},
             const MemberDims& member_dims = {});

/// Recomputes `geer.free_dims` with new member estimates.
void analyze_free_dims(Geer& geer, const MemberDims& member_dims);

/// Free dimensions of `node`; deterministic. Throws InternalError for an
/// unknown id.
const DimSet& free_dimensions(const Geer& geer, NodeId node);

/// FNV-1a of `text`, hex encoded.
std::string digest_of(std::string_view text);

}  // namespace jooip
