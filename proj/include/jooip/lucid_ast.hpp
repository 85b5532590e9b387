#pragma once

// Abstract syntax of the Lucid core plus the Indexical operators that are
// desugared away before compilation.

#include "jooip/diagnostics.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jooip::lucid {

using NodeId = std::uint32_t;

enum class ExprKind {
    Literal,
    Identifier,
    Call,         // f(args) or f.d1...dm(args) once resolved as a Lucid function
    Conditional,
    TagQuery,     // #.d
    At,           // E @[d:E, ...]
    Where,
    DotMember,    // E.id
    DotCall,      // E.id(args)
    Binary,
    Unary,
    Indexical,    // first/next/fby/wvr/upon/asa; never survives desugaring
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };
enum class IndexicalOp { First, Next, Fby, Wvr, Upon, Asa };

const char* to_string(BinaryOp op);
const char* to_string(UnaryOp op);
const char* to_string(IndexicalOp op);

struct Literal {
    std::variant<std::int64_t, double, bool, std::string> value;
    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Decl {
    enum class Kind { Dimension, Variable, Function };

    Kind kind = Kind::Variable;
    std::vector<std::string> dimensions;   // Dimension: declared names
    std::string name;                      // Variable / Function
    std::vector<std::string> dim_params;   // Function: `merge.a(...)`
    std::vector<std::string> params;       // Function: value parameters
    ExprPtr body;
    SourceLoc loc;
};

struct AtBinding {
    std::string dimension;
    ExprPtr tag;
};

struct Expr {
    ExprKind kind = ExprKind::Literal;
    NodeId id = 0;
    SourceLoc loc;

    Literal literal;
    // Identifier name, member name for Dot*, callee for Call, dimension for
    // TagQuery and Indexical.
    std::string name;
    std::vector<std::string> dim_args;  // Call
    std::vector<ExprPtr> operands;      // children in evaluation order
    std::vector<AtBinding> at;          // At
    std::vector<Decl> decls;            // Where
    BinaryOp binary = BinaryOp::Add;
    UnaryOp unary = UnaryOp::Neg;
    IndexicalOp indexical = IndexicalOp::First;
};

// Constructors used by the parser, the desugarer and tests.
ExprPtr make_literal(Literal value, SourceLoc loc = {});
ExprPtr make_identifier(std::string name, SourceLoc loc = {});
ExprPtr make_call(std::string callee, std::vector<std::string> dim_args, std::vector<ExprPtr> args, SourceLoc loc = {});
ExprPtr make_conditional(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch, SourceLoc loc = {});
ExprPtr make_tag_query(std::string dimension, SourceLoc loc = {});
ExprPtr make_at(ExprPtr body, std::vector<AtBinding> delta, SourceLoc loc = {});
ExprPtr make_where(ExprPtr body, std::vector<Decl> decls, SourceLoc loc = {});
ExprPtr make_dot_member(ExprPtr object, std::string member, SourceLoc loc = {});
ExprPtr make_dot_call(ExprPtr object, std::string member, std::vector<ExprPtr> args, SourceLoc loc = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceLoc loc = {});
ExprPtr make_indexical(IndexicalOp op, std::string dimension, std::vector<ExprPtr> operands, SourceLoc loc = {});

Decl make_dimension_decl(std::vector<std::string> names);
Decl make_variable_decl(std::string name, ExprPtr body);

/// Deep copy; node ids are preserved.
ExprPtr clone(const ExprPtr& e);

/// Assigns ids 1..n in pre-order (declarations after the body for Where).
/// Returns the number of nodes.
NodeId number_nodes(const ExprPtr& root);

/// Structural equality ignoring node ids and source locations.
bool same_shape(const ExprPtr& a, const ExprPtr& b);

/// Reparseable concrete syntax. Every compound subexpression is
/// parenthesised, so the output does not depend on operator precedence.
std::string print(const ExprPtr& e);

/// Calls `fn` on every node reachable from `root`, declarations included.
template <typename Fn>
void walk(const ExprPtr& root, Fn&& fn)
{
    if (!root) {
        return;
    }
    fn(root);
    for (const auto& op : root->operands) {
        walk(op, fn);
    }
    for (const auto& b : root->at) {
        walk(b.tag, fn);
    }
    for (const auto& d : root->decls) {
        walk(d.body, fn);
    }
}

}  // namespace jooip::lucid
