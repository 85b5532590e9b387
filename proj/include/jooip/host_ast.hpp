#pragma once

// Abstract syntax of the host object language. Embedded Lucid segments are
// cut out by the parser and appear as Segment placeholders.

#include "jooip/diagnostics.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace jooip::host {

struct TypeRef {
    std::string name;      // int, long, double, String, void, a class name...
    int array_dims = 0;

    bool is_void() const { return name == "void" && array_dims == 0; }
    std::string to_string() const;
    friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

enum class Visibility { Default, Public, Private, Protected };

const char* to_string(Visibility v);

struct Segment {
    std::size_t index = 0;     // 1-based, source order
    std::string tag;           // dialect tag, GIPL when omitted
    std::string text;          // verbatim, between the tag and `@/`
    SourceLoc loc;
    std::size_t begin = 0;     // byte range of `/@ ... @/` in the source
    std::size_t end = 0;
};

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<Expr>;
using StmtPtr = std::shared_ptr<Stmt>;

enum class ExprKind {
    Literal,
    Null,
    This,
    Name,          // identifier
    FieldAccess,   // operands[0].name
    Call,          // name(args): same-class method or free function
    MethodCall,    // operands[0].name(args...)
    New,           // new T(args)
    NewArray,      // new T[n]
    ArrayLiteral,  // {a, b, c} or new T[]{...}
    Index,         // operands[0][operands[1]]
    Binary,        // op
    Unary,         // op: - ! +
    Assign,        // op: = += -= *= /= %=; operands[0] is an lvalue
    IncDec,        // op: ++ --; prefix flag
    Ternary,
    Segment,       // embedded Lucid segment
};

struct HostLiteral {
    enum class Kind { Int, Long, Double, Boolean, Char, String };
    Kind kind = Kind::Int;
    std::int64_t integer = 0;
    double real = 0;
    bool boolean = false;
    std::string text;   // String contents or the Char
};

struct Expr {
    ExprKind kind = ExprKind::Literal;
    SourceLoc loc;
    HostLiteral literal;
    std::string name;            // Name/FieldAccess/Call/MethodCall
    std::string op;              // Binary/Unary/Assign/IncDec
    bool prefix = false;         // IncDec
    TypeRef type;                // New/NewArray/ArrayLiteral
    std::size_t segment = 0;     // Segment index
    std::vector<ExprPtr> operands;
};

enum class StmtKind { Block, LocalDecl, ExprStmt, If, While, For, Return, Break, Continue, Empty };

struct Stmt {
    StmtKind kind = StmtKind::Empty;
    SourceLoc loc;
    TypeRef type;                                          // LocalDecl
    std::vector<std::pair<std::string, ExprPtr>> vars;     // LocalDecl declarators
    ExprPtr expr;                                          // ExprStmt/Return/If/While/For condition
    std::vector<StmtPtr> body;                             // Block statements
    StmtPtr then_branch;                                   // If, or loop body
    StmtPtr else_branch;
    StmtPtr init;                                          // For
    std::vector<ExprPtr> update;                           // For
};

struct Param {
    TypeRef type;
    std::string name;
};

struct FieldDecl {
    Visibility visibility = Visibility::Default;
    bool is_static = false;
    bool is_final = false;
    TypeRef type;
    std::string name;
    ExprPtr init;               // may be a Segment: an intensional member
    SourceLoc loc;
    std::string source;         // declaration text

    bool intensional() const { return init && init->kind == ExprKind::Segment; }
};

struct MethodDecl {
    Visibility visibility = Visibility::Default;
    bool is_static = false;
    bool is_constructor = false;
    TypeRef return_type;
    std::string name;
    std::vector<Param> params;
    StmtPtr body;
    SourceLoc loc;
};

struct ClassDecl {
    Visibility visibility = Visibility::Default;
    std::string name;
    std::string parent;
    std::vector<std::string> interfaces;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    std::vector<StmtPtr> static_blocks;
    SourceLoc loc;

    const FieldDecl* field(const std::string& n) const;
    const MethodDecl* method(const std::string& n) const;
};

struct Unit {
    std::vector<ClassDecl> classes;
    std::vector<MethodDecl> functions;   // top-level free functions
    std::vector<Segment> segments;
    std::string source;
    std::string file;

    const ClassDecl* find_class(const std::string& n) const;
    const Segment& segment(std::size_t index) const;
};

ExprPtr make_expr(ExprKind kind, SourceLoc loc = {});
StmtPtr make_stmt(StmtKind kind, SourceLoc loc = {});

/// Source text with every segment replaced by `__lucid_expr_<i>`.
std::string host_text(const Unit& unit);
/// Inverse of host_text.
std::string reinsert_segments(const std::string& text, const Unit& unit);

/// Reparseable host source for the whole unit; segments print verbatim.
std::string print(const Unit& unit);
std::string print(const Expr& e, const Unit* unit = nullptr);
std::string print(const Stmt& s, int depth, const Unit* unit = nullptr);
std::string print(const FieldDecl& f, const Unit* unit = nullptr);
std::string print(const MethodDecl& m, int depth, const Unit* unit = nullptr);

}  // namespace jooip::host
