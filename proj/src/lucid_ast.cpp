#include "jooip/lucid_ast.hpp"

#include "jooip/value.hpp"

#include <sstream>

namespace jooip::lucid {

const char* to_string(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

const char* to_string(UnaryOp op)
{
    return op == UnaryOp::Neg ? "-" : "!";
}

const char* to_string(IndexicalOp op)
{
    switch (op) {
    case IndexicalOp::First: return "first";
    case IndexicalOp::Next: return "next";
    case IndexicalOp::Fby: return "fby";
    case IndexicalOp::Wvr: return "wvr";
    case IndexicalOp::Upon: return "upon";
    case IndexicalOp::Asa: return "asa";
    }
    return "?";
}

namespace {

ExprPtr make(ExprKind kind, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->loc = loc;
    return e;
}

}  // namespace

ExprPtr make_literal(Literal value, SourceLoc loc)
{
    auto e = make(ExprKind::Literal, loc);
    e->literal = std::move(value);
    return e;
}

ExprPtr make_identifier(std::string name, SourceLoc loc)
{
    auto e = make(ExprKind::Identifier, loc);
    e->name = std::move(name);
    return e;
}

ExprPtr make_call(std::string callee, std::vector<std::string> dim_args, std::vector<ExprPtr> args, SourceLoc loc)
{
    auto e = make(ExprKind::Call, loc);
    e->name = std::move(callee);
    e->dim_args = std::move(dim_args);
    e->operands = std::move(args);
    return e;
}

ExprPtr make_conditional(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch, SourceLoc loc)
{
    auto e = make(ExprKind::Conditional, loc);
    e->operands = {std::move(cond), std::move(then_branch), std::move(else_branch)};
    return e;
}

ExprPtr make_tag_query(std::string dimension, SourceLoc loc)
{
    auto e = make(ExprKind::TagQuery, loc);
    e->name = std::move(dimension);
    return e;
}

ExprPtr make_at(ExprPtr body, std::vector<AtBinding> delta, SourceLoc loc)
{
    auto e = make(ExprKind::At, loc);
    e->operands = {std::move(body)};
    e->at = std::move(delta);
    return e;
}

ExprPtr make_where(ExprPtr body, std::vector<Decl> decls, SourceLoc loc)
{
    auto e = make(ExprKind::Where, loc);
    e->operands = {std::move(body)};
    e->decls = std::move(decls);
    return e;
}

ExprPtr make_dot_member(ExprPtr object, std::string member, SourceLoc loc)
{
    auto e = make(ExprKind::DotMember, loc);
    e->operands = {std::move(object)};
    e->name = std::move(member);
    return e;
}

ExprPtr make_dot_call(ExprPtr object, std::string member, std::vector<ExprPtr> args, SourceLoc loc)
{
    auto e = make(ExprKind::DotCall, loc);
    e->operands.push_back(std::move(object));
    for (auto& a : args) {
        e->operands.push_back(std::move(a));
    }
    e->name = std::move(member);
    return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc)
{
    auto e = make(ExprKind::Binary, loc);
    e->binary = op;
    e->operands = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceLoc loc)
{
    auto e = make(ExprKind::Unary, loc);
    e->unary = op;
    e->operands = {std::move(operand)};
    return e;
}

ExprPtr make_indexical(IndexicalOp op, std::string dimension, std::vector<ExprPtr> operands, SourceLoc loc)
{
    auto e = make(ExprKind::Indexical, loc);
    e->indexical = op;
    e->name = std::move(dimension);
    e->operands = std::move(operands);
    return e;
}

Decl make_dimension_decl(std::vector<std::string> names)
{
    Decl d;
    d.kind = Decl::Kind::Dimension;
    d.dimensions = std::move(names);
    return d;
}

Decl make_variable_decl(std::string name, ExprPtr body)
{
    Decl d;
    d.kind = Decl::Kind::Variable;
    d.name = std::move(name);
    d.body = std::move(body);
    return d;
}

ExprPtr clone(const ExprPtr& e)
{
    if (!e) {
        return nullptr;
    }
    auto copy = std::make_shared<Expr>(*e);
    for (auto& op : copy->operands) {
        op = clone(op);
    }
    for (auto& b : copy->at) {
        b.tag = clone(b.tag);
    }
    for (auto& d : copy->decls) {
        d.body = clone(d.body);
    }
    return copy;
}

NodeId number_nodes(const ExprPtr& root)
{
    NodeId next = 0;
    walk(root, [&](const ExprPtr& e) { e->id = ++next; });
    return next;
}

bool same_shape(const ExprPtr& a, const ExprPtr& b)
{
    if (!a || !b) {
        return a == b;
    }
    if (a->kind != b->kind || a->name != b->name || a->dim_args != b->dim_args ||
        a->operands.size() != b->operands.size() || a->at.size() != b->at.size() ||
        a->decls.size() != b->decls.size()) {
        return false;
    }
    switch (a->kind) {
    case ExprKind::Literal:
        if (!(a->literal == b->literal)) {
            return false;
        }
        break;
    case ExprKind::Binary:
        if (a->binary != b->binary) {
            return false;
        }
        break;
    case ExprKind::Unary:
        if (a->unary != b->unary) {
            return false;
        }
        break;
    case ExprKind::Indexical:
        if (a->indexical != b->indexical) {
            return false;
        }
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < a->operands.size(); ++i) {
        if (!same_shape(a->operands[i], b->operands[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a->at.size(); ++i) {
        if (a->at[i].dimension != b->at[i].dimension || !same_shape(a->at[i].tag, b->at[i].tag)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a->decls.size(); ++i) {
        const Decl& x = a->decls[i];
        const Decl& y = b->decls[i];
        if (x.kind != y.kind || x.dimensions != y.dimensions || x.name != y.name || x.dim_params != y.dim_params ||
            x.params != y.params || !same_shape(x.body, y.body)) {
            return false;
        }
    }
    return true;
}

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

void print_to(std::ostream& out, const ExprPtr& e);

void print_args(std::ostream& out, const std::vector<ExprPtr>& args, std::size_t from)
{
    out << '(';
    for (std::size_t i = from; i < args.size(); ++i) {
        if (i > from) {
            out << ", ";
        }
        print_to(out, args[i]);
    }
    out << ')';
}

void print_decl(std::ostream& out, const Decl& d)
{
    switch (d.kind) {
    case Decl::Kind::Dimension:
        out << "dimension ";
        for (std::size_t i = 0; i < d.dimensions.size(); ++i) {
            out << (i ? ", " : "") << d.dimensions[i];
        }
        break;
    case Decl::Kind::Variable:
        out << d.name << " = ";
        print_to(out, d.body);
        break;
    case Decl::Kind::Function:
        out << d.name;
        for (const auto& dim : d.dim_params) {
            out << '.' << dim;
        }
        out << '(';
        for (std::size_t i = 0; i < d.params.size(); ++i) {
            out << (i ? ", " : "") << d.params[i];
        }
        out << ") = ";
        print_to(out, d.body);
        break;
    }
    out << "; ";
}

void print_to(std::ostream& out, const ExprPtr& e)
{
    switch (e->kind) {
    case ExprKind::Literal:
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    out << v;
                } else if constexpr (std::is_same_v<T, double>) {
                    out << format_double(v);
                } else if constexpr (std::is_same_v<T, bool>) {
                    out << (v ? "true" : "false");
                } else {
                    out << quote(v);
                }
            },
            e->literal.value);
        break;
    case ExprKind::Identifier:
        out << e->name;
        break;
    case ExprKind::Call:
        out << e->name;
        for (const auto& dim : e->dim_args) {
            out << '.' << dim;
        }
        print_args(out, e->operands, 0);
        break;
    case ExprKind::Conditional:
        out << "(if ";
        print_to(out, e->operands[0]);
        out << " then ";
        print_to(out, e->operands[1]);
        out << " else ";
        print_to(out, e->operands[2]);
        out << " fi)";
        break;
    case ExprKind::TagQuery:
        out << "(#." << e->name << ')';
        break;
    case ExprKind::At:
        out << '(';
        print_to(out, e->operands[0]);
        out << " @[";
        for (std::size_t i = 0; i < e->at.size(); ++i) {
            out << (i ? ", " : "") << e->at[i].dimension << ':';
            print_to(out, e->at[i].tag);
        }
        out << "])";
        break;
    case ExprKind::Where:
        out << '(';
        print_to(out, e->operands[0]);
        out << " where ";
        for (const auto& d : e->decls) {
            print_decl(out, d);
        }
        out << "end)";
        break;
    case ExprKind::DotMember:
        out << '(';
        print_to(out, e->operands[0]);
        out << ")." << e->name;
        break;
    case ExprKind::DotCall:
        out << '(';
        print_to(out, e->operands[0]);
        out << ")." << e->name;
        print_args(out, e->operands, 1);
        break;
    case ExprKind::Binary:
        out << '(';
        print_to(out, e->operands[0]);
        out << ' ' << to_string(e->binary) << ' ';
        print_to(out, e->operands[1]);
        out << ')';
        break;
    case ExprKind::Unary:
        out << '(' << to_string(e->unary);
        print_to(out, e->operands[0]);
        out << ')';
        break;
    case ExprKind::Indexical:
        out << '(';
        if (e->operands.size() == 1) {
            out << to_string(e->indexical) << '.' << e->name << ' ';
            print_to(out, e->operands[0]);
        } else {
            print_to(out, e->operands[0]);
            out << ' ' << to_string(e->indexical) << '.' << e->name << ' ';
            print_to(out, e->operands[1]);
        }
        out << ')';
        break;
    }
}

}  // namespace

std::string print(const ExprPtr& e)
{
    std::ostringstream out;
    print_to(out, e);
    return out.str();
}

}  // namespace jooip::lucid
