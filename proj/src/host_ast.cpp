#include "jooip/host_ast.hpp"

#include "jooip/value.hpp"

#include <sstream>

namespace jooip::host {

std::string TypeRef::to_string() const
{
    std::string out = name;
    for (int i = 0; i < array_dims; ++i) {
        out += "[]";
    }
    return out;
}

const char* to_string(Visibility v)
{
    switch (v) {
    case Visibility::Default: return "";
    case Visibility::Public: return "public";
    case Visibility::Private: return "private";
    case Visibility::Protected: return "protected";
    }
    return "";
}

const FieldDecl* ClassDecl::field(const std::string& n) const
{
    for (const auto& f : fields) {
        if (f.name == n) {
            return &f;
        }
    }
    return nullptr;
}

const MethodDecl* ClassDecl::method(const std::string& n) const
{
    for (const auto& m : methods) {
        if (m.name == n && !m.is_constructor) {
            return &m;
        }
    }
    return nullptr;
}

const ClassDecl* Unit::find_class(const std::string& n) const
{
    for (const auto& c : classes) {
        if (c.name == n) {
            return &c;
        }
    }
    return nullptr;
}

const Segment& Unit::segment(std::size_t index) const
{
    return segments.at(index - 1);
}

ExprPtr make_expr(ExprKind kind, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->loc = loc;
    return e;
}

StmtPtr make_stmt(StmtKind kind, SourceLoc loc)
{
    auto s = std::make_shared<Stmt>();
    s->kind = kind;
    s->loc = loc;
    return s;
}

static std::string placeholder(std::size_t i)
{
    return "__lucid_expr_" + std::to_string(i);
}

std::string host_text(const Unit& unit)
{
    std::string out;
    std::size_t pos = 0;
    for (const auto& s : unit.segments) {
        out.append(unit.source, pos, s.begin - pos);
        out += placeholder(s.index);
        pos = s.end;
    }
    out.append(unit.source, pos, std::string::npos);
    return out;
}

std::string reinsert_segments(const std::string& text, const Unit& unit)
{
    std::string out = text;
    for (auto it = unit.segments.rbegin(); it != unit.segments.rend(); ++it) {
        std::string ph = placeholder(it->index);
        auto at = out.find(ph);
        if (at != std::string::npos) {
            out.replace(at, ph.size(), unit.source.substr(it->begin, it->end - it->begin));
        }
    }
    return out;
}

namespace {

int precedence(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::Assign: return 1;
    case ExprKind::Ternary: return 2;
    case ExprKind::Binary:
        if (e.op == "||") return 3;
        if (e.op == "&&") return 4;
        if (e.op == "==" || e.op == "!=") return 7;
        if (e.op == "<" || e.op == ">" || e.op == "<=" || e.op == ">=") return 8;
        if (e.op == "+" || e.op == "-") return 10;
        return 11;
    case ExprKind::Unary: return 12;
    case ExprKind::IncDec: return e.prefix ? 12 : 13;
    default: return 14;
    }
}

std::string quote(const std::string& s, char q)
{
    std::string out(1, q);
    for (char c : s) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        case '\\': out += "\\\\"; break;
        default:
            if (c == q) {
                out += '\\';
            }
            out += c;
        }
    }
    return out + q;
}

class Printer {
public:
    explicit Printer(const Unit* unit) : unit_(unit) {}

    std::string expr(const Expr& e, int min_prec = 0) const
    {
        std::string s = bare(e);
        return precedence(e) < min_prec ? "(" + s + ")" : s;
    }

    void stmt(std::ostringstream& out, const Stmt& s, int depth) const
    {
        std::string ind(static_cast<std::size_t>(depth) * 4, ' ');
        switch (s.kind) {
        case StmtKind::Block:
            out << ind << "{\n";
            for (const auto& b : s.body) {
                stmt(out, *b, depth + 1);
            }
            out << ind << "}\n";
            break;
        case StmtKind::LocalDecl:
            out << ind << local(s) << ";\n";
            break;
        case StmtKind::ExprStmt:
            out << ind << expr(*s.expr) << ";\n";
            break;
        case StmtKind::If:
            out << ind << "if (" << expr(*s.expr) << ")\n";
            nested(out, *s.then_branch, depth);
            if (s.else_branch) {
                out << ind << "else\n";
                nested(out, *s.else_branch, depth);
            }
            break;
        case StmtKind::While:
            out << ind << "while (" << expr(*s.expr) << ")\n";
            nested(out, *s.then_branch, depth);
            break;
        case StmtKind::For: {
            out << ind << "for (";
            if (s.init) {
                out << (s.init->kind == StmtKind::LocalDecl ? local(*s.init) : expr(*s.init->expr));
            }
            out << "; " << (s.expr ? expr(*s.expr) : "") << "; ";
            for (std::size_t i = 0; i < s.update.size(); ++i) {
                out << (i ? ", " : "") << expr(*s.update[i]);
            }
            out << ")\n";
            nested(out, *s.then_branch, depth);
            break;
        }
        case StmtKind::Return:
            out << ind << "return" << (s.expr ? " " + expr(*s.expr) : "") << ";\n";
            break;
        case StmtKind::Break: out << ind << "break;\n"; break;
        case StmtKind::Continue: out << ind << "continue;\n"; break;
        case StmtKind::Empty: out << ind << ";\n"; break;
        }
    }

    void method(std::ostringstream& out, const MethodDecl& m, int depth) const
    {
        std::string ind(static_cast<std::size_t>(depth) * 4, ' ');
        out << ind;
        if (m.visibility != Visibility::Default) {
            out << to_string(m.visibility) << ' ';
        }
        if (m.is_static) {
            out << "static ";
        }
        if (!m.is_constructor) {
            out << m.return_type.to_string() << ' ';
        }
        out << m.name << '(';
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            out << (i ? ", " : "") << m.params[i].type.to_string() << ' ' << m.params[i].name;
        }
        out << ")\n";
        stmt(out, *m.body, depth);
    }

    std::string field(const FieldDecl& f) const
    {
        std::string out;
        if (f.visibility != Visibility::Default) {
            out += std::string(to_string(f.visibility)) + " ";
        }
        if (f.is_static) {
            out += "static ";
        }
        if (f.is_final) {
            out += "final ";
        }
        out += f.type.to_string() + " " + f.name;
        if (f.init) {
            out += " = " + expr(*f.init);
        }
        return out + ";";
    }

private:
    void nested(std::ostringstream& out, const Stmt& s, int depth) const
    {
        stmt(out, s, s.kind == StmtKind::Block ? depth : depth + 1);
    }

    std::string local(const Stmt& s) const
    {
        std::string out = s.type.to_string() + " ";
        for (std::size_t i = 0; i < s.vars.size(); ++i) {
            out += (i ? ", " : "") + s.vars[i].first;
            if (s.vars[i].second) {
                out += " = " + expr(*s.vars[i].second);
            }
        }
        return out;
    }

    std::string args(const std::vector<ExprPtr>& ops, std::size_t from) const
    {
        std::string out;
        for (std::size_t i = from; i < ops.size(); ++i) {
            out += (i > from ? ", " : "") + expr(*ops[i], 2);
        }
        return out;
    }

    std::string bare(const Expr& e) const
    {
        switch (e.kind) {
        case ExprKind::Literal:
            switch (e.literal.kind) {
            case HostLiteral::Kind::Int: return std::to_string(e.literal.integer);
            case HostLiteral::Kind::Long: return std::to_string(e.literal.integer) + "L";
            case HostLiteral::Kind::Double: return format_double(e.literal.real);
            case HostLiteral::Kind::Boolean: return e.literal.boolean ? "true" : "false";
            case HostLiteral::Kind::Char: return quote(e.literal.text, '\'');
            case HostLiteral::Kind::String: return quote(e.literal.text, '"');
            }
            return "";
        case ExprKind::Null: return "null";
        case ExprKind::This: return "this";
        case ExprKind::Name: return e.name;
        case ExprKind::FieldAccess: return expr(*e.operands[0], 13) + "." + e.name;
        case ExprKind::Call: return e.name + "(" + args(e.operands, 0) + ")";
        case ExprKind::MethodCall: return expr(*e.operands[0], 13) + "." + e.name + "(" + args(e.operands, 1) + ")";
        case ExprKind::New: return "new " + e.type.name + "(" + args(e.operands, 0) + ")";
        case ExprKind::NewArray: {
            TypeRef elem = e.type;
            elem.array_dims -= 1;
            return "new " + elem.to_string() + "[" + expr(*e.operands[0]) + "]";
        }
        case ExprKind::ArrayLiteral:
            return (e.type.name.empty() ? "" : "new " + e.type.to_string()) + "{" + args(e.operands, 0) + "}";
        case ExprKind::Index: return expr(*e.operands[0], 13) + "[" + expr(*e.operands[1]) + "]";
        case ExprKind::Binary: {
            int p = precedence(e);
            return expr(*e.operands[0], p) + " " + e.op + " " + expr(*e.operands[1], p + 1);
        }
        case ExprKind::Unary: return e.op + expr(*e.operands[0], 12);
        case ExprKind::Assign: return expr(*e.operands[0], 13) + " " + e.op + " " + expr(*e.operands[1], 1);
        case ExprKind::IncDec:
            return e.prefix ? e.op + expr(*e.operands[0], 13) : expr(*e.operands[0], 13) + e.op;
        case ExprKind::Ternary:
            return expr(*e.operands[0], 3) + " ? " + expr(*e.operands[1], 2) + " : " + expr(*e.operands[2], 2);
        case ExprKind::Segment:
            if (unit_) {
                const Segment& s = unit_->segment(e.segment);
                return "/@#" + s.tag + s.text + "@/";
            }
            return "__lucid_expr_" + std::to_string(e.segment);
        }
        return "";
    }

    const Unit* unit_;
};

}  // namespace

std::string print(const Expr& e, const Unit* unit)
{
    return Printer(unit).expr(e);
}

std::string print(const Stmt& s, int depth, const Unit* unit)
{
    std::ostringstream out;
    Printer(unit).stmt(out, s, depth);
    return out.str();
}

std::string print(const FieldDecl& f, const Unit* unit)
{
    return Printer(unit).field(f);
}

std::string print(const MethodDecl& m, int depth, const Unit* unit)
{
    std::ostringstream out;
    Printer(unit).method(out, m, depth);
    return out.str();
}

std::string print(const Unit& unit)
{
    Printer p(&unit);
    std::ostringstream out;
    for (const auto& c : unit.classes) {
        if (c.visibility != Visibility::Default) {
            out << to_string(c.visibility) << ' ';
        }
        out << "class " << c.name;
        if (!c.parent.empty()) {
            out << " extends " << c.parent;
        }
        for (std::size_t i = 0; i < c.interfaces.size(); ++i) {
            out << (i ? ", " : " implements ") << c.interfaces[i];
        }
        out << "\n{\n";
        for (const auto& f : c.fields) {
            out << "    " << p.field(f) << '\n';
        }
        for (const auto& b : c.static_blocks) {
            out << "    static\n";
            p.stmt(out, *b, 1);
        }
        for (const auto& m : c.methods) {
            p.method(out, m, 1);
        }
        out << "}\n";
    }
    for (const auto& f : unit.functions) {
        p.method(out, f, 0);
    }
    return out.str();
}

}  // namespace jooip::host
