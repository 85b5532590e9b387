#include "jooip/translator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jooip {

using host::ClassDecl;
using host::Expr;
using host::ExprKind;
using host::ExprPtr;
using host::FieldDecl;
using host::MethodDecl;
using host::Stmt;
using host::StmtKind;
using host::StmtPtr;
using host::TypeRef;

LucidExprBinding binding_for(const SegmentInfo& segment)
{
    LucidExprBinding b;
    b.index = segment.index;
    b.program_slot = "__geer_" + std::to_string(segment.index);
    b.engine_handle = "__engine_" + std::to_string(segment.index);
    b.source = segment.text;
    if (segment.geer) {
        for (const auto& c : segment.geer->captures) {
            if (c.kind == CaptureKind::MethodLocal) {
                b.captures.push_back(c.name);
            }
        }
    }
    return b;
}

std::string translated_path(const std::string& input)
{
    std::string base = input;
    if (base.size() > 4 && base.compare(base.size() - 4, 4, ".hyb") == 0) {
        base.resize(base.size() - 4);
    }
    return base + ".pure.hyb";
}

namespace {

ExprPtr name(const std::string& n)
{
    auto e = host::make_expr(ExprKind::Name);
    e->name = n;
    return e;
}

ExprPtr string_lit(const std::string& s)
{
    auto e = host::make_expr(ExprKind::Literal);
    e->literal.kind = host::HostLiteral::Kind::String;
    e->literal.text = s;
    return e;
}

ExprPtr int_lit(std::int64_t v)
{
    auto e = host::make_expr(ExprKind::Literal);
    e->literal.integer = v;
    return e;
}

ExprPtr bool_lit(bool v)
{
    auto e = host::make_expr(ExprKind::Literal);
    e->literal.kind = host::HostLiteral::Kind::Boolean;
    e->literal.boolean = v;
    return e;
}

ExprPtr call(const std::string& n, std::vector<ExprPtr> args)
{
    auto e = host::make_expr(ExprKind::Call);
    e->name = n;
    e->operands = std::move(args);
    return e;
}

ExprPtr method_call(ExprPtr target, const std::string& n, std::vector<ExprPtr> args)
{
    auto e = host::make_expr(ExprKind::MethodCall);
    e->name = n;
    e->operands.push_back(std::move(target));
    for (auto& a : args) {
        e->operands.push_back(std::move(a));
    }
    return e;
}

ExprPtr binary(const std::string& op, ExprPtr a, ExprPtr b)
{
    auto e = host::make_expr(ExprKind::Binary);
    e->op = op;
    e->operands = {std::move(a), std::move(b)};
    return e;
}

ExprPtr zero_of(const TypeRef& t)
{
    if (t.array_dims > 0 || !(t.name == "int" || t.name == "long" || t.name == "short" || t.name == "byte" ||
                              t.name == "char" || t.name == "double" || t.name == "float" || t.name == "boolean")) {
        return host::make_expr(ExprKind::Null);
    }
    if (t.name == "boolean") {
        return bool_lit(false);
    }
    if (t.name == "double") {
        auto e = host::make_expr(ExprKind::Literal);
        e->literal.kind = host::HostLiteral::Kind::Double;
        return e;
    }
    if (t.name == "long") {
        auto e = int_lit(0);
        e->literal.kind = host::HostLiteral::Kind::Long;
        return e;
    }
    return int_lit(0);
}

StmtPtr expr_stmt(ExprPtr e)
{
    auto s = host::make_stmt(StmtKind::ExprStmt);
    s->expr = std::move(e);
    return s;
}

StmtPtr return_stmt(ExprPtr e)
{
    auto s = host::make_stmt(StmtKind::Return);
    s->expr = std::move(e);
    return s;
}

StmtPtr block(std::vector<StmtPtr> body)
{
    auto s = host::make_stmt(StmtKind::Block);
    s->body = std::move(body);
    return s;
}

ExprPtr assign(ExprPtr lhs, ExprPtr rhs)
{
    auto e = host::make_expr(ExprKind::Assign);
    e->op = "=";
    e->operands = {std::move(lhs), std::move(rhs)};
    return e;
}

class Translator {
public:
    explicit Translator(const Program& p) : p_(p), unit_(p.unit) {}

    std::string run()
    {
        plan_hosts();
        check_collisions();
        std::string out;
        for (const auto& c : unit_.classes) {
            out += emit_class(c);
        }
        cur_ = nullptr;
        for (const auto& f : unit_.functions) {
            out += "\n" + host::print(rewrite_method(f), 0, nullptr);
        }
        return out;
    }

private:
    // Free-function segments have no class of their own; their slot and
    // handle live in the first class.
    void plan_hosts()
    {
        for (const auto& seg : p_.segments) {
            std::string host = seg.class_name;
            if (host.empty()) {
                if (unit_.classes.empty()) {
                    throw CompileError("a Lucid segment in a free function needs a class in the unit", {}, unit_.file);
                }
                host = unit_.classes.front().name;
            }
            hosted_[host].push_back(&seg);
            host_of_[seg.index] = host;
        }
    }

    static bool has_main(const ClassDecl& c)
    {
        for (const auto& m : c.methods) {
            if (m.name == "main" && m.is_static && !m.is_constructor) {
                return true;
            }
        }
        return false;
    }

    static bool has_field(const ClassDecl& c, const std::string& n) { return c.field(n) != nullptr; }
    static bool has_method(const ClassDecl& c, const std::string& n) { return c.method(n) != nullptr; }

    void user_names_in(const Stmt& s, std::set<std::string>& names)
    {
        for (const auto& [n, init] : s.vars) {
            names.insert(n);
        }
        for (const auto& b : s.body) {
            user_names_in(*b, names);
        }
        for (const StmtPtr* p : {&s.then_branch, &s.else_branch, &s.init}) {
            if (*p) {
                user_names_in(**p, names);
            }
        }
    }

    void user_names_in(const MethodDecl& m, std::set<std::string>& names)
    {
        names.insert(m.name);
        for (const auto& prm : m.params) {
            names.insert(prm.name);
        }
        if (m.body) {
            user_names_in(*m.body, names);
        }
    }

    void check_collisions()
    {
        std::set<std::string> user;
        for (const auto& c : unit_.classes) {
            user.insert(c.name);
            for (const auto& f : c.fields) {
                user.insert(f.name);
            }
            for (const auto& m : c.methods) {
                user_names_in(m, user);
            }
            for (const auto& b : c.static_blocks) {
                user_names_in(*b, user);
            }
        }
        for (const auto& f : unit_.functions) {
            user_names_in(f, user);
        }
        std::vector<std::string> generated;
        for (const auto& seg : p_.segments) {
            LucidExprBinding b = binding_for(seg);
            generated.push_back(b.program_slot);
            generated.push_back(b.engine_handle);
            if (!seg.member.empty()) {
                generated.push_back("__get_" + seg.member);
                generated.push_back("__set_" + seg.member);
                generated.push_back(flag_name(seg.member));
                generated.push_back("__value");
            }
        }
        for (const auto& g : generated) {
            if (user.count(g)) {
                throw CompileError("generated name " + g + " collides with a user identifier", {}, unit_.file);
            }
        }
    }

    static std::string flag_name(const std::string& member) { return "__b" + member + "IsWritten"; }

    bool intensional(const std::string& cls, const std::string& member) const
    {
        return p_.member_segment(cls, member) != nullptr;
    }

    // ---- static types, just enough to find intensional member accesses -----

    const TypeRef* local_type(const std::string& n) const
    {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(n);
            if (f != it->end()) {
                return &f->second;
            }
        }
        return nullptr;
    }

    std::string class_of(const TypeRef& t) const
    {
        return t.array_dims == 0 && unit_.find_class(t.name) ? t.name : std::string();
    }

    const MethodDecl* method_of(const std::string& cls, const std::string& m) const
    {
        if (const ClassDecl* c = unit_.find_class(cls)) {
            return c->method(m);
        }
        return nullptr;
    }

    std::string static_class(const Expr& e) const
    {
        switch (e.kind) {
        case ExprKind::Name:
            if (const TypeRef* t = local_type(e.name)) {
                return class_of(*t);
            }
            if (cur_) {
                if (const FieldDecl* f = cur_->field(e.name)) {
                    return class_of(f->type);
                }
            }
            return unit_.find_class(e.name) ? e.name : std::string();
        case ExprKind::This: return cur_ ? cur_->name : std::string();
        case ExprKind::New: return class_of(e.type);
        case ExprKind::FieldAccess: {
            const ClassDecl* c = unit_.find_class(static_class(*e.operands[0]));
            const FieldDecl* f = c ? c->field(e.name) : nullptr;
            return f ? class_of(f->type) : std::string();
        }
        case ExprKind::Call: {
            if (cur_) {
                if (const MethodDecl* m = cur_->method(e.name)) {
                    return class_of(m->return_type);
                }
            }
            for (const auto& f : unit_.functions) {
                if (f.name == e.name) {
                    return class_of(f.return_type);
                }
            }
            return {};
        }
        case ExprKind::MethodCall: {
            const MethodDecl* m = method_of(static_class(*e.operands[0]), e.name);
            return m ? class_of(m->return_type) : std::string();
        }
        case ExprKind::Ternary: return static_class(*e.operands[1]);
        default: return {};
        }
    }

    // ---- rewriting ----------------------------------------------------------

    ExprPtr segment_call(const SegmentInfo& seg)
    {
        LucidExprBinding b = binding_for(seg);
        const std::string& host = host_of_.at(seg.index);
        ExprPtr handle = name(b.engine_handle);
        if (!cur_ || cur_->name != host) {
            auto fa = host::make_expr(ExprKind::FieldAccess);
            fa->name = b.engine_handle;
            fa->operands.push_back(name(host));
            handle = fa;
        }
        std::vector<ExprPtr> args;
        if (seg.static_context) {
            args.push_back(host::make_expr(ExprKind::Null));
            args.push_back(host::make_expr(ExprKind::Null));
        } else {
            args.push_back(host::make_expr(ExprKind::This));
            args.push_back(name("__ctx"));
        }
        for (const auto& c : b.captures) {
            args.push_back(name(c));
        }
        return method_call(handle, "eval", std::move(args));
    }

    bool member_name(const std::string& n) const
    {
        return !local_type(n) && cur_ && intensional(cur_->name, n);
    }

    static ExprPtr getter(ExprPtr target, const std::string& member)
    {
        return target ? method_call(std::move(target), "__get_" + member, {}) : call("__get_" + member, {});
    }

    static ExprPtr setter(ExprPtr target, const std::string& member, ExprPtr value)
    {
        std::vector<ExprPtr> args{std::move(value)};
        return target ? method_call(std::move(target), "__set_" + member, std::move(args))
                      : call("__set_" + member, std::move(args));
    }

    // Intensional member named by an lvalue: {has_target, member}.
    std::string intensional_lvalue(const Expr& e) const
    {
        if (e.kind == ExprKind::Name && member_name(e.name)) {
            return e.name;
        }
        if (e.kind == ExprKind::FieldAccess) {
            std::string cls = static_class(*e.operands[0]);
            if (!cls.empty() && intensional(cls, e.name)) {
                return e.name;
            }
        }
        return {};
    }

    ExprPtr lvalue_target(const Expr& e) { return e.kind == ExprKind::FieldAccess ? expr(e.operands[0]) : nullptr; }

    ExprPtr expr(const ExprPtr& e)
    {
        if (!e) {
            return e;
        }
        switch (e->kind) {
        case ExprKind::Segment: return call("__convert", {segment_call(p_.segment(e->segment))});
        case ExprKind::Name:
            if (member_name(e->name)) {
                return getter(nullptr, e->name);
            }
            break;
        case ExprKind::FieldAccess: {
            std::string cls = static_class(*e->operands[0]);
            if (!cls.empty() && intensional(cls, e->name)) {
                return getter(expr(e->operands[0]), e->name);
            }
            break;
        }
        case ExprKind::Assign: {
            std::string member = intensional_lvalue(*e->operands[0]);
            if (!member.empty()) {
                ExprPtr value = expr(e->operands[1]);
                if (e->op != "=") {
                    value = binary(e->op.substr(0, e->op.size() - 1), getter(lvalue_target(*e->operands[0]), member),
                                   value);
                }
                return setter(lvalue_target(*e->operands[0]), member, value);
            }
            break;
        }
        case ExprKind::IncDec: {
            std::string member = intensional_lvalue(*e->operands[0]);
            if (!member.empty()) {
                ExprPtr value = binary(e->op == "++" ? "+" : "-", getter(lvalue_target(*e->operands[0]), member),
                                       int_lit(1));
                return setter(lvalue_target(*e->operands[0]), member, value);
            }
            break;
        }
        default: break;
        }
        auto copy = std::make_shared<Expr>(*e);
        for (auto& op : copy->operands) {
            op = expr(op);
        }
        return copy;
    }

    StmtPtr stmt(const StmtPtr& s)
    {
        if (!s) {
            return s;
        }
        auto copy = std::make_shared<Stmt>(*s);
        switch (s->kind) {
        case StmtKind::Block:
            scopes_.emplace_back();
            for (auto& b : copy->body) {
                b = stmt(b);
            }
            scopes_.pop_back();
            return copy;
        case StmtKind::LocalDecl:
            for (auto& [n, init] : copy->vars) {
                init = expr(init);
                scopes_.back()[n] = s->type;
            }
            return copy;
        case StmtKind::For:
            scopes_.emplace_back();
            copy->init = stmt(s->init);
            copy->expr = expr(s->expr);
            for (auto& u : copy->update) {
                u = expr(u);
            }
            copy->then_branch = stmt(s->then_branch);
            scopes_.pop_back();
            return copy;
        default:
            copy->expr = expr(s->expr);
            copy->then_branch = stmt(s->then_branch);
            copy->else_branch = stmt(s->else_branch);
            return copy;
        }
    }

    MethodDecl rewrite_method(const MethodDecl& m)
    {
        MethodDecl out = m;
        scopes_.assign(1, {});
        for (const auto& prm : m.params) {
            scopes_.back()[prm.name] = prm.type;
        }
        out.body = stmt(m.body);
        scopes_.clear();
        return out;
    }

    // ---- emission -----------------------------------------------------------

    std::vector<MethodDecl> accessors(const FieldDecl& f, const SegmentInfo& seg)
    {
        LucidExprBinding b = binding_for(seg);
        std::vector<ExprPtr> eval_args;
        if (f.is_static) {
            eval_args = {host::make_expr(ExprKind::Null), host::make_expr(ExprKind::Null)};
        } else {
            eval_args = {host::make_expr(ExprKind::This), name("__ctx")};
        }
        MethodDecl get;
        get.visibility = f.visibility;
        get.is_static = f.is_static;
        get.return_type = f.type;
        get.name = "__get_" + f.name;
        auto guard = host::make_stmt(StmtKind::If);
        guard->expr = name(flag_name(f.name));
        guard->then_branch = return_stmt(name(f.name));
        get.body = block({guard, return_stmt(call("__convert_as", {string_lit(f.type.to_string()),
                                                                    method_call(name(b.engine_handle), "eval",
                                                                                std::move(eval_args))}))});
        MethodDecl set;
        set.visibility = f.visibility;
        set.is_static = f.is_static;
        set.return_type = f.type;
        set.name = "__set_" + f.name;
        set.params.push_back({f.type, "__value"});
        set.body = block({expr_stmt(assign(name(f.name), name("__value"))),
                          expr_stmt(assign(name(flag_name(f.name)), bool_lit(true))), return_stmt(name(f.name))});
        return {get, set};
    }

    std::string emit_class(const ClassDecl& c)
    {
        cur_ = &c;
        EmitBuffers b;
        bool main_class = has_main(c);

        // Header, context member, work wrapper.
        if (c.visibility != host::Visibility::Default) {
            b.header += std::string(host::to_string(c.visibility)) + " ";
        }
        b.header += "class " + c.name;
        if (!c.parent.empty()) {
            b.header += " extends " + c.parent;
        }
        std::vector<std::string> interfaces = c.interfaces;
        bool has_work = has_method(c, "__work");
        if (main_class && !has_work &&
            std::find(interfaces.begin(), interfaces.end(), "ISequentialThread") == interfaces.end()) {
            interfaces.push_back("ISequentialThread");
        }
        for (std::size_t i = 0; i < interfaces.size(); ++i) {
            b.header += (i ? ", " : " implements ") + interfaces[i];
        }
        b.header += "\n{\n";
        // Scaffolding from an earlier translation stays where it was emitted.
        if (const FieldDecl* ctx = c.field("__ctx")) {
            b.header += "    " + host::print(*ctx) + "\n";
        } else {
            b.header += "    private __Context __ctx;\n";
        }
        if (has_work) {
            b.header += host::print(rewrite_method(*c.method("__work")), 1);
        } else if (main_class) {
            const MethodDecl* m = c.method("main");
            b.header += "    public void __work()\n    {\n        " + c.name + ".main(" +
                        (m->params.empty() ? "" : "null") + ");\n    }\n";
        }

        // Member stubs, written flags, program slots, engine handles.
        for (const auto& f : c.fields) {
            if (!f.intensional()) {
                continue;
            }
            FieldDecl stub = f;
            stub.init = zero_of(f.type);
            b.identifiers += "    " + host::print(stub) + "\n";
            FieldDecl flag;
            flag.visibility = host::Visibility::Private;
            flag.is_static = f.is_static;
            flag.type = TypeRef{"boolean", 0};
            flag.name = flag_name(f.name);
            flag.init = bool_lit(false);
            b.identifiers += "    " + host::print(flag) + "\n";
        }
        auto hosted = hosted_.find(c.name);
        if (hosted != hosted_.end()) {
            for (const SegmentInfo* seg : hosted->second) {
                LucidExprBinding bind = binding_for(*seg);
                b.identifiers += "    static __Program " + bind.program_slot + ";\n";
                b.identifiers += "    static __Engine " + bind.engine_handle + " = new __Engine(" + bind.program_slot +
                                 ");\n";
            }
            b.statics += "    static\n    {\n";
            for (const SegmentInfo* seg : hosted->second) {
                LucidExprBinding bind = binding_for(*seg);
                std::vector<ExprPtr> args{int_lit(static_cast<std::int64_t>(seg->index)), string_lit(seg->tag),
                                          string_lit(seg->text), string_lit(seg->class_name), string_lit(seg->member),
                                          bool_lit(seg->static_context)};
                for (const auto& cap : bind.captures) {
                    args.push_back(string_lit(cap));
                }
                b.statics += "        " + host::print(*assign(name(bind.program_slot), call("__compile", args))) +
                             ";\n";
            }
            b.statics += "    }\n";
        }

        for (const auto& f : c.fields) {
            if (f.intensional()) {
                for (const auto& m : accessors(f, *p_.member_segment(c.name, f.name))) {
                    b.methods += host::print(m, 1);
                }
            }
        }

        // Everything else, with segments and member accesses rewritten.
        for (const auto& f : c.fields) {
            if (f.intensional() || f.name == "__ctx") {
                continue;
            }
            FieldDecl copy = f;
            scopes_.assign(1, {});
            copy.init = expr(f.init);
            scopes_.clear();
            b.body += "    " + host::print(copy) + "\n";
        }
        for (const auto& s : c.static_blocks) {
            scopes_.assign(1, {});
            b.body += "    static\n" + host::print(*stmt(s), 1);
            scopes_.clear();
        }
        for (const auto& m : c.methods) {
            if (m.name == "__work") {
                continue;
            }
            b.body += host::print(rewrite_method(m), 1);
        }
        return b.assemble();
    }

    const Program& p_;
    const host::Unit& unit_;
    const ClassDecl* cur_ = nullptr;
    std::vector<std::map<std::string, TypeRef>> scopes_;
    std::map<std::string, std::vector<const SegmentInfo*>> hosted_;
    std::map<std::size_t, std::string> host_of_;
};

}  // namespace

std::string translate(const Program& program)
{
    return Translator(program).run();
}

}  // namespace jooip
