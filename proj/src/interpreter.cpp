#include "jooip/interpreter.hpp"

#include "jooip/diagnostics.hpp"
#include "jooip/type_bridge.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>

namespace jooip {

using host::ExprKind;
using host::StmtKind;

namespace {

// Runtime handles behind the intrinsic types of translated code.
struct ProgramHandle : NativeHandle {
    explicit ProgramHandle(std::size_t i) : index(i) {}
    std::string type_name() const override { return "__Program"; }
    std::size_t index;
};

struct EngineHandle : NativeHandle {
    explicit EngineHandle(std::size_t i) : index(i) {}
    std::string type_name() const override { return "__Engine"; }
    std::size_t index;
};

struct LucidValueHandle : NativeHandle {
    explicit LucidValueHandle(Value v) : value(std::move(v)) {}
    std::string type_name() const override { return "__Value"; }
    Value value;
};

struct PrintStreamHandle : NativeHandle {
    std::string type_name() const override { return "PrintStream"; }
};

enum class Flow { Normal, Return, Break, Continue };

struct Local {
    HostValue value;
    host::TypeRef type;
};

struct CallFrame {
    ObjectHandle self;
    const host::ClassDecl* cls = nullptr;
    bool is_static = true;
    std::vector<std::map<std::string, Local>> scopes;
    HostValue ret;
};

constexpr std::size_t kMaxCallDepth = 4000;

host::TypeRef parse_type_name(const std::string& text)
{
    host::TypeRef t;
    t.name = text;
    while (t.name.size() > 2 && t.name.compare(t.name.size() - 2, 2, "[]") == 0) {
        t.name.resize(t.name.size() - 2);
        ++t.array_dims;
    }
    return t;
}

std::string written_flag(const std::string& member)
{
    return "__b" + member + "IsWritten";
}

bool is_compile_block(const host::Stmt& block)
{
    if (block.kind != StmtKind::Block || block.body.empty()) {
        return false;
    }
    for (const auto& s : block.body) {
        if (s->kind != StmtKind::ExprStmt || s->expr->kind != ExprKind::Assign) {
            return false;
        }
        const host::Expr& rhs = *s->expr->operands[1];
        if (rhs.kind != ExprKind::Call || rhs.name != "__compile") {
            return false;
        }
    }
    return true;
}

}  // namespace

HostValue natural_host_value(const Value& v)
{
    switch (v.kind()) {
    case ValueKind::Integer: return HostValue::make_int(v.as_integer());
    case ValueKind::Float: return HostValue::make_float(v.as_float());
    case ValueKind::Double: return HostValue::make_double(v.as_double());
    case ValueKind::Boolean: return HostValue::make_bool(v.as_boolean());
    case ValueKind::Character: return HostValue::make_char(v.as_character());
    case ValueKind::String: return HostValue::make_string(v.as_string());
    case ValueKind::Array: {
        auto arr = std::make_shared<HostArray>();
        arr->element_type = "Object";
        for (const auto& e : v.as_array()) {
            arr->elements.push_back(natural_host_value(e));
        }
        if (!arr->elements.empty()) {
            const HostValue& first = arr->elements.front();
            arr->element_type = first.kind == HostKind::Object && first.object ? first.object->class_name()
                                                                              : to_string(first.kind);
        }
        return HostValue::make_array(std::move(arr));
    }
    case ValueKind::Object: return HostValue::make_object(v.as_object());
    case ValueKind::ContextValue: return HostValue::make_native(std::make_shared<ContextHandle>(v.as_context()));
    case ValueKind::Void: return HostValue::void_value();
    }
    return HostValue::void_value();
}

class Interpreter::Impl : public HostBridge {
public:
    Impl(const host::Unit& unit, const Program* program, RunOptions options)
        : unit_(unit), program_(program), opts_(options), engine_(options.engine)
    {
        // A translated unit read back from disk carries no segments of its
        // own; it registers them through its static blocks instead.
        if (program_ && program_->segments.empty() && has_compile_blocks()) {
            program_ = nullptr;
        }
        if (program_) {
            segments_ = program_->segments;
            finalized_ = true;
        }
        engine_.set_bridge(this);
        engine_.set_free_functions(&ffw_);
        for (const auto& f : unit_.functions) {
            const host::MethodDecl* fn = &f;
            ffw_.add(f.name, f.params.size(), [this, fn](const std::vector<Value>& args) {
                std::vector<HostValue> hargs;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    hargs.push_back(to_host(args[i], fn->params[i].type.name, fn->params[i].type.array_dims));
                }
                return lucid_result(invoke(nullptr, *fn, nullptr, hargs), fn->return_type);
            });
        }
    }

    bool has_compile_blocks() const
    {
        for (const auto& c : unit_.classes) {
            for (const auto& b : c.static_blocks) {
                if (is_compile_block(*b)) {
                    return true;
                }
            }
        }
        return false;
    }

    std::ostream& out() { return opts_.out ? *opts_.out : std::cout; }
    std::ostream& err() { return opts_.err ? *opts_.err : std::cerr; }

    // ---- program lifecycle -------------------------------------------------

    void initialize()
    {
        if (initialized_) {
            return;
        }
        initialized_ = true;
        for (const auto& c : unit_.classes) {
            auto& statics = statics_[c.name];
            for (const auto& f : c.fields) {
                if (f.is_static && f.name != "__ctx") {
                    Slot s;
                    s.value = default_value(f.type.name, f.type.array_dims);
                    s.intensional = f.intensional();
                    statics[f.name] = s;
                }
            }
        }
        if (!finalized_) {
            // Segment registration blocks run first so that every segment is
            // compiled, with its member dependencies, before any is evaluated.
            for (const auto& c : unit_.classes) {
                for (const auto& b : c.static_blocks) {
                    if (is_compile_block(*b)) {
                        with_frame(nullptr, &c, true, [&] { exec(*b); });
                    }
                }
            }
            finalize_segments();
        }
        for (const auto& c : unit_.classes) {
            ensure_class(c);
        }
    }

    void run()
    {
        initialize();
        for (const auto& c : unit_.classes) {
            for (const auto& m : c.methods) {
                if (m.name == "main" && m.is_static && !m.is_constructor) {
                    std::vector<HostValue> args;
                    if (m.params.size() == 1) {
                        args.push_back(default_value("String", 1));
                    }
                    invoke(&c, m, nullptr, args);
                    out().flush();
                    return;
                }
            }
        }
        throw RuntimeError("no static main method");
    }

    void finalize_segments()
    {
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (segments_[i].index != i + 1) {
                throw RuntimeError("segment " + std::to_string(i + 1) + " was never registered");
            }
        }
        std::vector<std::string> warnings;
        compile_segments(unit_, segments_, warnings);
        for (const auto& w : warnings) {
            err() << w << '\n';
        }
        finalized_ = true;
    }

    void ensure_class(const host::ClassDecl& c)
    {
        auto& state = class_state_[c.name];
        if (state != 0) {
            return;
        }
        state = 1;
        with_frame(nullptr, &c, true, [&] {
            for (const auto& f : c.fields) {
                if (!f.is_static || !f.init || f.intensional()) {
                    continue;
                }
                HostValue v = eval_init(*f.init, f.type);
                statics_[c.name][f.name].value = v;
            }
            for (const auto& b : c.static_blocks) {
                if (!is_compile_block(*b) || finalized_by_program()) {
                    exec(*b);
                }
            }
        });
        state = 2;
    }

    bool finalized_by_program() const { return program_ != nullptr; }

    const host::ClassDecl& class_decl(const std::string& name)
    {
        const host::ClassDecl* c = unit_.find_class(name);
        if (!c) {
            throw RuntimeError("unknown class " + name);
        }
        ensure_class(*c);
        return *c;
    }

    // ---- frames ------------------------------------------------------------

    template <typename Fn>
    void with_frame(ObjectHandle self, const host::ClassDecl* cls, bool is_static, Fn&& fn)
    {
        CallFrame f;
        f.self = std::move(self);
        f.cls = cls;
        f.is_static = is_static;
        f.scopes.emplace_back();
        frames_.push_back(std::move(f));
        try {
            fn();
        } catch (...) {
            frames_.pop_back();
            throw;
        }
        frames_.pop_back();
    }

    CallFrame& frame() { return frames_.back(); }

    Local* find_local(const std::string& name)
    {
        if (frames_.empty()) {
            return nullptr;
        }
        auto& scopes = frame().scopes;
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) {
                return &found->second;
            }
        }
        return nullptr;
    }

    HostValue invoke(const host::ClassDecl* cls, const host::MethodDecl& m, ObjectHandle self,
                     const std::vector<HostValue>& args)
    {
        if (args.size() != m.params.size()) {
            throw RuntimeError("method " + m.name + " expects " + std::to_string(m.params.size()) +
                               " arguments, got " + std::to_string(args.size()));
        }
        if (frames_.size() > kMaxCallDepth) {
            throw RuntimeError("stack overflow in " + m.name);
        }
        HostValue result;
        std::string where = (cls ? cls->name + "." : std::string()) + m.name;
        try {
            with_frame(self, cls, m.is_static || !self, [&] {
                for (std::size_t i = 0; i < args.size(); ++i) {
                    frame().scopes.back()[m.params[i].name] = Local{coerce(args[i], m.params[i].type), m.params[i].type};
                }
                Flow flow = exec(*m.body);
                if (!m.is_constructor && !m.return_type.is_void()) {
                    if (flow != Flow::Return) {
                        throw RuntimeError("missing return value in " + where);
                    }
                    result = coerce(frame().ret, m.return_type);
                }
            });
        } catch (RuntimeError& e) {
            e.push_frame("at " + where);
            throw;
        }
        return result;
    }

    // ---- objects -----------------------------------------------------------

    ObjectHandle construct(const std::string& class_name, const std::vector<HostValue>& args)
    {
        const host::ClassDecl& c = class_decl(class_name);
        auto obj = std::make_shared<HostObject>(c.name, &c, next_id_++);
        for (const auto& f : c.fields) {
            if (f.is_static || f.name == "__ctx") {
                continue;
            }
            Slot s;
            s.value = default_value(f.type.name, f.type.array_dims);
            s.intensional = f.intensional();
            obj->slots()[f.name] = s;
        }
        with_frame(obj, &c, false, [&] {
            for (const auto& f : c.fields) {
                if (f.is_static || !f.init || f.intensional() || f.name == "__ctx") {
                    continue;
                }
                if (f.init->kind == ExprKind::New && f.type.array_dims == 0 && unit_.find_class(f.type.name)) {
                    obj->slots()[f.name].pending = f.init.get();
                    continue;
                }
                obj->slots()[f.name].value = eval_init(*f.init, f.type);
            }
        });
        const host::MethodDecl* ctor = nullptr;
        for (const auto& m : c.methods) {
            if (m.is_constructor && m.params.size() == args.size()) {
                ctor = &m;
                break;
            }
        }
        if (ctor) {
            invoke(&c, *ctor, obj, args);
        } else if (!args.empty()) {
            throw RuntimeError("no constructor " + c.name + " taking " + std::to_string(args.size()) + " arguments");
        }
        return obj;
    }

    const host::FieldDecl* field_decl(const host::ClassDecl& c, const std::string& name) { return c.field(name); }

    bool member_written(HostObject* obj, const std::string& cls, const std::string& member)
    {
        std::map<std::string, Slot>* slots = obj ? &obj->slots() : &statics_[cls];
        auto flag = slots->find(written_flag(member));
        if (flag != slots->end()) {
            return flag->second.value.boolean;
        }
        auto it = slots->find(member);
        return it != slots->end() && it->second.written;
    }

    const SegmentInfo* member_segment(const std::string& cls, const std::string& member) const
    {
        for (const auto& s : segments_) {
            if (!s.member.empty() && s.class_name == cls && s.member == member) {
                return &s;
            }
        }
        return nullptr;
    }

    Slot& slot_of(const ObjectHandle& obj, const host::ClassDecl& c, const std::string& name)
    {
        if (obj) {
            if (Slot* s = obj->slot(name)) {
                return *s;
            }
            throw RuntimeError("no such member " + c.name + "." + name);
        }
        auto& statics = statics_[c.name];
        auto it = statics.find(name);
        if (it == statics.end()) {
            throw RuntimeError("no such static member " + c.name + "." + name);
        }
        return it->second;
    }

    HostValue read_field(const ObjectHandle& obj, const host::ClassDecl& c, const std::string& name)
    {
        const host::FieldDecl* f = field_decl(c, name);
        if (!f) {
            throw RuntimeError("no such member " + c.name + "." + name);
        }
        Slot& slot = slot_of(f->is_static ? nullptr : obj, c, name);
        if (slot.pending) {
            const host::Expr* init = slot.pending;
            slot.pending = nullptr;
            HostValue v;
            with_frame(obj, &c, false, [&] { v = eval_init(*init, f->type); });
            slot_of(obj, c, name).value = v;
            return v;
        }
        if (const SegmentInfo* seg = member_segment(c.name, name);
            seg && !member_written(f->is_static ? nullptr : obj.get(), c.name, name)) {
            Context ctx = obj ? obj->context() : Context{};
            Value v = eval_segment(*seg, f->is_static ? nullptr : obj, ctx, nullptr).value;
            return to_host(v, f->type.name, f->type.array_dims, &warnings_);
        }
        return slot.value;
    }

    void write_field(const ObjectHandle& obj, const host::ClassDecl& c, const std::string& name, const HostValue& v)
    {
        const host::FieldDecl* f = field_decl(c, name);
        if (!f) {
            throw RuntimeError("no such member " + c.name + "." + name);
        }
        Slot& slot = slot_of(f->is_static ? nullptr : obj, c, name);
        slot.value = coerce(v, f->type);
        slot.pending = nullptr;
        if (slot.intensional) {
            slot.written = true;
        }
        if (name.rfind("__", 0) != 0) {
            std::map<std::string, Slot>& slots = f->is_static || !obj ? statics_[c.name] : obj->slots();
            if (auto flag = slots.find(written_flag(name)); flag != slots.end()) {
                flag->second.value = HostValue::make_bool(true);
            }
        }
    }

    // ---- segments ----------------------------------------------------------

    Engine::Result eval_segment(const SegmentInfo& seg, const ObjectHandle& self, const Context& ctx,
                                const std::function<HostValue(const std::string&)>& local)
    {
        if (!seg.geer) {
            throw RuntimeError("segment " + std::to_string(seg.index) + " is not compiled");
        }
        Bindings bindings;
        const host::ClassDecl* cls = unit_.find_class(seg.class_name);
        for (const auto& cap : seg.geer->captures) {
            switch (cap.kind) {
            case CaptureKind::MethodLocal:
                if (!local) {
                    throw RuntimeError("capture " + cap.name + " missing from bindings");
                }
                bindings.push_back(to_lucid(local(cap.name)));
                break;
            case CaptureKind::HostField:
                bindings.push_back(to_lucid(read_field(self, *cls, cap.name)));
                break;
            case CaptureKind::IntensionalMember: {
                const host::FieldDecl* f = cls->field(cap.name);
                bindings.push_back(f && f->is_static ? Value::void_value() : Value::object(self));
                break;
            }
            }
        }
        return engine_.eval_tracked(*seg.geer, ctx, bindings);
    }

    HostValue eval_segment_expr(const host::Expr& e)
    {
        const SegmentInfo& seg = segments_.at(e.segment - 1);
        ObjectHandle self = frames_.empty() ? nullptr : frame().self;
        Context ctx = self ? self->context() : Context{};
        Value v = eval_segment(seg, self, ctx, [&](const std::string& name) {
                      Local* l = find_local(name);
                      if (!l) {
                          throw RuntimeError("capture " + name + " missing from bindings");
                      }
                      return l->value;
                  }).value;
        return natural_host_value(v);
    }

    // ---- HostBridge --------------------------------------------------------

    MemberRead read_member(const Value& obj, const std::string& member, const Context& ctx,
                           const std::string& accessor) override
    {
        ObjectHandle target;
        const host::ClassDecl* cls = nullptr;
        if (obj.is_void()) {
            cls = &class_decl(accessor);
        } else {
            if (!obj.is_object() || !obj.as_object()) {
                throw RuntimeError("type error: member ." + member + " of a non-object " + obj.to_string());
            }
            target = obj.as_object();
            cls = &class_decl(target->class_name());
        }
        const host::FieldDecl* f = cls->field(member);
        if (!f || member.rfind("__", 0) == 0) {
            throw RuntimeError("no such member " + cls->name + "." + member);
        }
        if (cls->name != accessor && f->visibility != host::Visibility::Public) {
            throw RuntimeError("member not accessible: " + cls->name + "." + member);
        }
        ObjectHandle owner = f->is_static ? nullptr : target;
        if (const SegmentInfo* seg = member_segment(cls->name, member);
            seg && !member_written(owner.get(), cls->name, member)) {
            Engine::Result r = eval_segment(*seg, owner, ctx, nullptr);
            HostValue h = to_host(r.value, f->type.name, f->type.array_dims, &warnings_);
            return {to_lucid(h), r.is_volatile};
        }
        return {to_lucid(read_field(target, *cls, member)), true};
    }

    Value call_method(const Value& obj, const std::string& method, const std::vector<Value>& args,
                      const std::string& accessor) override
    {
        if (!obj.is_object() || !obj.as_object()) {
            throw RuntimeError("type error: method " + method + "() called on a non-object " + obj.to_string());
        }
        const ObjectHandle& target = obj.as_object();
        const host::ClassDecl& cls = class_decl(target->class_name());
        const host::MethodDecl* m = cls.method(method);
        if (!m) {
            throw RuntimeError("no such method " + cls.name + "." + method);
        }
        if (cls.name != accessor && m->visibility != host::Visibility::Public) {
            throw RuntimeError("member not accessible: " + cls.name + "." + method);
        }
        if (args.size() != m->params.size()) {
            throw RuntimeError("method " + cls.name + "." + method + " expects " + std::to_string(m->params.size()) +
                               " arguments, got " + std::to_string(args.size()));
        }
        std::vector<HostValue> hargs;
        for (std::size_t i = 0; i < args.size(); ++i) {
            hargs.push_back(to_host(args[i], m->params[i].type.name, m->params[i].type.array_dims));
        }
        return lucid_result(invoke(&cls, *m, m->is_static ? nullptr : target, hargs), m->return_type);
    }

    static Value lucid_result(const HostValue& h, const host::TypeRef& type)
    {
        if (type.is_void()) {
            return Value::void_value();
        }
        return to_lucid(h);
    }

    // ---- values ------------------------------------------------------------

    [[noreturn]] static void type_mismatch(const HostValue& v, const host::TypeRef& t)
    {
        throw RuntimeError("type error: cannot assign " + std::string(to_string(v.kind)) + " to " + t.to_string());
    }

    // Assignment conversion. `cast` also allows the narrowing that compound
    // assignment and ++/-- perform implicitly.
    HostValue coerce(const HostValue& v, const host::TypeRef& t, bool cast = false)
    {
        if (t.array_dims > 0) {
            if (v.kind == HostKind::Array || (v.kind == HostKind::Object && !v.object)) {
                return v;
            }
            type_mismatch(v, t);
        }
        const std::string& n = t.name;
        auto integral_to = [&](HostKind k, std::int64_t lo, std::int64_t hi) {
            std::int64_t x = 0;
            if (v.is_integral()) {
                x = v.integer;
            } else if (cast && v.is_numeric()) {
                x = static_cast<std::int64_t>(v.real);
            } else {
                type_mismatch(v, t);
            }
            if (v.kind == HostKind::Long && k != HostKind::Long && !cast) {
                type_mismatch(v, t);
            }
            if (x < lo || x > hi) {
                if (!cast) {
                    type_mismatch(v, t);
                }
                x = static_cast<std::int64_t>(static_cast<std::uint64_t>(x) & static_cast<std::uint64_t>(hi - lo));
                if (x > hi) {
                    x -= (hi - lo) + 1;
                }
            }
            HostValue r = v;
            r.kind = k;
            r.integer = x;
            r.real = 0;
            return r;
        };
        if (n == "int") {
            return integral_to(HostKind::Int, INT64_MIN, INT64_MAX);
        }
        if (n == "long") {
            return integral_to(HostKind::Long, INT64_MIN, INT64_MAX);
        }
        if (n == "short") {
            return integral_to(HostKind::Short, -32768, 32767);
        }
        if (n == "byte") {
            return integral_to(HostKind::Byte, -128, 127);
        }
        if (n == "char") {
            if (v.kind == HostKind::Char) {
                return v;
            }
            return integral_to(HostKind::Char, 0, 255);
        }
        if (n == "double") {
            if (!v.is_numeric()) {
                type_mismatch(v, t);
            }
            return HostValue::make_double(v.to_double());
        }
        if (n == "float") {
            if (!v.is_numeric() || (v.kind == HostKind::Double && !cast)) {
                type_mismatch(v, t);
            }
            return HostValue::make_float(static_cast<float>(v.to_double()));
        }
        if (n == "boolean") {
            if (v.kind != HostKind::Boolean) {
                type_mismatch(v, t);
            }
            return v;
        }
        if (n == "String") {
            if (v.kind == HostKind::Str || (v.kind == HostKind::Object && !v.object)) {
                return v;
            }
            type_mismatch(v, t);
        }
        if (n.rfind("__", 0) == 0) {
            if (v.kind == HostKind::Native || (v.kind == HostKind::Object && !v.object)) {
                return v;
            }
            type_mismatch(v, t);
        }
        if (v.kind == HostKind::Object || v.kind == HostKind::Native) {
            return v;
        }
        if (n == "Object") {
            return v;
        }
        type_mismatch(v, t);
    }

    HostValue eval_init(const host::Expr& e, const host::TypeRef& type)
    {
        if (e.kind == ExprKind::ArrayLiteral && e.type.name.empty()) {
            return array_literal(e, type);
        }
        return coerce(eval(e), type);
    }

    HostValue array_literal(const host::Expr& e, host::TypeRef type)
    {
        if (type.array_dims == 0) {
            throw RuntimeError("type error: array initializer for non-array type " + type.to_string());
        }
        auto arr = std::make_shared<HostArray>();
        host::TypeRef elem = type;
        --elem.array_dims;
        arr->element_type = elem.to_string();
        for (const auto& op : e.operands) {
            arr->elements.push_back(eval_init(*op, elem));
        }
        return HostValue::make_array(std::move(arr));
    }

    static bool is_floating(const HostValue& v) { return v.kind == HostKind::Double || v.kind == HostKind::Float; }

    HostValue binary(const std::string& op, const HostValue& a, const HostValue& b)
    {
        if (op == "+" && (a.kind == HostKind::Str || b.kind == HostKind::Str)) {
            return HostValue::make_string(a.to_string() + b.to_string());
        }
        if (op == "==" || op == "!=") {
            bool eq = false;
            if (a.is_numeric() && b.is_numeric()) {
                eq = is_floating(a) || is_floating(b) ? a.to_double() == b.to_double() : a.integer == b.integer;
            } else {
                eq = a == b;
            }
            return HostValue::make_bool(op == "==" ? eq : !eq);
        }
        if (op == "&&" || op == "||" || op == "&" || op == "|" || op == "^") {
            if (a.kind == HostKind::Boolean && b.kind == HostKind::Boolean) {
                bool r = op == "&&" || op == "&" ? a.boolean && b.boolean
                         : op == "^"            ? a.boolean != b.boolean
                                                : a.boolean || b.boolean;
                return HostValue::make_bool(r);
            }
            if (op.size() == 1 && a.is_integral() && b.is_integral()) {
                std::int64_t r = op == "&" ? a.integer & b.integer : op == "|" ? a.integer | b.integer : a.integer ^ b.integer;
                return HostValue::make_int(r);
            }
            throw RuntimeError("type error: operator " + op + " on " + to_string(a.kind) + " and " + to_string(b.kind));
        }
        if (!a.is_numeric() || !b.is_numeric()) {
            if ((op == "<" || op == "<=" || op == ">" || op == ">=") && a.kind == HostKind::Str &&
                b.kind == HostKind::Str) {
                int c = a.text.compare(b.text);
                return HostValue::make_bool(op == "<" ? c < 0 : op == "<=" ? c <= 0 : op == ">" ? c > 0 : c >= 0);
            }
            throw RuntimeError("type error: operator " + op + " on " + to_string(a.kind) + " and " + to_string(b.kind));
        }
        if (op == "<" || op == "<=" || op == ">" || op == ">=") {
            bool r = false;
            if (is_floating(a) || is_floating(b)) {
                double x = a.to_double(), y = b.to_double();
                r = op == "<" ? x < y : op == "<=" ? x <= y : op == ">" ? x > y : x >= y;
            } else {
                r = op == "<" ? a.integer < b.integer : op == "<=" ? a.integer <= b.integer
                    : op == ">" ? a.integer > b.integer : a.integer >= b.integer;
            }
            return HostValue::make_bool(r);
        }
        if (is_floating(a) || is_floating(b)) {
            double x = a.to_double(), y = b.to_double(), r = 0;
            if (op == "+") r = x + y;
            else if (op == "-") r = x - y;
            else if (op == "*") r = x * y;
            else if (op == "/") r = x / y;
            else if (op == "%") r = std::fmod(x, y);
            else throw RuntimeError("type error: operator " + op + " on floating-point operands");
            if (a.kind != HostKind::Double && b.kind != HostKind::Double) {
                return HostValue::make_float(static_cast<float>(r));
            }
            return HostValue::make_double(r);
        }
        std::int64_t x = a.integer, y = b.integer, r = 0;
        if (op == "+") r = static_cast<std::int64_t>(static_cast<std::uint64_t>(x) + static_cast<std::uint64_t>(y));
        else if (op == "-") r = static_cast<std::int64_t>(static_cast<std::uint64_t>(x) - static_cast<std::uint64_t>(y));
        else if (op == "*") r = static_cast<std::int64_t>(static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(y));
        else if (op == "/" || op == "%") {
            if (y == 0) {
                throw RuntimeError("division by zero");
            }
            if (x == INT64_MIN && y == -1) {
                r = op == "/" ? x : 0;
            } else {
                r = op == "/" ? x / y : x % y;
            }
        } else if (op == "<<") r = static_cast<std::int64_t>(static_cast<std::uint64_t>(x) << (y & 63));
        else if (op == ">>") r = x >> (y & 63);
        else throw RuntimeError("type error: operator " + op + " on integers");
        return a.kind == HostKind::Long || b.kind == HostKind::Long ? HostValue::make_long(r) : HostValue::make_int(r);
    }

    // ---- lvalues -----------------------------------------------------------

    struct LRef {
        std::function<HostValue()> get;
        std::function<void(const HostValue&)> set;
        host::TypeRef type;
    };

    bool names_class(const host::Expr& e)
    {
        return e.kind == ExprKind::Name && !find_local(e.name) && !current_field(e.name) && unit_.find_class(e.name);
    }

    const host::FieldDecl* current_field(const std::string& name)
    {
        if (frames_.empty() || !frame().cls) {
            return nullptr;
        }
        return frame().cls->field(name);
    }

    void check_private(const host::ClassDecl& owner, host::Visibility v, const std::string& member)
    {
        if (v == host::Visibility::Private && (frames_.empty() || !frame().cls || frame().cls->name != owner.name)) {
            throw RuntimeError("member not accessible: " + owner.name + "." + member);
        }
    }

    LRef field_ref(ObjectHandle obj, const host::ClassDecl& c, const std::string& name)
    {
        const host::FieldDecl* f = c.field(name);
        if (!f) {
            throw RuntimeError("no such member " + c.name + "." + name);
        }
        check_private(c, f->visibility, name);
        if (!f->is_static && !obj) {
            throw RuntimeError("non-static field " + c.name + "." + name + " read from a static context");
        }
        const host::ClassDecl* cp = &c;
        return LRef{[this, obj, cp, name] { return read_field(obj, *cp, name); },
                    [this, obj, cp, name](const HostValue& v) { write_field(obj, *cp, name, v); }, f->type};
    }

    LRef context_ref(ObjectHandle obj)
    {
        if (!obj) {
            throw RuntimeError("__ctx used in a static context");
        }
        return LRef{[obj] { return HostValue::make_native(std::make_shared<ContextHandle>(obj->context())); },
                    [obj](const HostValue& v) {
                        if (v.kind == HostKind::Native) {
                            if (auto* h = dynamic_cast<ContextHandle*>(v.native.get())) {
                                obj->set_context(h->ctx);
                                return;
                            }
                        }
                        if (v.kind == HostKind::Object && !v.object) {
                            obj->set_context({});
                            return;
                        }
                        throw RuntimeError("type error: __ctx assigned a non-context value");
                    },
                    host::TypeRef{"__Context", 0}};
    }

    LRef lvalue(const host::Expr& e)
    {
        switch (e.kind) {
        case ExprKind::Name: {
            if (Local* l = find_local(e.name)) {
                return LRef{[l] { return l->value; },
                            [this, l](const HostValue& v) { l->value = coerce(v, l->type); }, l->type};
            }
            ObjectHandle self = frames_.empty() ? nullptr : frame().self;
            if (e.name == "__ctx") {
                return context_ref(self);
            }
            if (current_field(e.name)) {
                return field_ref(self, *frame().cls, e.name);
            }
            throw RuntimeError("undefined name " + e.name);
        }
        case ExprKind::FieldAccess: {
            const host::Expr& t = *e.operands[0];
            if (names_class(t)) {
                return field_ref(nullptr, class_decl(t.name), e.name);
            }
            HostValue target = eval(t);
            if (target.kind == HostKind::Object) {
                if (!target.object) {
                    throw RuntimeError("null pointer dereference reading ." + e.name);
                }
                if (e.name == "__ctx") {
                    return context_ref(target.object);
                }
                return field_ref(target.object, class_decl(target.object->class_name()), e.name);
            }
            throw RuntimeError("type error: field ." + e.name + " of " + to_string(target.kind));
        }
        case ExprKind::Index: {
            HostValue arr = eval(*e.operands[0]);
            HostValue idx = eval(*e.operands[1]);
            if (arr.kind != HostKind::Array) {
                if (arr.kind == HostKind::Object && !arr.object) {
                    throw RuntimeError("null pointer dereference indexing an array");
                }
                throw RuntimeError("type error: indexing a " + std::string(to_string(arr.kind)));
            }
            if (!idx.is_integral()) {
                throw RuntimeError("type error: array index of type " + std::string(to_string(idx.kind)));
            }
            auto a = arr.array;
            std::int64_t i = idx.integer;
            if (i < 0 || static_cast<std::size_t>(i) >= a->elements.size()) {
                throw RuntimeError("array index " + std::to_string(i) + " out of bounds for length " +
                                   std::to_string(a->elements.size()));
            }
            host::TypeRef elem = parse_type_name(a->element_type);
            return LRef{[a, i] { return a->elements[static_cast<std::size_t>(i)]; },
                        [this, a, i, elem](const HostValue& v) {
                            a->elements[static_cast<std::size_t>(i)] = elem.name == "Object" ? v : coerce(v, elem);
                        },
                        elem};
        }
        default:
            throw RuntimeError("expression is not assignable");
        }
    }

    // ---- expressions -------------------------------------------------------

    HostValue literal(const host::HostLiteral& l)
    {
        switch (l.kind) {
        case host::HostLiteral::Kind::Int: return HostValue::make_int(l.integer);
        case host::HostLiteral::Kind::Long: return HostValue::make_long(l.integer);
        case host::HostLiteral::Kind::Double: return HostValue::make_double(l.real);
        case host::HostLiteral::Kind::Boolean: return HostValue::make_bool(l.boolean);
        case host::HostLiteral::Kind::Char: return HostValue::make_char(l.text.empty() ? '\0' : l.text[0]);
        case host::HostLiteral::Kind::String: return HostValue::make_string(l.text);
        }
        return {};
    }

    std::vector<HostValue> eval_args(const host::Expr& e, std::size_t from)
    {
        std::vector<HostValue> args;
        for (std::size_t i = from; i < e.operands.size(); ++i) {
            args.push_back(eval(*e.operands[i]));
        }
        return args;
    }

    HostValue eval(const host::Expr& e)
    {
        try {
            return eval_inner(e);
        } catch (RuntimeError& err) {
            if (err.backtrace().empty() && !unit_.file.empty()) {
                err.push_frame(unit_.file + ":" + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column));
            }
            throw;
        }
    }

    HostValue eval_inner(const host::Expr& e)
    {
        switch (e.kind) {
        case ExprKind::Literal: return literal(e.literal);
        case ExprKind::Null: return HostValue::null();
        case ExprKind::This:
            if (frames_.empty() || !frame().self) {
                throw RuntimeError("this used in a static context");
            }
            return HostValue::make_object(frame().self);
        case ExprKind::Name: return lvalue(e).get();
        case ExprKind::FieldAccess: {
            const host::Expr& t = *e.operands[0];
            if (t.kind == ExprKind::Name && !find_local(t.name) && !current_field(t.name)) {
                if (t.name == "System" && (e.name == "out" || e.name == "err")) {
                    return HostValue::make_native(std::make_shared<PrintStreamHandle>());
                }
                if (t.name == "Math" && e.name == "PI") {
                    return HostValue::make_double(3.141592653589793);
                }
            }
            if (!names_class(t)) {
                HostValue target = eval(t);
                if (target.kind == HostKind::Array && e.name == "length") {
                    return HostValue::make_int(static_cast<std::int64_t>(target.array->elements.size()));
                }
            }
            return lvalue(e).get();
        }
        case ExprKind::Index: return lvalue(e).get();
        case ExprKind::Call: return eval_call(e);
        case ExprKind::MethodCall: return eval_method_call(e);
        case ExprKind::New: {
            if (e.type.name == "__Engine") {
                HostValue p = eval(*e.operands.at(0));
                auto* h = p.kind == HostKind::Native ? dynamic_cast<ProgramHandle*>(p.native.get()) : nullptr;
                if (!h) {
                    throw RuntimeError("__Engine needs a compiled segment program");
                }
                return HostValue::make_native(std::make_shared<EngineHandle>(h->index));
            }
            if (e.type.name == "__Context") {
                return HostValue::make_native(std::make_shared<ContextHandle>(Context{}));
            }
            return HostValue::make_object(construct(e.type.name, eval_args(e, 0)));
        }
        case ExprKind::NewArray: {
            HostValue n = eval(*e.operands.at(0));
            if (!n.is_integral() || n.integer < 0) {
                throw RuntimeError("invalid array size " + n.to_string());
            }
            auto arr = std::make_shared<HostArray>();
            host::TypeRef elem = e.type;
            if (elem.array_dims > 0) {
                --elem.array_dims;
            }
            arr->element_type = elem.to_string();
            arr->elements.assign(static_cast<std::size_t>(n.integer), default_value(elem.name, elem.array_dims));
            return HostValue::make_array(std::move(arr));
        }
        case ExprKind::ArrayLiteral: {
            host::TypeRef t = e.type;
            if (t.name.empty()) {
                t = host::TypeRef{"Object", 1};
            }
            if (t.array_dims == 0) {
                t.array_dims = 1;
            }
            return array_literal(e, t);
        }
        case ExprKind::Binary: {
            HostValue a = eval(*e.operands[0]);
            if (e.op == "&&" || e.op == "||") {
                if (a.kind != HostKind::Boolean) {
                    throw RuntimeError("type error: operator " + e.op + " on " + to_string(a.kind));
                }
                if (a.boolean == (e.op == "||")) {
                    return a;
                }
            }
            return binary(e.op, a, eval(*e.operands[1]));
        }
        case ExprKind::Unary: {
            HostValue a = eval(*e.operands[0]);
            if (e.op == "!") {
                if (a.kind != HostKind::Boolean) {
                    throw RuntimeError("type error: ! on " + std::string(to_string(a.kind)));
                }
                return HostValue::make_bool(!a.boolean);
            }
            if (!a.is_numeric()) {
                throw RuntimeError("type error: unary " + e.op + " on " + std::string(to_string(a.kind)));
            }
            if (e.op == "-") {
                return binary("-", a.kind == HostKind::Double ? HostValue::make_double(0)
                                   : a.kind == HostKind::Float ? HostValue::make_float(0)
                                   : a.kind == HostKind::Long  ? HostValue::make_long(0)
                                                               : HostValue::make_int(0),
                              a);
            }
            if (a.kind == HostKind::Char || a.kind == HostKind::Byte || a.kind == HostKind::Short) {
                return HostValue::make_int(a.integer);
            }
            return a;
        }
        case ExprKind::Assign: {
            LRef ref = lvalue(*e.operands[0]);
            HostValue v;
            if (e.op == "=") {
                const host::Expr& rhs = *e.operands[1];
                v = rhs.kind == ExprKind::ArrayLiteral && rhs.type.name.empty() ? array_literal(rhs, ref.type) : eval(rhs);
            } else {
                HostValue cur = ref.get();
                v = binary(e.op.substr(0, e.op.size() - 1), cur, eval(*e.operands[1]));
                if (!(cur.kind == HostKind::Str && e.op == "+=")) {
                    v = coerce(v, ref.type, true);
                }
            }
            ref.set(v);
            return ref.get();
        }
        case ExprKind::IncDec: {
            LRef ref = lvalue(*e.operands[0]);
            HostValue cur = ref.get();
            HostValue next = coerce(binary(e.op == "++" ? "+" : "-", cur, HostValue::make_int(1)), ref.type, true);
            ref.set(next);
            return e.prefix ? next : cur;
        }
        case ExprKind::Ternary: {
            HostValue c = eval(*e.operands[0]);
            if (c.kind != HostKind::Boolean) {
                throw RuntimeError("type error: condition of type " + std::string(to_string(c.kind)));
            }
            return eval(*e.operands[c.boolean ? 1 : 2]);
        }
        case ExprKind::Segment: return eval_segment_expr(e);
        }
        throw InternalError("unknown host expression");
    }

    // ---- calls -------------------------------------------------------------

    HostValue print(const std::string& name, const std::vector<HostValue>& args)
    {
        if (args.size() > 1 || (name == "print" && args.empty())) {
            throw RuntimeError(name + " expects one argument");
        }
        if (!args.empty()) {
            out() << args[0].to_string();
        }
        if (name == "println") {
            out() << '\n';
        }
        return HostValue::void_value();
    }

    const SegmentInfo& segment_for(const HostValue& engine_handle)
    {
        auto* h = engine_handle.kind == HostKind::Native ? dynamic_cast<EngineHandle*>(engine_handle.native.get())
                                                         : nullptr;
        if (!h) {
            throw RuntimeError("eval called on a non-engine value");
        }
        return segments_.at(h->index - 1);
    }

    static const Value& lucid_value_of(const HostValue& v)
    {
        auto* h = v.kind == HostKind::Native ? dynamic_cast<LucidValueHandle*>(v.native.get()) : nullptr;
        if (!h) {
            throw RuntimeError("__convert needs an engine result");
        }
        return h->value;
    }

    static const std::string& string_arg(const HostValue& v, const char* what)
    {
        if (v.kind != HostKind::Str) {
            throw RuntimeError(std::string(what) + " must be a string literal");
        }
        return v.text;
    }

    HostValue intrinsic_compile(const std::vector<HostValue>& args)
    {
        if (args.size() < 6 || !args[0].is_integral() || args[5].kind != HostKind::Boolean) {
            throw RuntimeError("malformed __compile call");
        }
        SegmentInfo info;
        info.index = static_cast<std::size_t>(args[0].integer);
        info.tag = string_arg(args[1], "segment tag");
        info.text = string_arg(args[2], "segment text");
        info.class_name = string_arg(args[3], "segment class");
        info.member = string_arg(args[4], "segment member");
        info.static_context = args[5].boolean;
        for (std::size_t i = 6; i < args.size(); ++i) {
            info.locals.push_back(string_arg(args[i], "captured local"));
        }
        if (const host::ClassDecl* c = unit_.find_class(info.class_name); c && !info.member.empty()) {
            if (const host::FieldDecl* f = c->field(info.member)) {
                info.member_type = f->type;
            }
        }
        if (info.index == 0) {
            throw RuntimeError("segment indices start at 1");
        }
        if (segments_.size() < info.index) {
            segments_.resize(info.index);
        }
        if (segments_[info.index - 1].index != 0) {
            throw RuntimeError("segment " + std::to_string(info.index) + " registered twice");
        }
        std::size_t index = info.index;
        segments_[index - 1] = std::move(info);
        return HostValue::make_native(std::make_shared<ProgramHandle>(index));
    }

    HostValue intrinsic_eval(const HostValue& handle, const std::vector<HostValue>& args)
    {
        const SegmentInfo& seg = segment_for(handle);
        if (args.size() != 2 + seg.locals.size()) {
            throw RuntimeError("eval of segment " + std::to_string(seg.index) + " expects " +
                               std::to_string(2 + seg.locals.size()) + " arguments");
        }
        ObjectHandle self = args[0].kind == HostKind::Object ? args[0].object : nullptr;
        Context ctx;
        if (args[1].kind == HostKind::Native) {
            if (auto* c = dynamic_cast<ContextHandle*>(args[1].native.get())) {
                ctx = c->ctx;
            }
        }
        Value v = eval_segment(seg, self, ctx, [&](const std::string& name) {
                      for (std::size_t i = 0; i < seg.locals.size(); ++i) {
                          if (seg.locals[i] == name) {
                              return args[2 + i];
                          }
                      }
                      throw RuntimeError("capture " + name + " missing from bindings");
                  }).value;
        return HostValue::make_native(std::make_shared<LucidValueHandle>(v));
    }

    HostValue call_user(const host::ClassDecl& c, const host::MethodDecl& m, ObjectHandle self,
                        const std::vector<HostValue>& args)
    {
        check_private(c, m.visibility, m.name);
        if (!m.is_static && !self) {
            throw RuntimeError("non-static method " + c.name + "." + m.name + " called from a static context");
        }
        return invoke(&c, m, m.is_static ? nullptr : self, args);
    }

    const host::MethodDecl* find_method(const host::ClassDecl& c, const std::string& name, std::size_t arity)
    {
        const host::MethodDecl* any = nullptr;
        for (const auto& m : c.methods) {
            if (m.name == name && !m.is_constructor) {
                if (m.params.size() == arity) {
                    return &m;
                }
                any = &m;
            }
        }
        return any;
    }

    HostValue eval_call(const host::Expr& e)
    {
        std::vector<HostValue> args = eval_args(e, 0);
        if (e.name == "__compile") {
            return intrinsic_compile(args);
        }
        if (e.name == "__convert" && args.size() == 1) {
            return natural_host_value(lucid_value_of(args[0]));
        }
        if (e.name == "__convert_as" && args.size() == 2) {
            host::TypeRef t = parse_type_name(string_arg(args[0], "conversion type"));
            return to_host(lucid_value_of(args[1]), t.name, t.array_dims, &warnings_);
        }
        if (!frames_.empty() && frame().cls) {
            if (const host::MethodDecl* m = find_method(*frame().cls, e.name, args.size())) {
                return call_user(*frame().cls, *m, frame().self, args);
            }
        }
        for (const auto& f : unit_.functions) {
            if (f.name == e.name) {
                return invoke(nullptr, f, nullptr, args);
            }
        }
        if (e.name == "print" || e.name == "println") {
            return print(e.name, args);
        }
        throw RuntimeError("undefined method " + e.name);
    }

    HostValue math_call(const std::string& name, const std::vector<HostValue>& args)
    {
        auto num = [&](std::size_t i) {
            if (i >= args.size() || !args[i].is_numeric()) {
                throw RuntimeError("Math." + name + " expects numeric arguments");
            }
            return args[i];
        };
        auto all_integral = [&] {
            for (const auto& a : args) {
                if (!a.is_integral()) {
                    return false;
                }
            }
            return true;
        };
        if (name == "abs" && args.size() == 1) {
            HostValue a = num(0);
            return a.is_integral() ? HostValue::make_int(a.integer < 0 ? -a.integer : a.integer)
                                   : HostValue::make_double(std::fabs(a.to_double()));
        }
        if ((name == "min" || name == "max") && args.size() == 2) {
            HostValue a = num(0), b = num(1);
            bool take_a = name == "min" ? a.to_double() <= b.to_double() : a.to_double() >= b.to_double();
            if (all_integral()) {
                return HostValue::make_int(take_a ? a.integer : b.integer);
            }
            return HostValue::make_double(take_a ? a.to_double() : b.to_double());
        }
        if (name == "sqrt" && args.size() == 1) {
            return HostValue::make_double(std::sqrt(num(0).to_double()));
        }
        if (name == "pow" && args.size() == 2) {
            return HostValue::make_double(std::pow(num(0).to_double(), num(1).to_double()));
        }
        if (name == "floor" && args.size() == 1) {
            return HostValue::make_double(std::floor(num(0).to_double()));
        }
        if (name == "ceil" && args.size() == 1) {
            return HostValue::make_double(std::ceil(num(0).to_double()));
        }
        throw RuntimeError("undefined method Math." + name);
    }

    HostValue string_call(const HostValue& s, const std::string& name, const std::vector<HostValue>& args)
    {
        if (name == "length" && args.empty()) {
            return HostValue::make_int(static_cast<std::int64_t>(s.text.size()));
        }
        if (name == "isEmpty" && args.empty()) {
            return HostValue::make_bool(s.text.empty());
        }
        if (name == "equals" && args.size() == 1) {
            return HostValue::make_bool(args[0].kind == HostKind::Str && args[0].text == s.text);
        }
        if (name == "charAt" && args.size() == 1 && args[0].is_integral()) {
            std::int64_t i = args[0].integer;
            if (i < 0 || static_cast<std::size_t>(i) >= s.text.size()) {
                throw RuntimeError("string index " + std::to_string(i) + " out of bounds");
            }
            return HostValue::make_char(s.text[static_cast<std::size_t>(i)]);
        }
        if (name == "toString" && args.empty()) {
            return s;
        }
        throw RuntimeError("undefined method String." + name);
    }

    HostValue eval_method_call(const host::Expr& e)
    {
        const host::Expr& t = *e.operands[0];
        if (t.kind == ExprKind::Name && !find_local(t.name) && !current_field(t.name)) {
            if (t.name == "Math") {
                return math_call(e.name, eval_args(e, 1));
            }
            if (unit_.find_class(t.name)) {
                const host::ClassDecl& c = class_decl(t.name);
                std::vector<HostValue> args = eval_args(e, 1);
                const host::MethodDecl* m = find_method(c, e.name, args.size());
                if (!m) {
                    throw RuntimeError("undefined method " + c.name + "." + e.name);
                }
                if (!m->is_static) {
                    throw RuntimeError("non-static method " + c.name + "." + e.name + " called from a static context");
                }
                return call_user(c, *m, nullptr, args);
            }
        }
        HostValue target = eval(t);
        std::vector<HostValue> args = eval_args(e, 1);
        switch (target.kind) {
        case HostKind::Object: {
            if (!target.object) {
                throw RuntimeError("null pointer dereference calling " + e.name + "()");
            }
            const host::ClassDecl& c = class_decl(target.object->class_name());
            const host::MethodDecl* m = find_method(c, e.name, args.size());
            if (!m) {
                if (e.name == "toString" && args.empty()) {
                    return HostValue::make_string(target.to_string());
                }
                throw RuntimeError("undefined method " + c.name + "." + e.name);
            }
            return call_user(c, *m, target.object, args);
        }
        case HostKind::Str: return string_call(target, e.name, args);
        case HostKind::Native:
            if (dynamic_cast<PrintStreamHandle*>(target.native.get()) && (e.name == "print" || e.name == "println")) {
                return print(e.name, args);
            }
            if (dynamic_cast<EngineHandle*>(target.native.get()) && e.name == "eval") {
                return intrinsic_eval(target, args);
            }
            throw RuntimeError("undefined method " + target.native->type_name() + "." + e.name);
        default:
            throw RuntimeError("type error: method " + e.name + "() called on " + to_string(target.kind));
        }
    }

    // ---- statements --------------------------------------------------------

    Flow exec(const host::Stmt& s)
    {
        switch (s.kind) {
        case StmtKind::Empty: return Flow::Normal;
        case StmtKind::Block: {
            frame().scopes.emplace_back();
            Flow flow = Flow::Normal;
            try {
                for (const auto& b : s.body) {
                    flow = exec(*b);
                    if (flow != Flow::Normal) {
                        break;
                    }
                }
            } catch (...) {
                frame().scopes.pop_back();
                throw;
            }
            frame().scopes.pop_back();
            return flow;
        }
        case StmtKind::LocalDecl:
            for (const auto& [name, init] : s.vars) {
                HostValue v = init ? eval_init(*init, s.type) : default_value(s.type.name, s.type.array_dims);
                frame().scopes.back()[name] = Local{v, s.type};
            }
            return Flow::Normal;
        case StmtKind::ExprStmt: eval(*s.expr); return Flow::Normal;
        case StmtKind::If:
            if (condition(*s.expr)) {
                return exec(*s.then_branch);
            }
            return s.else_branch ? exec(*s.else_branch) : Flow::Normal;
        case StmtKind::While:
            while (condition(*s.expr)) {
                Flow flow = exec(*s.then_branch);
                if (flow == Flow::Break) {
                    break;
                }
                if (flow == Flow::Return) {
                    return flow;
                }
            }
            return Flow::Normal;
        case StmtKind::For: {
            frame().scopes.emplace_back();
            Flow result = Flow::Normal;
            try {
                if (s.init) {
                    exec(*s.init);
                }
                while (!s.expr || condition(*s.expr)) {
                    Flow flow = exec(*s.then_branch);
                    if (flow == Flow::Break) {
                        break;
                    }
                    if (flow == Flow::Return) {
                        result = flow;
                        break;
                    }
                    for (const auto& u : s.update) {
                        eval(*u);
                    }
                }
            } catch (...) {
                frame().scopes.pop_back();
                throw;
            }
            frame().scopes.pop_back();
            return result;
        }
        case StmtKind::Return:
            frame().ret = s.expr ? eval(*s.expr) : HostValue::void_value();
            return Flow::Return;
        case StmtKind::Break: return Flow::Break;
        case StmtKind::Continue: return Flow::Continue;
        }
        return Flow::Normal;
    }

    bool condition(const host::Expr& e)
    {
        HostValue c = eval(e);
        if (c.kind != HostKind::Boolean) {
            throw RuntimeError("type error: condition of type " + std::string(to_string(c.kind)));
        }
        return c.boolean;
    }

    const host::Unit& unit_;
    const Program* program_;
    RunOptions opts_;
    Engine engine_;
    FreeFunctionRegistry ffw_;
    std::vector<SegmentInfo> segments_;
    std::map<std::string, std::map<std::string, Slot>> statics_;
    std::map<std::string, int> class_state_;
    std::vector<CallFrame> frames_;
    std::vector<std::string> warnings_;
    bool initialized_ = false;
    bool finalized_ = false;
    std::uint64_t next_id_ = 1;
};

Interpreter::Interpreter(const Program& program, RunOptions options)
    : impl_(std::make_unique<Impl>(program.unit, &program, options))
{
}

Interpreter::Interpreter(const host::Unit& unit, RunOptions options)
    : impl_(std::make_unique<Impl>(unit, nullptr, options))
{
}

Interpreter::~Interpreter() = default;

void Interpreter::run() { impl_->run(); }

void Interpreter::initialize() { impl_->initialize(); }

Engine& Interpreter::engine() { return impl_->engine_; }

const std::vector<SegmentInfo>& Interpreter::segments() const { return impl_->segments_; }

ObjectHandle Interpreter::construct(const std::string& class_name, const std::vector<HostValue>& args)
{
    impl_->initialize();
    return impl_->construct(class_name, args);
}

HostValue Interpreter::call(const HostValue& target, const std::string& method, const std::vector<HostValue>& args)
{
    impl_->initialize();
    if (target.kind != HostKind::Object || !target.object) {
        throw RuntimeError("null pointer dereference calling " + method + "()");
    }
    const host::ClassDecl& c = impl_->class_decl(target.object->class_name());
    const host::MethodDecl* m = impl_->find_method(c, method, args.size());
    if (!m) {
        throw RuntimeError("undefined method " + c.name + "." + method);
    }
    return impl_->invoke(&c, *m, m->is_static ? nullptr : target.object, args);
}

HostValue Interpreter::call_static(const std::string& class_name, const std::string& method,
                                   const std::vector<HostValue>& args)
{
    impl_->initialize();
    const host::ClassDecl& c = impl_->class_decl(class_name);
    const host::MethodDecl* m = impl_->find_method(c, method, args.size());
    if (!m || !m->is_static) {
        throw RuntimeError("undefined static method " + class_name + "." + method);
    }
    return impl_->invoke(&c, *m, nullptr, args);
}

HostValue Interpreter::read_field(const ObjectHandle& obj, const std::string& field)
{
    impl_->initialize();
    if (!obj) {
        throw RuntimeError("null pointer dereference reading ." + field);
    }
    return impl_->read_field(obj, impl_->class_decl(obj->class_name()), field);
}

void Interpreter::write_field(const ObjectHandle& obj, const std::string& field, const HostValue& value)
{
    impl_->initialize();
    if (!obj) {
        throw RuntimeError("null pointer dereference writing ." + field);
    }
    impl_->write_field(obj, impl_->class_decl(obj->class_name()), field, value);
}

}  // namespace jooip
