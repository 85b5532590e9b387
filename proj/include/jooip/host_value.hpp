#pragma once

// Runtime values and objects of the host interpreter.

#include "jooip/context.hpp"
#include "jooip/value.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace jooip {

namespace host {
struct ClassDecl;
struct Expr;
}  // namespace host

enum class HostKind { Byte, Short, Int, Long, Float, Double, Boolean, Char, Str, Array, Object, Void, Native };

const char* to_string(HostKind kind);

struct HostArray;

/// Opaque runtime handle used by translated code (program slots, engines,
/// contexts).
struct NativeHandle {
    virtual ~NativeHandle() = default;
    virtual std::string type_name() const = 0;
};

/// Translated code's `__Context` values.
struct ContextHandle : NativeHandle {
    explicit ContextHandle(Context c) : ctx(std::move(c)) {}
    std::string type_name() const override { return "__Context"; }
    Context ctx;
};

struct HostValue {
    HostKind kind = HostKind::Void;
    std::int64_t integer = 0;       // Byte Short Int Long Char
    double real = 0;                // Float Double
    bool boolean = false;
    std::string text;               // Str
    std::shared_ptr<HostArray> array;
    ObjectHandle object;            // Object; null when empty
    std::shared_ptr<NativeHandle> native;

    static HostValue make_int(std::int64_t v) { return integral(HostKind::Int, v); }
    static HostValue make_long(std::int64_t v) { return integral(HostKind::Long, v); }
    static HostValue make_byte(std::int64_t v) { return integral(HostKind::Byte, v); }
    static HostValue make_short(std::int64_t v) { return integral(HostKind::Short, v); }
    static HostValue make_char(char c) { return integral(HostKind::Char, static_cast<unsigned char>(c)); }
    static HostValue make_double(double v);
    static HostValue make_float(float v);
    static HostValue make_bool(bool v);
    static HostValue make_string(std::string v);
    static HostValue make_object(ObjectHandle obj);
    static HostValue null() { return make_object(nullptr); }
    static HostValue make_array(std::shared_ptr<HostArray> arr);
    static HostValue make_native(std::shared_ptr<NativeHandle> n);
    static HostValue void_value() { return {}; }

    bool is_integral() const;   // Byte Short Int Long Char
    bool is_numeric() const;    // integral or Float/Double
    double to_double() const;

    /// `print` form: integers plain, doubles shortest round-trip with ".0".
    std::string to_string() const;

    friend bool operator==(const HostValue& a, const HostValue& b);

private:
    static HostValue integral(HostKind k, std::int64_t v)
    {
        HostValue h;
        h.kind = k;
        h.integer = v;
        return h;
    }
};

struct HostArray {
    std::string element_type;
    std::vector<HostValue> elements;
};

/// A field slot. Intensional members start unwritten; class-typed fields
/// start as a pending thunk forced on first read.
struct Slot {
    HostValue value;
    bool intensional = false;
    bool written = false;
    const host::Expr* pending = nullptr;   // lazy initializer
};

class HostObject {
public:
    HostObject(std::string class_name, const host::ClassDecl* decl, std::uint64_t id)
        : class_name_(std::move(class_name)), decl_(decl), id_(id)
    {
    }

    const std::string& class_name() const { return class_name_; }
    const host::ClassDecl* decl() const { return decl_; }
    std::uint64_t id() const { return id_; }

    std::map<std::string, Slot>& slots() { return slots_; }
    const std::map<std::string, Slot>& slots() const { return slots_; }
    Slot* slot(const std::string& name);

    /// Per-object evaluation context for its segments; starts empty.
    const Context& context() const { return ctx_; }
    void set_context(Context ctx) { ctx_ = std::move(ctx); }

private:
    std::string class_name_;
    const host::ClassDecl* decl_;
    std::uint64_t id_;
    std::map<std::string, Slot> slots_;
    Context ctx_;
};

/// Zero value of a declared type: 0, 0.0, false, or null.
HostValue default_value(const std::string& type_name, int array_dims = 0);

}  // namespace jooip
