#include "jooip/host_value.hpp"

#include <cmath>

namespace jooip {

const char* to_string(HostKind kind)
{
    switch (kind) {
    case HostKind::Byte: return "byte";
    case HostKind::Short: return "short";
    case HostKind::Int: return "int";
    case HostKind::Long: return "long";
    case HostKind::Float: return "float";
    case HostKind::Double: return "double";
    case HostKind::Boolean: return "boolean";
    case HostKind::Char: return "char";
    case HostKind::Str: return "String";
    case HostKind::Array: return "array";
    case HostKind::Object: return "object";
    case HostKind::Void: return "void";
    case HostKind::Native: return "native";
    }
    return "?";
}

HostValue HostValue::make_double(double v)
{
    HostValue h;
    h.kind = HostKind::Double;
    h.real = v;
    return h;
}

HostValue HostValue::make_float(float v)
{
    HostValue h;
    h.kind = HostKind::Float;
    h.real = v;
    return h;
}

HostValue HostValue::make_bool(bool v)
{
    HostValue h;
    h.kind = HostKind::Boolean;
    h.boolean = v;
    return h;
}

HostValue HostValue::make_string(std::string v)
{
    HostValue h;
    h.kind = HostKind::Str;
    h.text = std::move(v);
    return h;
}

HostValue HostValue::make_object(ObjectHandle obj)
{
    HostValue h;
    h.kind = HostKind::Object;
    h.object = std::move(obj);
    return h;
}

HostValue HostValue::make_array(std::shared_ptr<HostArray> arr)
{
    HostValue h;
    h.kind = HostKind::Array;
    h.array = std::move(arr);
    return h;
}

HostValue HostValue::make_native(std::shared_ptr<NativeHandle> n)
{
    HostValue h;
    h.kind = HostKind::Native;
    h.native = std::move(n);
    return h;
}

bool HostValue::is_integral() const
{
    return kind == HostKind::Byte || kind == HostKind::Short || kind == HostKind::Int || kind == HostKind::Long ||
           kind == HostKind::Char;
}

bool HostValue::is_numeric() const
{
    return is_integral() || kind == HostKind::Float || kind == HostKind::Double;
}

double HostValue::to_double() const
{
    return is_integral() ? static_cast<double>(integer) : real;
}

std::string HostValue::to_string() const
{
    switch (kind) {
    case HostKind::Byte:
    case HostKind::Short:
    case HostKind::Int:
    case HostKind::Long: return std::to_string(integer);
    case HostKind::Char: return std::string(1, static_cast<char>(integer));
    case HostKind::Float: return Value::floating(static_cast<float>(real)).to_string();
    case HostKind::Double: return format_double(real);
    case HostKind::Boolean: return boolean ? "true" : "false";
    case HostKind::Str: return text;
    case HostKind::Array: {
        if (!array) {
            return "null";
        }
        std::string out = "[";
        for (std::size_t i = 0; i < array->elements.size(); ++i) {
            out += (i ? ", " : "") + array->elements[i].to_string();
        }
        return out + "]";
    }
    case HostKind::Object:
        return object ? object->class_name() + "@" + std::to_string(object->id()) : "null";
    case HostKind::Void: return "void";
    case HostKind::Native: {
        if (auto c = std::dynamic_pointer_cast<ContextHandle>(native)) {
            return c->ctx.to_string();
        }
        return native ? native->type_name() : "null";
    }
    }
    return "?";
}

bool operator==(const HostValue& a, const HostValue& b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case HostKind::Float:
    case HostKind::Double: return a.real == b.real || (std::isnan(a.real) && std::isnan(b.real));
    case HostKind::Boolean: return a.boolean == b.boolean;
    case HostKind::Str: return a.text == b.text;
    case HostKind::Array:
        if (a.array == b.array) {
            return true;
        }
        return a.array && b.array && a.array->element_type == b.array->element_type &&
               a.array->elements == b.array->elements;
    case HostKind::Object: return a.object == b.object;
    case HostKind::Void: return true;
    case HostKind::Native: return a.native == b.native;
    default: return a.integer == b.integer;
    }
}

Slot* HostObject::slot(const std::string& name)
{
    auto it = slots_.find(name);
    return it == slots_.end() ? nullptr : &it->second;
}

HostValue default_value(const std::string& type_name, int array_dims)
{
    if (array_dims > 0) {
        HostValue h;
        h.kind = HostKind::Array;
        return h;
    }
    if (type_name == "int") return HostValue::make_int(0);
    if (type_name == "long") return HostValue::make_long(0);
    if (type_name == "byte") return HostValue::make_byte(0);
    if (type_name == "short") return HostValue::make_short(0);
    if (type_name == "char") return HostValue::make_char('\0');
    if (type_name == "double") return HostValue::make_double(0);
    if (type_name == "float") return HostValue::make_float(0);
    if (type_name == "boolean") return HostValue::make_bool(false);
    if (type_name.rfind("__", 0) == 0) {
        return HostValue::make_native(nullptr);
    }
    return HostValue::null();
}

}  // namespace jooip
