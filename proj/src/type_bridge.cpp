#include "jooip/type_bridge.hpp"

#include "jooip/diagnostics.hpp"

#include <cctype>
#include <limits>

namespace jooip {

const std::vector<TypeMapRow>& type_map()
{
    static const std::vector<TypeMapRow> rows = {
        {"dimension", "int, String", "GIPSYContext", ValueKind::ContextValue, Convertibility::Exact},
        {"char", "char", "GIPSYCharacter", ValueKind::Character, Convertibility::Exact},
        {"int", "byte", "GIPSYInteger", ValueKind::Integer, Convertibility::Widening},
        {"int", "short", "GIPSYInteger", ValueKind::Integer, Convertibility::Widening},
        {"int", "int", "GIPSYInteger", ValueKind::Integer, Convertibility::Exact},
        {"(-)", "long", "GIPSYInteger", ValueKind::Integer, Convertibility::Error},
        {"float", "float", "GIPSYFloat", ValueKind::Float, Convertibility::Exact},
        {"double", "double", "GIPSYDouble", ValueKind::Double, Convertibility::Exact},
        {"bool", "boolean", "GIPSYBoolean", ValueKind::Boolean, Convertibility::Exact},
        {"[]", "array", "GIPSYArray", ValueKind::Array, Convertibility::Exact},
        {"string", "String", "GIPSYString", ValueKind::String, Convertibility::Exact},
        {"object", "class", "GIPSYObject", ValueKind::Object, Convertibility::Exact},
        {"(-)", "interface", "(-)", ValueKind::Void, Convertibility::Error},
        {"(-)", "enum", "GIPSYObject", ValueKind::Object, Convertibility::Error},
        {"bool:true", "void", "GIPSYVoid", ValueKind::Void, Convertibility::Exact},
    };
    return rows;
}

int type_row(const std::string& type_name, int array_dims, bool is_class)
{
    if (array_dims > 0) {
        return 9;
    }
    if (type_name == "__Context") {
        return 0;
    }
    const auto& rows = type_map();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].host_type == type_name) {
            return static_cast<int>(i);
        }
    }
    if (is_class || (!type_name.empty() && std::isupper(static_cast<unsigned char>(type_name[0])))) {
        return 11;
    }
    return -1;
}

namespace {

[[noreturn]] void type_check_error(const std::string& detail)
{
    throw RuntimeError("run-time type check semantic error: " + detail);
}

}  // namespace

Value to_lucid(const HostValue& h)
{
    switch (h.kind) {
    case HostKind::Byte:
    case HostKind::Short:
    case HostKind::Int: return Value::integer(h.integer);
    case HostKind::Long: type_check_error("host type long has no Lucid type");
    case HostKind::Char: return Value::character(static_cast<char>(h.integer));
    case HostKind::Float: return Value::floating(static_cast<float>(h.real));
    case HostKind::Double: return Value::real(h.real);
    case HostKind::Boolean: return Value::boolean(h.boolean);
    case HostKind::Str: return Value::string(h.text);
    case HostKind::Array: {
        if (!h.array) {
            type_check_error("null array has no Lucid value");
        }
        std::vector<Value> elems;
        for (const auto& e : h.array->elements) {
            elems.push_back(to_lucid(e));
        }
        return Value::array(std::move(elems));
    }
    case HostKind::Object: return Value::object(h.object);
    case HostKind::Void: return Value::void_value();
    case HostKind::Native:
        if (auto c = std::dynamic_pointer_cast<ContextHandle>(h.native)) {
            return Value::context(c->ctx);
        }
        type_check_error(std::string("host value of type ") + (h.native ? h.native->type_name() : "null") +
                         " has no Lucid type");
    }
    type_check_error("unknown host value");
}

HostValue to_host(const Value& v, const std::string& type_name, int array_dims, std::vector<std::string>* warnings)
{
    std::string expected = type_name;
    for (int i = 0; i < array_dims; ++i) {
        expected += "[]";
    }
    auto mismatch = [&]() -> HostValue {
        type_check_error("expected " + expected + ", found Lucid " + to_string(v.kind()) + " " + v.to_string());
    };
    if (array_dims > 0) {
        if (v.is_object() && !v.as_object()) {
            return default_value(type_name, array_dims);
        }
        if (v.kind() != ValueKind::Array) {
            return mismatch();
        }
        auto arr = std::make_shared<HostArray>();
        arr->element_type = type_name;
        if (array_dims > 1) {
            for (int i = 1; i < array_dims; ++i) {
                arr->element_type += "[]";
            }
        }
        for (const auto& e : v.as_array()) {
            arr->elements.push_back(to_host(e, type_name, array_dims - 1, warnings));
        }
        return HostValue::make_array(std::move(arr));
    }
    if (type_name == "int" || type_name == "byte" || type_name == "short") {
        if (!v.is_integer()) {
            return mismatch();
        }
        std::int64_t x = v.as_integer();
        if (type_name == "byte") {
            if (x < std::numeric_limits<std::int8_t>::min() || x > std::numeric_limits<std::int8_t>::max()) {
                type_check_error("value " + std::to_string(x) + " out of range for byte");
            }
            return HostValue::make_byte(x);
        }
        if (type_name == "short") {
            if (x < std::numeric_limits<std::int16_t>::min() || x > std::numeric_limits<std::int16_t>::max()) {
                type_check_error("value " + std::to_string(x) + " out of range for short");
            }
            return HostValue::make_short(x);
        }
        return HostValue::make_int(x);
    }
    if (type_name == "long") {
        type_check_error("host type long has no Lucid type");
    }
    if (type_name == "double") {
        if (v.is_numeric()) {
            return HostValue::make_double(v.to_double());
        }
        return mismatch();
    }
    if (type_name == "float") {
        if (v.is_float() || v.is_integer()) {
            return HostValue::make_float(static_cast<float>(v.to_double()));
        }
        if (v.is_double()) {
            float f = static_cast<float>(v.as_double());
            if (warnings && static_cast<double>(f) != v.as_double()) {
                warnings->push_back("double " + format_double(v.as_double()) + " is not exactly representable as float");
            }
            return HostValue::make_float(f);
        }
        return mismatch();
    }
    if (type_name == "boolean") {
        return v.is_boolean() ? HostValue::make_bool(v.as_boolean()) : mismatch();
    }
    if (type_name == "char") {
        return v.kind() == ValueKind::Character ? HostValue::make_char(v.as_character()) : mismatch();
    }
    if (type_name == "String") {
        if (v.is_string()) {
            return HostValue::make_string(v.as_string());
        }
        return v.is_object() && !v.as_object() ? HostValue::null() : mismatch();
    }
    if (type_name == "void") {
        return v.is_void() ? HostValue::void_value() : mismatch();
    }
    if (type_name == "__Context") {
        if (v.kind() == ValueKind::ContextValue) {
            return HostValue::make_native(std::make_shared<ContextHandle>(v.as_context()));
        }
        return mismatch();
    }
    if (type_name == "Object") {
        return v.is_object() ? HostValue::make_object(v.as_object()) : mismatch();
    }
    if (v.is_object()) {
        const ObjectHandle& obj = v.as_object();
        if (obj && obj->class_name() != type_name) {
            type_check_error("expected " + type_name + ", found object of class " + obj->class_name());
        }
        return HostValue::make_object(obj);
    }
    return mismatch();
}

}  // namespace jooip
