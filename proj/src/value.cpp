#include "jooip/value.hpp"

#include "jooip/diagnostics.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>

namespace jooip {

const char* to_string(ValueKind kind)
{
    switch (kind) {
    case ValueKind::Integer: return "integer";
    case ValueKind::Float: return "float";
    case ValueKind::Double: return "double";
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Character: return "character";
    case ValueKind::String: return "string";
    case ValueKind::Array: return "array";
    case ValueKind::Object: return "object";
    case ValueKind::ContextValue: return "context";
    case ValueKind::Void: return "void";
    }
    return "?";
}

Value Value::array(std::vector<Value> elements)
{
    for (std::size_t i = 1; i < elements.size(); ++i) {
        if (elements[i].kind() != elements[0].kind()) {
            throw RuntimeError(std::string("array elements of mixed kinds: ") + jooip::to_string(elements[0].kind()) +
                               " and " + jooip::to_string(elements[i].kind()));
        }
    }
    return Value(Array{std::move(elements)});
}

ValueKind Value::kind() const
{
    static constexpr ValueKind kinds[] = {ValueKind::Integer,   ValueKind::Float,  ValueKind::Double,
                                          ValueKind::Boolean,   ValueKind::Character, ValueKind::String,
                                          ValueKind::Array,     ValueKind::Object, ValueKind::ContextValue,
                                          ValueKind::Void};
    return kinds[data_.index()];
}

double Value::to_double() const
{
    switch (kind()) {
    case ValueKind::Integer: return static_cast<double>(as_integer());
    case ValueKind::Float: return as_float();
    case ValueKind::Double: return as_double();
    default:
        throw RuntimeError(std::string("expected a number, found ") + jooip::to_string(kind()));
    }
}

std::string Value::to_string() const
{
    switch (kind()) {
    case ValueKind::Integer: return std::to_string(as_integer());
    case ValueKind::Float: {
        char buf[64];
        auto r = std::to_chars(buf, buf + sizeof buf, as_float());
        std::string s(buf, r.ptr);
        if (std::isfinite(as_float()) && s.find_first_of(".e") == std::string::npos) {
            s += ".0";
        }
        return s;
    }
    case ValueKind::Double: return format_double(as_double());
    case ValueKind::Boolean: return as_boolean() ? "true" : "false";
    case ValueKind::Character: return std::string(1, as_character());
    case ValueKind::String: return as_string();
    case ValueKind::Array: {
        std::string out = "[";
        const auto& elems = as_array();
        for (std::size_t i = 0; i < elems.size(); ++i) {
            out += (i ? ", " : "") + elems[i].to_string();
        }
        return out + "]";
    }
    case ValueKind::Object: return as_object() ? "<object>" : "null";
    case ValueKind::ContextValue: return as_context().to_string();
    case ValueKind::Void: return "void";
    }
    return "?";
}

std::string Value::fingerprint() const
{
    switch (kind()) {
    case ValueKind::String: return "s" + std::to_string(as_string().size()) + ":" + as_string();
    case ValueKind::Object: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "o%p", static_cast<const void*>(as_object().get()));
        return buf;
    }
    case ValueKind::Array: {
        std::string out = "a" + std::to_string(as_array().size()) + "[";
        for (const auto& e : as_array()) {
            out += e.fingerprint() + ";";
        }
        return out + "]";
    }
    case ValueKind::ContextValue: return "x" + canonical_key(as_context());
    default: return std::string(1, jooip::to_string(kind())[0]) + to_string();
    }
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "NaN";
    }
    if (std::isinf(v)) {
        return v > 0 ? "Infinity" : "-Infinity";
    }
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, r.ptr);
    if (s.find_first_of(".e") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace jooip
