#pragma once

// Runtime values on the Lucid side. One alternative per GIPSY-type row of
// the type-mapping table.

#include "jooip/context.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace jooip {

class HostObject;
using ObjectHandle = std::shared_ptr<HostObject>;

enum class ValueKind { Integer, Float, Double, Boolean, Character, String, Array, Object, ContextValue, Void };

const char* to_string(ValueKind kind);

class Value {
public:
    struct Void {
        friend bool operator==(const Void&, const Void&) = default;
    };
    struct Float {
        float value;
        friend bool operator==(const Float&, const Float&) = default;
    };
    struct Character {
        char value;
        friend bool operator==(const Character&, const Character&) = default;
    };
    struct Array {
        std::vector<Value> elements;
        friend bool operator==(const Array&, const Array&) = default;
    };
    struct Object {
        ObjectHandle handle;
        friend bool operator==(const Object&, const Object&) = default;
    };

    Value() : data_(Void{}) {}

    static Value integer(std::int64_t v) { return Value(v); }
    static Value floating(float v) { return Value(Float{v}); }
    static Value real(double v) { return Value(v); }
    static Value boolean(bool v) { return Value(v); }
    static Value character(char v) { return Value(Character{v}); }
    static Value string(std::string v) { return Value(std::move(v)); }
    /// Throws RuntimeError if the elements do not share one kind.
    static Value array(std::vector<Value> elements);
    static Value object(ObjectHandle handle) { return Value(Object{std::move(handle)}); }
    static Value context(Context ctx) { return Value(std::move(ctx)); }
    static Value void_value() { return Value(); }

    ValueKind kind() const;

    bool is_integer() const { return kind() == ValueKind::Integer; }
    bool is_double() const { return kind() == ValueKind::Double; }
    bool is_float() const { return kind() == ValueKind::Float; }
    bool is_boolean() const { return kind() == ValueKind::Boolean; }
    bool is_string() const { return kind() == ValueKind::String; }
    bool is_object() const { return kind() == ValueKind::Object; }
    bool is_void() const { return kind() == ValueKind::Void; }
    bool is_numeric() const { return is_integer() || is_double() || is_float(); }

    std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
    double as_double() const { return std::get<double>(data_); }
    float as_float() const { return std::get<Float>(data_).value; }
    bool as_boolean() const { return std::get<bool>(data_); }
    char as_character() const { return std::get<Character>(data_).value; }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    const std::vector<Value>& as_array() const { return std::get<Array>(data_).elements; }
    const ObjectHandle& as_object() const { return std::get<Object>(data_).handle; }
    const Context& as_context() const { return std::get<Context>(data_); }

    /// Numeric value widened to double; throws RuntimeError otherwise.
    double to_double() const;

    /// Printed form used by `print` and the CLI.
    std::string to_string() const;

    /// Stable description used in warehouse frame keys.
    std::string fingerprint() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    using Data =
        std::variant<std::int64_t, Float, double, bool, Character, std::string, Array, Object, Context, Void>;

    template <typename T>
    explicit Value(T v) : data_(std::move(v))
    {
    }

    Data data_;
};

/// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string format_double(double v);

}  // namespace jooip
