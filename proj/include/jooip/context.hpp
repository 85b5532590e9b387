#pragma once

// Dimensions, tags and contexts: the point in the context space at which an
// intensional expression is evaluated.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace jooip {

/// A coordinate along one dimension. Integer and string tags never compare
/// equal to each other.
class Tag {
public:
    Tag() = default;
    Tag(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
    Tag(int value) : value_(std::int64_t{value}) {}  // NOLINT(implicit)
    Tag(std::string value) : value_(std::move(value)) {}  // NOLINT(implicit)
    Tag(const char* value) : value_(std::string(value)) {}  // NOLINT(implicit)

    bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
    bool is_string() const { return std::holds_alternative<std::string>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    const std::string& as_string() const { return std::get<std::string>(value_); }

    std::string to_string() const;

    friend bool operator==(const Tag&, const Tag&) = default;
    friend auto operator<=>(const Tag&, const Tag&) = default;

private:
    std::variant<std::int64_t, std::string> value_{std::int64_t{0}};
};

using DimensionName = std::string;

/// Immutable finite map from dimension names to tags.
class Context {
public:
    using Map = std::map<DimensionName, Tag>;

    Context() = default;
    explicit Context(Map bindings) : bindings_(std::move(bindings)) {}
    Context(std::initializer_list<Map::value_type> init) : bindings_(init) {}

    const Map& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    bool binds(const DimensionName& dim) const { return bindings_.count(dim) != 0; }

    /// Copy of this context with `dim` bound to `tag`.
    Context with(const DimensionName& dim, Tag tag) const;

    /// `{d:3, e:hello}`; the empty context prints as `{}`.
    std::string to_string() const;

    friend bool operator==(const Context&, const Context&) = default;
    friend auto operator<=>(const Context&, const Context&) = default;

private:
    Map bindings_;
};

/// Rebinds every dimension of `delta` on top of `base`.
Context override(const Context& base, const Context& delta);

/// Current tag of `dim`; an unbound dimension reads as integer 0.
Tag query(const Context& ctx, const DimensionName& dim);

/// Restricts `ctx` to `dims`, materialising the default tag for dims it does
/// not bind.
Context project(const Context& ctx, const std::set<DimensionName>& dims);

/// Injective byte encoding, independent of insertion order.
std::string canonical_key(const Context& ctx);

/// Parses the CLI literal `d:3,e:hello`. Throws CompileError on malformed
/// input or repeated dimensions.
Context parse_context_literal(std::string_view text);

}  // namespace jooip
