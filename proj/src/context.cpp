#include "jooip/context.hpp"

#include "jooip/diagnostics.hpp"

#include <cctype>
#include <charconv>

namespace jooip {

std::string Tag::to_string() const
{
    if (is_integer()) {
        return std::to_string(as_integer());
    }
    return as_string();
}

Context Context::with(const DimensionName& dim, Tag tag) const
{
    Map copy = bindings_;
    copy[dim] = std::move(tag);
    return Context(std::move(copy));
}

std::string Context::to_string() const
{
    std::string out = "{";
    bool first = true;
    for (const auto& [dim, tag] : bindings_) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += dim + ":" + tag.to_string();
    }
    return out + "}";
}

Context override(const Context& base, const Context& delta)
{
    Context::Map merged = base.bindings();
    for (const auto& [dim, tag] : delta.bindings()) {
        merged[dim] = tag;
    }
    return Context(std::move(merged));
}

Tag query(const Context& ctx, const DimensionName& dim)
{
    auto it = ctx.bindings().find(dim);
    if (it == ctx.bindings().end()) {
        return Tag(std::int64_t{0});
    }
    return it->second;
}

Context project(const Context& ctx, const std::set<DimensionName>& dims)
{
    Context::Map out;
    for (const auto& dim : dims) {
        out.emplace(dim, query(ctx, dim));
    }
    return Context(std::move(out));
}

std::string canonical_key(const Context& ctx)
{
    // <len>:<name>=i<digits>; or <len>:<name>=s<len>:<bytes>;
    std::string key;
    for (const auto& [dim, tag] : ctx.bindings()) {
        key += std::to_string(dim.size());
        key += ':';
        key += dim;
        key += '=';
        if (tag.is_integer()) {
            key += 'i';
            key += std::to_string(tag.as_integer());
        } else {
            key += 's';
            key += std::to_string(tag.as_string().size());
            key += ':';
            key += tag.as_string();
        }
        key += ';';
    }
    return key;
}

namespace {

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Context parse_context_literal(std::string_view text)
{
    Context::Map out;
    text = trim(text);
    if (text.empty()) {
        return Context();
    }
    std::size_t column = 1;
    while (true) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw CompileError("malformed context binding '" + std::string(trim(item)) + "' (expected name:tag)",
                               {1, column});
        }
        auto name = trim(item.substr(0, colon));
        auto value = trim(item.substr(colon + 1));
        if (!is_identifier(name)) {
            throw CompileError("invalid dimension name '" + std::string(name) + "'", {1, column});
        }
        if (value.empty()) {
            throw CompileError("missing tag for dimension '" + std::string(name) + "'", {1, column});
        }
        std::int64_t number = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
        Tag tag = (ec == std::errc() && ptr == value.data() + value.size()) ? Tag(number) : Tag(std::string(value));
        if (!out.emplace(std::string(name), std::move(tag)).second) {
            throw CompileError("dimension '" + std::string(name) + "' bound twice", {1, column});
        }
        if (comma == std::string_view::npos) {
            break;
        }
        column += comma + 1;
        text = text.substr(comma + 1);
    }
    return Context(std::move(out));
}

}  // namespace jooip
