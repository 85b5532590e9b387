#include "jooip/dimset.hpp"

#include <algorithm>
#include <iterator>

namespace jooip {

DimSet& DimSet::unite(const DimSet& other)
{
    std::set<DimensionName> out;
    if (!cofinite_ && !other.cofinite_) {
        names_.insert(other.names_.begin(), other.names_.end());
        return *this;
    }
    if (cofinite_ && other.cofinite_) {
        std::set_intersection(names_.begin(), names_.end(), other.names_.begin(), other.names_.end(),
                              std::inserter(out, out.end()));
    } else {
        const auto& excluded = cofinite_ ? names_ : other.names_;
        const auto& finite = cofinite_ ? other.names_ : names_;
        std::set_difference(excluded.begin(), excluded.end(), finite.begin(), finite.end(),
                            std::inserter(out, out.end()));
    }
    cofinite_ = true;
    names_ = std::move(out);
    return *this;
}

DimSet& DimSet::remove(const DimensionName& d)
{
    if (cofinite_) {
        names_.insert(d);
    } else {
        names_.erase(d);
    }
    return *this;
}

Context DimSet::project(const Context& ctx) const
{
    if (!cofinite_) {
        return jooip::project(ctx, names_);
    }
    Context::Map kept;
    for (const auto& [dim, tag] : ctx.bindings()) {
        if (!names_.count(dim)) {
            kept.emplace(dim, tag);
        }
    }
    return Context(std::move(kept));
}

std::string DimSet::to_string() const
{
    std::string out = cofinite_ ? "all" : "";
    if (cofinite_ && names_.empty()) {
        return out;
    }
    out += cofinite_ ? " - {" : "{";
    bool first = true;
    for (const auto& n : names_) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += n;
    }
    return out + "}";
}

}  // namespace jooip
