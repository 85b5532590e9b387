#pragma once

#include "jooip/context.hpp"

#include <set>
#include <string>

namespace jooip {

/// A set of dimension names that may also be "every dimension except these".
/// The cofinite form is the sound answer for nodes whose context dependence
/// cannot be bounded statically (object member reads, recursive functions).
class DimSet {
public:
    DimSet() = default;
    DimSet(std::initializer_list<DimensionName> names) : names_(names) {}
    explicit DimSet(std::set<DimensionName> names) : names_(std::move(names)) {}

    static DimSet all() { return DimSet(true, {}); }

    bool is_cofinite() const { return cofinite_; }
    bool empty() const { return !cofinite_ && names_.empty(); }
    bool contains(const DimensionName& d) const { return cofinite_ ? !names_.count(d) : names_.count(d) != 0; }

    /// Finite members; meaningless for the cofinite form.
    const std::set<DimensionName>& names() const { return names_; }
    /// Excluded names of the cofinite form.
    const std::set<DimensionName>& excluded() const { return names_; }

    DimSet& unite(const DimSet& other);
    DimSet& remove(const DimensionName& d);

    /// Bindings of `ctx` the set admits; finite members absent from `ctx`
    /// are materialised with the default tag.
    Context project(const Context& ctx) const;

    std::string to_string() const;

    friend bool operator==(const DimSet&, const DimSet&) = default;

private:
    DimSet(bool cofinite, std::set<DimensionName> names) : cofinite_(cofinite), names_(std::move(names)) {}

    bool cofinite_ = false;
    std::set<DimensionName> names_;
};

}  // namespace jooip
