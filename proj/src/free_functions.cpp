#include "jooip/free_functions.hpp"

#include "jooip/diagnostics.hpp"

namespace jooip {

void FreeFunctionRegistry::add(std::string name, std::size_t arity, FreeFunctionImpl impl)
{
    if (entries_.count(name)) {
        throw RuntimeError("free function " + name + " is already registered");
    }
    Entry entry{name, arity, std::move(impl)};
    entries_.emplace(std::move(name), std::move(entry));
}

const FreeFunctionRegistry::Entry* FreeFunctionRegistry::find(const std::string& name) const
{
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> FreeFunctionRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_) {
        (void)entry;
        out.push_back(name);
    }
    return out;
}

}  // namespace jooip
