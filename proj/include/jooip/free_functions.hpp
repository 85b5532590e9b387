#pragma once

// The `ffw` wrapper: host free functions callable from Lucid segments.

#include "jooip/value.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jooip {

using FreeFunctionImpl = std::function<Value(const std::vector<Value>&)>;

class FreeFunctionRegistry {
public:
    struct Entry {
        std::string name;
        std::size_t arity = 0;
        FreeFunctionImpl impl;
    };

    /// Throws RuntimeError on a second registration of `name`.
    void add(std::string name, std::size_t arity, FreeFunctionImpl impl);

    /// nullptr when absent.
    const Entry* find(const std::string& name) const;

    std::vector<std::string> names() const;

private:
    std::map<std::string, Entry> entries_;
};

}  // namespace jooip
