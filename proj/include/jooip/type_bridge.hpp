#pragma once

// Conversions between host values and Lucid values, one row per entry of
// the Java/Lucid type-mapping table.

#include "jooip/host_value.hpp"
#include "jooip/value.hpp"

#include <string>
#include <vector>

namespace jooip {

enum class Convertibility { Exact, Widening, Error };

struct TypeMapRow {
    std::string lucid_type;    // "(-)" when the host type has no Lucid counterpart
    std::string host_type;
    std::string gipsy_type;
    ValueKind kind;            // runtime Lucid value kind
    Convertibility convertibility;
};

/// The fifteen rows, in table order.
const std::vector<TypeMapRow>& type_map();

/// Row index for a declared host type (`int`, `String`, a class name,
/// arrays...), or -1.
int type_row(const std::string& type_name, int array_dims, bool is_class = false);

/// Host -> Lucid. `long` and interface values have no Lucid type.
Value to_lucid(const HostValue& h);

/// Lucid -> host, checked against the declared type. Failures raise
/// "run-time type check semantic error". Narrowing a Double into `float`
/// appends a representability note to `warnings` when given.
HostValue to_host(const Value& v, const std::string& type_name, int array_dims = 0,
                  std::vector<std::string>* warnings = nullptr);

}  // namespace jooip
