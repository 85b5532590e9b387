#pragma once

// Tree-walking interpreter for the host language. Runs a hybrid unit
// directly (segments evaluated in place) or a translated unit (segments
// replaced by runtime intrinsics).

#include "jooip/engine.hpp"
#include "jooip/host_value.hpp"
#include "jooip/program.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace jooip {

struct RunOptions {
    EngineOptions engine;
    std::ostream* out = nullptr;    // program output; std::cout when null
    std::ostream* err = nullptr;    // warnings; std::cerr when null
};

class Interpreter {
public:
    /// Direct mode: `program` already holds compiled segments.
    Interpreter(const Program& program, RunOptions options = {});
    /// Translated mode: a segment-free unit whose static blocks register
    /// segments through `__compile`.
    Interpreter(const host::Unit& unit, RunOptions options = {});
    ~Interpreter();

    /// Static initialization, then `main` of the first class declaring it.
    void run();

    /// Static initialization only; idempotent.
    void initialize();

    Engine& engine();
    const std::vector<SegmentInfo>& segments() const;

    ObjectHandle construct(const std::string& class_name, const std::vector<HostValue>& args);
    HostValue call(const HostValue& target, const std::string& method, const std::vector<HostValue>& args);
    HostValue call_static(const std::string& class_name, const std::string& method,
                          const std::vector<HostValue>& args);
    /// Host read of a field, honouring written flags and lazy initializers.
    HostValue read_field(const ObjectHandle& obj, const std::string& field);
    void write_field(const ObjectHandle& obj, const std::string& field, const HostValue& value);

private:
    class Impl;
    std::unique_ptr<Impl> impl_;
};

/// Lucid value to the host value of the same kind (Integer -> int, ...).
HostValue natural_host_value(const Value& v);

}  // namespace jooip
