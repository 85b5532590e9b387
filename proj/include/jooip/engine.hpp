#pragma once

// Demand-driven evaluation of compiled segments with a value warehouse.

#include "jooip/free_functions.hpp"
#include "jooip/geer.hpp"
#include "jooip/value.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace jooip {

struct WarehouseStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t demands = 0;

    std::string to_string() const;  // hits=<n> misses=<n> demands=<n>
    friend bool operator==(const WarehouseStats&, const WarehouseStats&) = default;
};

/// Write-once memo store.
class Warehouse {
public:
    /// Counts a hit or a miss.
    std::optional<Value> lookup(const std::string& key);
    /// Throws InternalError when `key` already holds a different value.
    void store(const std::string& key, const Value& value);

    /// Cached value on a hit; otherwise runs `thunk` once and stores its
    /// result. A re-entrant request for an in-flight key raises "demand cycle".
    Value get_or_compute(const std::string& key, const std::function<Value()>& thunk);

    std::size_t size() const { return store_.size(); }
    void clear() { store_.clear(); }

    const WarehouseStats& stats() const { return stats_; }
    WarehouseStats& stats() { return stats_; }

private:
    std::unordered_map<std::string, Value> store_;
    std::set<std::string> in_flight_;
    WarehouseStats stats_;
};

struct MemberRead {
    Value value;
    bool is_volatile = true;  // false only for engine-computed intensional members
};

/// Host-side services the engine needs for dot notation and captures.
class HostBridge {
public:
    virtual ~HostBridge() = default;

    /// `obj.member` as seen from Lucid at `ctx`, from a segment of class
    /// `accessor`. Throws RuntimeError for a non-object, a missing member or
    /// a non-public member of another class.
    virtual MemberRead read_member(const Value& obj, const std::string& member, const Context& ctx,
                                   const std::string& accessor) = 0;

    /// Runs a host method; arguments are already evaluated.
    virtual Value call_method(const Value& obj, const std::string& method, const std::vector<Value>& args,
                              const std::string& accessor) = 0;
};

struct EngineOptions {
    bool warehouse = true;
    std::ostream* trace = nullptr;  // one DEMAND line per demand when set
};

/// Capture values indexed like `Geer::captures`. A host field or method
/// local is bound to its snapshot; an intensional member is bound to the
/// object that owns it (Void in a static context).
using Bindings = std::vector<Value>;

class Engine {
public:
    explicit Engine(EngineOptions options = {});
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void set_bridge(HostBridge* bridge) { bridge_ = bridge; }
    void set_free_functions(const FreeFunctionRegistry* registry) { free_functions_ = registry; }
    void set_options(EngineOptions options) { options_ = options; }
    const EngineOptions& options() const { return options_; }

    /// Value of `geer.root` at `ctx`. The geer must outlive the engine.
    Value eval(const Geer& geer, const Context& ctx, const Bindings& bindings = {});

    struct Result {
        Value value;
        bool is_volatile = false;
    };
    /// Like eval, also reporting whether a mutable host object was read.
    Result eval_tracked(const Geer& geer, const Context& ctx, const Bindings& bindings = {});

    Value eval_dot_member(const Value& obj, const std::string& member, const Context& ctx = {},
                          const std::string& accessor = {});
    Value eval_dot_method(const Value& obj, const std::string& method, const std::vector<Value>& args,
                          const std::string& accessor = {});
    Value eval_free_function(const std::string& name, const std::vector<Value>& args);

    WarehouseStats stats() const { return warehouse_.stats(); }
    void reset_stats() { warehouse_.stats() = {}; }
    void clear_warehouse() { warehouse_.clear(); }
    std::size_t warehouse_size() const { return warehouse_.size(); }

    /// How many times the body of `node` was actually computed (not served
    /// from the warehouse).
    std::uint64_t computations(const Geer& geer, NodeId node) const;
    /// Every node visit, memoized or not.
    std::uint64_t node_evaluations() const { return node_evaluations_; }
    void reset_counters();

private:
    struct Frame;
    class Evaluator;

    int root_frame(const Geer& geer, const Bindings& bindings);

    EngineOptions options_;
    HostBridge* bridge_ = nullptr;
    const FreeFunctionRegistry* free_functions_ = nullptr;
    Warehouse warehouse_;
    std::vector<Frame> frames_;
    std::unordered_map<std::string, int> frame_ids_;
    std::set<std::string> in_flight_;
    std::vector<std::string> demand_chain_;
    std::map<std::pair<const Geer*, NodeId>, std::uint64_t> computations_;
    std::uint64_t node_evaluations_ = 0;
};

}  // namespace jooip
