#include "jooip/engine.hpp"

#include "jooip/diagnostics.hpp"

#include <cmath>
#include <ostream>

namespace jooip {

using lucid::BinaryOp;
using lucid::Expr;
using lucid::ExprKind;
using lucid::UnaryOp;

std::string WarehouseStats::to_string() const
{
    return "hits=" + std::to_string(hits) + " misses=" + std::to_string(misses) + " demands=" + std::to_string(demands);
}

std::optional<Value> Warehouse::lookup(const std::string& key)
{
    auto it = store_.find(key);
    if (it == store_.end()) {
        ++stats_.misses;
        return std::nullopt;
    }
    ++stats_.hits;
    return it->second;
}

void Warehouse::store(const std::string& key, const Value& value)
{
    auto [it, inserted] = store_.emplace(key, value);
    if (!inserted && !(it->second == value)) {
        throw InternalError("warehouse: conflicting value for an existing key");
    }
}

Value Warehouse::get_or_compute(const std::string& key, const std::function<Value()>& thunk)
{
    ++stats_.demands;
    if (auto hit = lookup(key)) {
        return *hit;
    }
    if (!in_flight_.insert(key).second) {
        throw RuntimeError("demand cycle on " + key);
    }
    Value v;
    try {
        v = thunk();
    } catch (...) {
        in_flight_.erase(key);
        throw;
    }
    in_flight_.erase(key);
    store(key, v);
    return v;
}

// A dynamic environment instance. Root frames hold the capture snapshot;
// Where frames instantiate one Where node under a parent; Call frames
// instantiate a function body for one call site in one caller frame.
struct Engine::Frame {
    enum class Kind { Root, Where, Call };
    Kind kind = Kind::Root;
    const Geer* geer = nullptr;
    int parent = -1;
    int caller = -1;
    NodeId node = 0;
    NodeId fn_where = 0;
    std::size_t fn_decl = 0;
    std::vector<DimensionName> dim_map;
    Bindings captures;
};

Engine::Engine(EngineOptions options) : options_(options) {}

Engine::~Engine() = default;

std::uint64_t Engine::computations(const Geer& geer, NodeId node) const
{
    auto it = computations_.find({&geer, node});
    return it == computations_.end() ? 0 : it->second;
}

void Engine::reset_counters()
{
    computations_.clear();
    node_evaluations_ = 0;
}

int Engine::root_frame(const Geer& geer, const Bindings& bindings)
{
    if (bindings.size() != geer.captures.size()) {
        std::string missing = geer.captures.size() > bindings.size() ? geer.captures[bindings.size()].name : "?";
        throw RuntimeError("capture " + missing + " missing from bindings (expected " +
                           std::to_string(geer.captures.size()) + ", got " + std::to_string(bindings.size()) + ")");
    }
    std::string key = "r|" + geer.digest + "|" + std::to_string(reinterpret_cast<std::uintptr_t>(&geer));
    for (const auto& v : bindings) {
        key += "|" + v.fingerprint();
    }
    if (auto it = frame_ids_.find(key); it != frame_ids_.end()) {
        return it->second;
    }
    Frame f;
    f.geer = &geer;
    f.captures = bindings;
    frames_.push_back(std::move(f));
    int id = static_cast<int>(frames_.size()) - 1;
    frame_ids_.emplace(std::move(key), id);
    return id;
}

class Engine::Evaluator {
public:
    using Result = Engine::Result;

    Evaluator(Engine& engine, const Geer& geer) : e_(engine), g_(geer) {}

    // Memoized demand for `node` in `frame`. The body is evaluated at the
    // projection of `ctx` onto the node's free dimensions, so the result is
    // a function of the key alone.
    Result demand(const Expr& node, int frame, const Context& ctx, const std::string& label)
    {
        Context pctx = g_.free_dimensions(node.id).project(ctx);
        std::string key = g_.digest + "|" + std::to_string(frame) + "|" + std::to_string(node.id) + "|" +
                          canonical_key(pctx);
        auto& stats = e_.warehouse_.stats();
        ++stats.demands;
        if (e_.options_.warehouse) {
            if (auto hit = e_.warehouse_.lookup(key)) {
                trace(node, pctx, *hit);
                return {*hit, false};
            }
        }
        if (!e_.in_flight_.insert(key).second) {
            std::string chain;
            for (const auto& name : e_.demand_chain_) {
                chain += name + " -> ";
            }
            throw RuntimeError("demand cycle: " + chain + label);
        }
        e_.demand_chain_.push_back(label);
        ++e_.computations_[{&g_, node.id}];
        Result r;
        try {
            r = eval(node, frame, pctx);
        } catch (RuntimeError& err) {
            e_.in_flight_.erase(key);
            e_.demand_chain_.pop_back();
            err.push_frame("n" + std::to_string(node.id) + " " + label + " @ " + pctx.to_string());
            throw;
        } catch (...) {
            e_.in_flight_.erase(key);
            e_.demand_chain_.pop_back();
            throw;
        }
        e_.in_flight_.erase(key);
        e_.demand_chain_.pop_back();
        if (e_.options_.warehouse && !r.is_volatile) {
            e_.warehouse_.store(key, r.value);
        }
        trace(node, pctx, r.value);
        return r;
    }

    Result eval(const Expr& e, int frame, const Context& ctx)
    {
        ++e_.node_evaluations_;
        switch (e.kind) {
        case ExprKind::Literal:
            return {literal(e), false};
        case ExprKind::Identifier:
            return identifier(e, frame, ctx);
        case ExprKind::Call:
            return call(e, frame, ctx);
        case ExprKind::Conditional: {
            Result c = eval(*e.operands[0], frame, ctx);
            if (!c.value.is_boolean()) {
                throw RuntimeError(std::string("type error: condition is ") + to_string(c.value.kind()) +
                                   ", expected boolean");
            }
            Result r = eval(*e.operands[c.value.as_boolean() ? 1 : 2], frame, ctx);
            r.is_volatile = r.is_volatile || c.is_volatile;
            return r;
        }
        case ExprKind::TagQuery: {
            Tag t = query(ctx, dim(g_.dims.at(e.id).front(), frame));
            return {t.is_integer() ? Value::integer(t.as_integer()) : Value::string(t.as_string()), false};
        }
        case ExprKind::At: {
            Context shifted = ctx;
            bool vol = false;
            const auto& refs = g_.dims.at(e.id);
            std::vector<std::pair<DimensionName, Tag>> delta;
            for (std::size_t i = 0; i < e.at.size(); ++i) {
                Result t = eval(*e.at[i].tag, frame, ctx);
                vol = vol || t.is_volatile;
                delta.emplace_back(dim(refs[i], frame), to_tag(t.value));
            }
            for (auto& [d, t] : delta) {
                shifted = shifted.with(d, std::move(t));
            }
            Result r = eval(*e.operands[0], frame, shifted);
            r.is_volatile = r.is_volatile || vol;
            return r;
        }
        case ExprKind::Where:
            return eval(*e.operands[0], where_frame(e.id, frame), ctx);
        case ExprKind::DotMember: {
            Result obj = eval(*e.operands[0], frame, ctx);
            if (!obj.value.is_object() || !obj.value.as_object()) {
                throw RuntimeError("type error: member ." + e.name + " of a non-object " + obj.value.to_string());
            }
            if (!e_.bridge_) {
                throw RuntimeError("no host bridge for member access ." + e.name);
            }
            MemberRead m = e_.bridge_->read_member(obj.value, e.name, ctx, g_.host_class);
            return {m.value, m.is_volatile || obj.is_volatile};
        }
        case ExprKind::DotCall: {
            Result obj = eval(*e.operands[0], frame, ctx);
            std::vector<Value> args;
            for (std::size_t i = 1; i < e.operands.size(); ++i) {
                args.push_back(eval(*e.operands[i], frame, ctx).value);
            }
            return {e_.eval_dot_method(obj.value, e.name, args, g_.host_class), true};
        }
        case ExprKind::Binary:
            return binary(e, frame, ctx);
        case ExprKind::Unary: {
            Result v = eval(*e.operands[0], frame, ctx);
            if (e.unary == UnaryOp::Not) {
                if (!v.value.is_boolean()) {
                    throw RuntimeError(std::string("type error: '!' on ") + to_string(v.value.kind()));
                }
                return {Value::boolean(!v.value.as_boolean()), v.is_volatile};
            }
            if (v.value.is_integer()) {
                return {Value::integer(-v.value.as_integer()), v.is_volatile};
            }
            if (v.value.is_numeric()) {
                return {Value::real(-v.value.to_double()), v.is_volatile};
            }
            throw RuntimeError(std::string("type error: '-' on ") + to_string(v.value.kind()));
        }
        case ExprKind::Indexical:
            throw InternalError("engine: indexical operator survived desugaring");
        }
        throw InternalError("engine: unknown node kind");
    }

private:
    static Value literal(const Expr& e)
    {
        return std::visit(
            [](const auto& v) -> Value {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    return Value::integer(v);
                } else if constexpr (std::is_same_v<T, double>) {
                    return Value::real(v);
                } else if constexpr (std::is_same_v<T, bool>) {
                    return Value::boolean(v);
                } else {
                    return Value::string(v);
                }
            },
            e.literal.value);
    }

    static Tag to_tag(const Value& v)
    {
        if (v.is_integer()) {
            return Tag(v.as_integer());
        }
        if (v.is_string()) {
            return Tag(v.as_string());
        }
        throw RuntimeError(std::string("type error: a tag must be integer or string, found ") + to_string(v.kind()));
    }

    const Frame& frame_at(int id) const { return e_.frames_[static_cast<std::size_t>(id)]; }

    int find_where(int frame, NodeId where) const
    {
        for (int f = frame; f >= 0; f = frame_at(f).parent) {
            const Frame& fr = frame_at(f);
            if (fr.kind == Frame::Kind::Where && fr.node == where) {
                return f;
            }
        }
        throw InternalError("engine: Where frame not on the lexical chain");
    }

    int find_call(int frame, NodeId fn_where, std::size_t fn_decl) const
    {
        for (int f = frame; f >= 0; f = frame_at(f).parent) {
            const Frame& fr = frame_at(f);
            if (fr.kind == Frame::Kind::Call && fr.fn_where == fn_where && fr.fn_decl == fn_decl) {
                return f;
            }
        }
        throw InternalError("engine: call frame not on the lexical chain");
    }

    int root_of(int frame) const
    {
        int f = frame;
        while (frame_at(f).parent >= 0) {
            f = frame_at(f).parent;
        }
        return f;
    }

    DimensionName dim(const DimRef& ref, int frame) const
    {
        if (!ref.is_param) {
            return ref.name;
        }
        return frame_at(find_call(frame, ref.where_node, ref.decl_index)).dim_map.at(ref.param_index);
    }

    int intern(std::string key, Frame proto)
    {
        if (auto it = e_.frame_ids_.find(key); it != e_.frame_ids_.end()) {
            return it->second;
        }
        e_.frames_.push_back(std::move(proto));
        int id = static_cast<int>(e_.frames_.size()) - 1;
        e_.frame_ids_.emplace(std::move(key), id);
        return id;
    }

    int where_frame(NodeId where, int parent)
    {
        Frame f;
        f.kind = Frame::Kind::Where;
        f.geer = &g_;
        f.parent = parent;
        f.node = where;
        return intern("w|" + std::to_string(parent) + "|" + std::to_string(where), std::move(f));
    }

    Result identifier(const Expr& e, int frame, const Context& ctx)
    {
        const Binding& b = g_.bindings.at(e.id);
        switch (b.kind) {
        case Binding::Kind::Variable:
            return demand(*g_.decl(b.where_node, b.decl_index).body, find_where(frame, b.where_node), ctx, b.name);
        case Binding::Kind::Param: {
            const Frame& call = frame_at(find_call(frame, b.where_node, b.decl_index));
            const Expr& site = g_.node(call.node);
            return demand(*site.operands.at(b.index), call.caller, ctx, b.name);
        }
        case Binding::Kind::Capture: {
            const Value& bound = frame_at(root_of(frame)).captures.at(b.index);
            if (g_.captures[b.index].kind != CaptureKind::IntensionalMember) {
                return {bound, false};
            }
            if (!e_.bridge_) {
                throw RuntimeError("no host bridge for intensional member " + b.name);
            }
            MemberRead m = e_.bridge_->read_member(bound, b.name, ctx, g_.host_class);
            return {m.value, m.is_volatile};
        }
        default:
            throw InternalError("engine: bad identifier binding for " + b.name);
        }
    }

    Result call(const Expr& e, int frame, const Context& ctx)
    {
        const Binding& b = g_.bindings.at(e.id);
        if (b.kind == Binding::Kind::FreeFunction) {
            std::vector<Value> args;
            for (const auto& op : e.operands) {
                args.push_back(eval(*op, frame, ctx).value);
            }
            return {e_.eval_free_function(e.name, args), true};
        }
        Frame f;
        f.kind = Frame::Kind::Call;
        f.geer = &g_;
        f.parent = find_where(frame, b.where_node);
        f.caller = frame;
        f.node = e.id;
        f.fn_where = b.where_node;
        f.fn_decl = b.decl_index;
        if (auto refs = g_.dims.find(e.id); refs != g_.dims.end()) {
            for (const auto& ref : refs->second) {
                f.dim_map.push_back(dim(ref, frame));
            }
        }
        int id = intern("c|" + std::to_string(frame) + "|" + std::to_string(e.id), std::move(f));
        return demand(*g_.decl(b.where_node, b.decl_index).body, id, ctx, e.name);
    }

    Result binary(const Expr& e, int frame, const Context& ctx)
    {
        Result l = eval(*e.operands[0], frame, ctx);
        if (e.binary == BinaryOp::And || e.binary == BinaryOp::Or) {
            if (!l.value.is_boolean()) {
                throw RuntimeError(std::string("type error: logical operator on ") + to_string(l.value.kind()));
            }
            bool lv = l.value.as_boolean();
            if (lv == (e.binary == BinaryOp::Or)) {
                return {Value::boolean(lv), l.is_volatile};
            }
            Result r = eval(*e.operands[1], frame, ctx);
            if (!r.value.is_boolean()) {
                throw RuntimeError(std::string("type error: logical operator on ") + to_string(r.value.kind()));
            }
            return {r.value, l.is_volatile || r.is_volatile};
        }
        Result r = eval(*e.operands[1], frame, ctx);
        return {arithmetic(e.binary, l.value, r.value), l.is_volatile || r.is_volatile};
    }

public:
    static Value arithmetic(BinaryOp op, const Value& l, const Value& r)
    {
        auto fail = [&]() -> Value {
            throw RuntimeError(std::string("type error: '") + lucid::to_string(op) + "' on " + to_string(l.kind()) +
                               " and " + to_string(r.kind()));
        };
        bool ints = l.is_integer() && r.is_integer();
        bool nums = l.is_numeric() && r.is_numeric();
        switch (op) {
        case BinaryOp::Add:
            if (l.is_string() && r.is_string()) {
                return Value::string(l.as_string() + r.as_string());
            }
            [[fallthrough]];
        case BinaryOp::Sub:
        case BinaryOp::Mul:
            if (ints) {
                std::int64_t a = l.as_integer();
                std::int64_t b = r.as_integer();
                return Value::integer(op == BinaryOp::Add ? a + b : op == BinaryOp::Sub ? a - b : a * b);
            }
            if (nums) {
                double a = l.to_double();
                double b = r.to_double();
                return Value::real(op == BinaryOp::Add ? a + b : op == BinaryOp::Sub ? a - b : a * b);
            }
            return fail();
        case BinaryOp::Div:
            if (ints) {
                if (r.as_integer() == 0) {
                    throw RuntimeError("division by zero");
                }
                return Value::integer(l.as_integer() / r.as_integer());
            }
            if (nums) {
                return Value::real(l.to_double() / r.to_double());
            }
            return fail();
        case BinaryOp::Mod:
            if (ints) {
                if (r.as_integer() == 0) {
                    throw RuntimeError("division by zero");
                }
                return Value::integer(l.as_integer() % r.as_integer());
            }
            return fail();
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
            bool eq = nums ? (ints ? l.as_integer() == r.as_integer() : l.to_double() == r.to_double())
                           : l == r;
            return Value::boolean(op == BinaryOp::Eq ? eq : !eq);
        }
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: {
            int cmp = 0;
            if (ints) {
                cmp = l.as_integer() < r.as_integer() ? -1 : l.as_integer() > r.as_integer() ? 1 : 0;
            } else if (nums) {
                cmp = l.to_double() < r.to_double() ? -1 : l.to_double() > r.to_double() ? 1 : 0;
            } else if (l.is_string() && r.is_string()) {
                cmp = l.as_string().compare(r.as_string());
                cmp = cmp < 0 ? -1 : cmp > 0 ? 1 : 0;
            } else {
                return fail();
            }
            bool out = op == BinaryOp::Lt ? cmp < 0 : op == BinaryOp::Le ? cmp <= 0 : op == BinaryOp::Gt ? cmp > 0 : cmp >= 0;
            return Value::boolean(out);
        }
        default:
            return fail();
        }
    }

private:
    void trace(const Expr& node, const Context& ctx, const Value& v)
    {
        if (e_.options_.trace) {
            *e_.options_.trace << "DEMAND n" << node.id << " @ " << ctx.to_string() << " -> " << v.to_string() << '\n';
        }
    }

    Engine& e_;
    const Geer& g_;
};

Engine::Result Engine::eval_tracked(const Geer& geer, const Context& ctx, const Bindings& bindings)
{
    int root = root_frame(geer, bindings);
    Evaluator ev(*this, geer);
    return ev.demand(*geer.root, root, ctx, geer.label);
}

Value Engine::eval(const Geer& geer, const Context& ctx, const Bindings& bindings)
{
    return eval_tracked(geer, ctx, bindings).value;
}

Value Engine::eval_dot_member(const Value& obj, const std::string& member, const Context& ctx,
                              const std::string& accessor)
{
    if (!obj.is_object() || !obj.as_object()) {
        throw RuntimeError("type error: member ." + member + " of a non-object " + obj.to_string());
    }
    if (!bridge_) {
        throw RuntimeError("no host bridge for member access ." + member);
    }
    return bridge_->read_member(obj, member, ctx, accessor).value;
}

Value Engine::eval_dot_method(const Value& obj, const std::string& method, const std::vector<Value>& args,
                              const std::string& accessor)
{
    if (!obj.is_object() || !obj.as_object()) {
        throw RuntimeError("type error: method " + method + "() called on a non-object " + obj.to_string());
    }
    if (!bridge_) {
        throw RuntimeError("no host bridge for method call ." + method + "()");
    }
    return bridge_->call_method(obj, method, args, accessor);
}

Value Engine::eval_free_function(const std::string& name, const std::vector<Value>& args)
{
    const FreeFunctionRegistry::Entry* entry = free_functions_ ? free_functions_->find(name) : nullptr;
    if (!entry) {
        throw RuntimeError("undefined free function " + name);
    }
    if (entry->arity != args.size()) {
        throw RuntimeError("free function " + name + " expects " + std::to_string(entry->arity) + " arguments, got " +
                           std::to_string(args.size()));
    }
    return entry->impl(args);
}

}  // namespace jooip
