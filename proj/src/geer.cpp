#include "jooip/geer.hpp"

#include "jooip/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

namespace jooip {

using lucid::Decl;
using lucid::Expr;
using lucid::ExprKind;
using lucid::ExprPtr;

const char* to_string(CaptureKind kind)
{
    switch (kind) {
    case CaptureKind::HostField: return "hostField";
    case CaptureKind::IntensionalMember: return "intensionalMember";
    case CaptureKind::MethodLocal: return "methodLocal";
    }
    return "?";
}

const char* to_string(RecordKind kind)
{
    switch (kind) {
    case RecordKind::Dimension: return "dimension";
    case RecordKind::Variable: return "variable";
    case RecordKind::Function: return "function";
    case RecordKind::HostMember: return "hostMember";
    case RecordKind::HostClass: return "hostClass";
    case RecordKind::FreeFunction: return "freeFunction";
    }
    return "?";
}

void Dictionary::add(DictionaryEntry entry, SourceLoc loc)
{
    if (find(entry.scope, entry.id)) {
        throw CompileError("multiply defined identifier " + entry.id, loc);
    }
    entries_.push_back(std::move(entry));
}

const DictionaryEntry* Dictionary::find(const std::string& scope, const std::string& id) const
{
    for (const auto& e : entries_) {
        if (e.scope == scope && e.id == id) {
            return &e;
        }
    }
    return nullptr;
}

std::vector<std::string> Dictionary::dump() const
{
    std::vector<std::string> lines;
    lines.reserve(entries_.size());
    for (const auto& e : entries_) {
        lines.push_back(e.scope + " " + e.id + " " + to_string(e.kind));
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

const DimSet& Geer::free_dimensions(NodeId node) const
{
    auto it = free_dims.find(node);
    if (it == free_dims.end()) {
        throw InternalError("free_dimensions: unknown node id " + std::to_string(node));
    }
    return it->second;
}

const Expr& Geer::node(NodeId id) const
{
    auto it = nodes.find(id);
    if (it == nodes.end()) {
        throw InternalError("unknown node id " + std::to_string(id));
    }
    return *it->second;
}

const Decl& Geer::decl(NodeId where_node, std::size_t index) const
{
    return node(where_node).decls.at(index);
}

std::optional<std::size_t> Geer::capture_index(const std::string& name) const
{
    for (std::size_t i = 0; i < captures.size(); ++i) {
        if (captures[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

const DimSet& free_dimensions(const Geer& geer, NodeId node)
{
    return geer.free_dimensions(node);
}

std::string digest_of(std::string_view text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// ---------------------------------------------------------------------------
// Pass 1: `f.d(args)` is syntactically a member call; when `f` names a Lucid
// function in scope it becomes a Call with dimension arguments.

class CallResolver {
public:
    ExprPtr rewrite(const ExprPtr& e)
    {
        if (e->kind == ExprKind::DotCall) {
            std::vector<std::string> dims;
            const Expr* base = e->operands[0].get();
            dims.push_back(e->name);
            while (base->kind == ExprKind::DotMember) {
                dims.push_back(base->name);
                base = base->operands[0].get();
            }
            if (base->kind == ExprKind::Identifier && is_function(base->name)) {
                std::reverse(dims.begin(), dims.end());
                std::vector<ExprPtr> args;
                for (std::size_t i = 1; i < e->operands.size(); ++i) {
                    args.push_back(rewrite(e->operands[i]));
                }
                return lucid::make_call(base->name, std::move(dims), std::move(args), e->loc);
            }
        }
        auto copy = std::make_shared<Expr>(*e);
        if (copy->kind == ExprKind::Where) {
            std::map<std::string, bool> frame;
            for (const auto& d : copy->decls) {
                if (d.kind != Decl::Kind::Dimension) {
                    frame[d.name] = d.kind == Decl::Kind::Function;
                }
            }
            scopes_.push_back(std::move(frame));
            copy->operands[0] = rewrite(copy->operands[0]);
            for (auto& d : copy->decls) {
                if (!d.body) {
                    continue;
                }
                std::map<std::string, bool> params;
                for (const auto& p : d.params) {
                    params[p] = false;
                }
                scopes_.push_back(std::move(params));
                d.body = rewrite(d.body);
                scopes_.pop_back();
            }
            scopes_.pop_back();
            return copy;
        }
        for (auto& op : copy->operands) {
            op = rewrite(op);
        }
        for (auto& b : copy->at) {
            b.tag = rewrite(b.tag);
        }
        return copy;
    }

private:
    bool is_function(const std::string& name) const
    {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) {
                return found->second;
            }
        }
        return false;
    }

    std::vector<std::map<std::string, bool>> scopes_;
};

// ---------------------------------------------------------------------------
// Pass 2: scopes, dictionary, bindings, captures.

struct Scope {
    enum class Kind { Root, Where, Function };
    Kind kind = Kind::Root;
    const Scope* parent = nullptr;
    std::string path;
    NodeId where_node = 0;
    std::size_t decl_index = 0;
    std::map<std::string, std::size_t> variables;
    std::map<std::string, std::size_t> functions;
    std::set<std::string> dimensions;
    std::map<std::string, std::size_t> params;
    std::map<std::string, std::size_t> dim_params;
};

class Checker {
public:
    Checker(Geer& geer, const HostEnv& env, const CompileOptions& options) : g_(geer), env_(env), opts_(options) {}

    void run()
    {
        if (!env_.class_name.empty()) {
            g_.dictionary.add({"host", env_.class_name, RecordKind::HostClass, 0, {}, {}});
        }
        Scope root;
        root.path = opts_.label;
        root.dimensions.insert(opts_.ambient_dimensions.begin(), opts_.ambient_dimensions.end());
        visit(g_.root, root);
    }

private:
    void visit(const ExprPtr& e, const Scope& scope)
    {
        g_.nodes[e->id] = e.get();
        switch (e->kind) {
        case ExprKind::Identifier:
            g_.bindings[e->id] = resolve_identifier(*e, scope);
            break;
        case ExprKind::Call:
            g_.bindings[e->id] = resolve_call(*e, scope);
            for (const auto& d : e->dim_args) {
                g_.dims[e->id].push_back(resolve_dim(d, scope, e->loc));
            }
            break;
        case ExprKind::TagQuery:
            g_.dims[e->id] = {resolve_dim(e->name, scope, e->loc)};
            break;
        case ExprKind::At:
            for (const auto& b : e->at) {
                g_.dims[e->id].push_back(resolve_dim(b.dimension, scope, e->loc));
            }
            break;
        case ExprKind::DotMember:
        case ExprKind::DotCall:
            if (!opts_.dot_notation) {
                throw CompileError("dot notation ('." + e->name + "') requires OBJECTIVELUCID", e->loc);
            }
            break;
        case ExprKind::Indexical:
            throw CompileError(std::string("operator '") + lucid::to_string(e->indexical) +
                                   "' must be desugared before compilation",
                               e->loc);
        case ExprKind::Where:
            visit_where(e, scope);
            return;
        default:
            break;
        }
        for (const auto& op : e->operands) {
            visit(op, scope);
        }
        for (const auto& b : e->at) {
            visit(b.tag, scope);
        }
    }

    void visit_where(const ExprPtr& e, const Scope& parent)
    {
        Scope scope;
        scope.kind = Scope::Kind::Where;
        scope.parent = &parent;
        scope.where_node = e->id;
        scope.path = parent.path + "/w" + std::to_string(e->id);
        for (std::size_t i = 0; i < e->decls.size(); ++i) {
            const Decl& d = e->decls[i];
            switch (d.kind) {
            case Decl::Kind::Dimension:
                for (const auto& name : d.dimensions) {
                    g_.dictionary.add({scope.path, name, RecordKind::Dimension, 0, {}, {}}, d.loc);
                    scope.dimensions.insert(name);
                }
                break;
            case Decl::Kind::Variable:
                g_.dictionary.add({scope.path, d.name, RecordKind::Variable, d.body->id, {}, {}}, d.loc);
                scope.variables[d.name] = i;
                break;
            case Decl::Kind::Function:
                g_.dictionary.add({scope.path, d.name, RecordKind::Function, d.body->id, d.dim_params, d.params},
                                  d.loc);
                scope.functions[d.name] = i;
                break;
            }
        }
        g_.nodes[e->id] = e.get();
        visit(e->operands[0], scope);
        for (std::size_t i = 0; i < e->decls.size(); ++i) {
            const Decl& d = e->decls[i];
            if (d.kind == Decl::Kind::Variable) {
                visit(d.body, scope);
            } else if (d.kind == Decl::Kind::Function) {
                Scope fn;
                fn.kind = Scope::Kind::Function;
                fn.parent = &scope;
                fn.where_node = e->id;
                fn.decl_index = i;
                fn.path = scope.path + "/" + d.name;
                for (std::size_t k = 0; k < d.dim_params.size(); ++k) {
                    g_.dictionary.add({fn.path, d.dim_params[k], RecordKind::Dimension, 0, {}, {}}, d.loc);
                    fn.dim_params[d.dim_params[k]] = k;
                }
                for (std::size_t k = 0; k < d.params.size(); ++k) {
                    g_.dictionary.add({fn.path, d.params[k], RecordKind::Variable, 0, {}, {}}, d.loc);
                    fn.params[d.params[k]] = k;
                }
                visit(d.body, fn);
            }
        }
    }

    Binding resolve_identifier(const Expr& e, const Scope& scope)
    {
        for (const Scope* s = &scope; s; s = s->parent) {
            if (auto it = s->variables.find(e.name); it != s->variables.end()) {
                return {Binding::Kind::Variable, s->where_node, it->second, 0, e.name};
            }
            if (auto it = s->params.find(e.name); it != s->params.end()) {
                return {Binding::Kind::Param, s->where_node, s->decl_index, it->second, e.name};
            }
            if (s->functions.count(e.name)) {
                throw CompileError("function " + e.name + " used without arguments", e.loc);
            }
            if (s->dimensions.count(e.name) || s->dim_params.count(e.name)) {
                throw CompileError("dimension " + e.name + " used as a value (use #." + e.name + ")", e.loc);
            }
        }
        auto capture = host_capture(e.name);
        if (!capture) {
            for (const auto& f : env_.free_functions) {
                if (f.name == e.name) {
                    throw CompileError("free function " + e.name + " used without arguments", e.loc);
                }
            }
            throw CompileError("undefined identifier " + e.name, e.loc);
        }
        return {Binding::Kind::Capture, 0, 0, add_capture(*capture), e.name};
    }

    std::optional<Capture> host_capture(const std::string& name) const
    {
        for (const auto& local : env_.locals) {
            if (local == name) {
                return Capture{name, CaptureKind::MethodLocal};
            }
        }
        for (const auto& f : env_.fields) {
            if (f.name == name && (f.is_static || !env_.static_context)) {
                return Capture{name, f.intensional ? CaptureKind::IntensionalMember : CaptureKind::HostField};
            }
        }
        return std::nullopt;
    }

    std::size_t add_capture(const Capture& c)
    {
        if (auto idx = g_.capture_index(c.name)) {
            return *idx;
        }
        g_.captures.push_back(c);
        if (c.kind == CaptureKind::MethodLocal) {
            g_.dictionary.add({"method", c.name, RecordKind::HostMember, 0, {}, {}});
        } else {
            g_.dictionary.add({"host", env_.class_name + "." + c.name, RecordKind::HostMember, 0, {}, {}});
        }
        return g_.captures.size() - 1;
    }

    Binding resolve_call(const Expr& e, const Scope& scope)
    {
        for (const Scope* s = &scope; s; s = s->parent) {
            if (auto it = s->functions.find(e.name); it != s->functions.end()) {
                const Decl& d = g_.node(s->where_node).decls[it->second];
                if (d.params.size() != e.operands.size() || d.dim_params.size() != e.dim_args.size()) {
                    throw CompileError("function " + e.name + " expects " + std::to_string(d.dim_params.size()) +
                                           " dimension and " + std::to_string(d.params.size()) +
                                           " value arguments",
                                       e.loc);
                }
                return {Binding::Kind::Function, s->where_node, it->second, 0, e.name};
            }
            if (s->variables.count(e.name) || s->params.count(e.name)) {
                throw CompileError(e.name + " is not a function", e.loc);
            }
        }
        for (const auto& f : env_.free_functions) {
            if (f.name == e.name) {
                if (!e.dim_args.empty()) {
                    throw CompileError("free function " + e.name + " takes no dimension arguments", e.loc);
                }
                if (f.arity != e.operands.size()) {
                    throw CompileError("free function " + e.name + " expects " + std::to_string(f.arity) +
                                           " arguments",
                                       e.loc);
                }
                if (!g_.dictionary.find("ffw", e.name)) {
                    g_.dictionary.add({"ffw", e.name, RecordKind::FreeFunction, 0, {}, {}});
                }
                return {Binding::Kind::FreeFunction, 0, 0, 0, e.name};
            }
        }
        throw CompileError("undefined identifier " + e.name, e.loc);
    }

    DimRef resolve_dim(const std::string& name, const Scope& scope, SourceLoc loc) const
    {
        // A dimension parameter wins over a same-named declaration: bodies
        // commonly redeclare their dimension parameter to satisfy the check.
        for (const Scope* s = &scope; s; s = s->parent) {
            if (auto it = s->dim_params.find(name); it != s->dim_params.end()) {
                return {name, true, s->where_node, s->decl_index, it->second};
            }
        }
        for (const Scope* s = &scope; s; s = s->parent) {
            if (s->dimensions.count(name)) {
                return {name, false, 0, 0, 0};
            }
        }
        throw CompileError("undefined dimension " + name, loc);
    }

    Geer& g_;
    const HostEnv& env_;
    const CompileOptions& opts_;
};

// ---------------------------------------------------------------------------
// Free-dimension analysis: abstract evaluation over static environments that
// mirror the runtime frames, iterated to a fixpoint for recursive streams.

class FreeDims {
public:
    FreeDims(const Geer& geer, const MemberDims& member_dims) : g_(geer), members_(member_dims) {}

    std::map<NodeId, DimSet> run()
    {
        envs_.push_back(Env{});
        do {
            changed_ = false;
            done_.clear();
            eval(*g_.root, 0);
        } while (changed_);
        for (const auto& [id, node] : g_.nodes) {
            (void)node;
            if (!result_.count(id)) {
                result_[id] = DimSet::all();
            }
        }
        walk(g_.root, [&](const ExprPtr& e) {
            if (!result_.count(e->id)) {
                result_[e->id] = DimSet::all();
            }
        });
        return result_;
    }

private:
    // A Where instance is keyed by its lexical parent; a function instance by
    // its defining Where instance and its concrete dimension arguments, and
    // collects every call site that reaches it.
    struct Env {
        bool is_call = false;
        NodeId node = 0;
        int parent = -1;
        NodeId fn_where = 0;
        std::size_t fn_decl = 0;
        std::vector<std::string> dim_map;
        std::set<std::pair<NodeId, int>> sites;
    };

    int intern(const std::string& key, Env proto)
    {
        if (auto it = interned_.find(key); it != interned_.end()) {
            return it->second;
        }
        envs_.push_back(std::move(proto));
        int id = static_cast<int>(envs_.size()) - 1;
        interned_[key] = id;
        return id;
    }

    int find_where(int env, NodeId where) const
    {
        for (int e = env; e >= 0; e = envs_[e].parent) {
            if (!envs_[e].is_call && envs_[e].node == where && e != 0) {
                return e;
            }
        }
        throw InternalError("free-dims: Where scope not on lexical chain");
    }

    int find_call(int env, NodeId fn_where, std::size_t fn_decl) const
    {
        for (int e = env; e >= 0; e = envs_[e].parent) {
            if (envs_[e].is_call && envs_[e].fn_where == fn_where && envs_[e].fn_decl == fn_decl) {
                return e;
            }
        }
        throw InternalError("free-dims: call frame not on lexical chain");
    }

    std::string dim(const DimRef& ref, int env) const
    {
        if (!ref.is_param) {
            return ref.name;
        }
        return envs_[find_call(env, ref.where_node, ref.decl_index)].dim_map.at(ref.param_index);
    }

    DimSet memo(NodeId node, int env)
    {
        auto key = std::make_pair(node, env);
        if (active_.count(key) || done_.count(key)) {
            return approx_[key];
        }
        active_.insert(key);
        DimSet r = eval(g_.node(node), env);
        active_.erase(key);
        done_.insert(key);
        DimSet& slot = approx_[key];
        DimSet merged = slot;
        merged.unite(r);
        if (!(merged == slot)) {
            slot = merged;
            changed_ = true;
        }
        return slot;
    }

    DimSet eval(const Expr& e, int env)
    {
        DimSet r = compute(e, env);
        result_[e.id].unite(r);
        return r;
    }

    DimSet compute(const Expr& e, int env)
    {
        DimSet r;
        switch (e.kind) {
        case ExprKind::Literal:
            return r;
        case ExprKind::Identifier: {
            const Binding& b = g_.bindings.at(e.id);
            switch (b.kind) {
            case Binding::Kind::Variable:
                return memo(g_.decl(b.where_node, b.decl_index).body->id, find_where(env, b.where_node));
            case Binding::Kind::Param: {
                int call = find_call(env, b.where_node, b.decl_index);
                auto sites = envs_[call].sites;
                for (const auto& [site, caller] : sites) {
                    r.unite(memo(g_.node(site).operands.at(b.index)->id, caller));
                }
                return r;
            }
            case Binding::Kind::Capture:
                if (g_.captures[b.index].kind == CaptureKind::IntensionalMember) {
                    return members_ ? members_(b.name) : DimSet::all();
                }
                return r;
            default:
                throw InternalError("free-dims: bad identifier binding");
            }
        }
        case ExprKind::Call: {
            const Binding& b = g_.bindings.at(e.id);
            if (b.kind == Binding::Kind::FreeFunction) {
                for (const auto& op : e.operands) {
                    r.unite(eval(*op, env));
                }
                return r;
            }
            Env proto;
            proto.is_call = true;
            proto.parent = find_where(env, b.where_node);
            proto.fn_where = b.where_node;
            proto.fn_decl = b.decl_index;
            std::string key = "c" + std::to_string(b.where_node) + ":" + std::to_string(b.decl_index) + ":" +
                              std::to_string(proto.parent);
            auto refs = g_.dims.find(e.id);
            if (refs != g_.dims.end()) {
                for (const auto& ref : refs->second) {
                    proto.dim_map.push_back(dim(ref, env));
                    key += ":" + proto.dim_map.back();
                }
            }
            int call = intern(key, std::move(proto));
            if (envs_[call].sites.insert({e.id, env}).second) {
                changed_ = true;
            }
            for (const auto& op : e.operands) {
                eval(*op, env);
            }
            return memo(g_.decl(b.where_node, b.decl_index).body->id, call);
        }
        case ExprKind::TagQuery:
            return DimSet{dim(g_.dims.at(e.id).front(), env)};
        case ExprKind::At: {
            r = eval(*e.operands[0], env);
            const auto& refs = g_.dims.at(e.id);
            for (const auto& ref : refs) {
                r.remove(dim(ref, env));
            }
            for (const auto& b : e.at) {
                r.unite(eval(*b.tag, env));
            }
            return r;
        }
        case ExprKind::Where: {
            Env proto;
            proto.node = e.id;
            proto.parent = env;
            int where = intern("w" + std::to_string(e.id) + ":" + std::to_string(env), std::move(proto));
            return eval(*e.operands[0], where);
        }
        case ExprKind::DotMember:
            eval(*e.operands[0], env);
            return DimSet::all();
        default:
            for (const auto& op : e.operands) {
                r.unite(eval(*op, env));
            }
            return r;
        }
    }

    const Geer& g_;
    const MemberDims& members_;
    std::vector<Env> envs_;
    std::map<std::string, int> interned_;
    std::map<std::pair<NodeId, int>, DimSet> approx_;
    std::set<std::pair<NodeId, int>> active_;
    std::set<std::pair<NodeId, int>> done_;
    std::map<NodeId, DimSet> result_;
    bool changed_ = false;
};

}  // namespace

void analyze_free_dims(Geer& geer, const MemberDims& member_dims)
{
    geer.free_dims = FreeDims(geer, member_dims).run();
}

Geer compile(const ExprPtr& ast, const HostEnv& env, const CompileOptions& options, const MemberDims& member_dims)
{
    Geer g;
    g.label = options.label;
    g.host_class = env.class_name;
    g.root = CallResolver().rewrite(ast);
    lucid::number_nodes(g.root);
    Checker(g, env, options).run();
    g.digest = digest_of(options.label + "\n" + (options.source.empty() ? lucid::print(g.root) : options.source));
    analyze_free_dims(g, member_dims);
    return g;
}

}  // namespace jooip
