#include "jooip/desugar.hpp"

#include <set>
#include <string>

namespace jooip::lucid {

namespace {

class Desugarer {
public:
    explicit Desugarer(const ExprPtr& root)
    {
        walk(root, [&](const ExprPtr& e) {
            taken_.insert(e->name);
            for (const auto& d : e->dim_args) {
                taken_.insert(d);
            }
            for (const auto& b : e->at) {
                taken_.insert(b.dimension);
            }
            for (const auto& decl : e->decls) {
                taken_.insert(decl.name);
                taken_.insert(decl.dimensions.begin(), decl.dimensions.end());
                taken_.insert(decl.dim_params.begin(), decl.dim_params.end());
                taken_.insert(decl.params.begin(), decl.params.end());
            }
        });
    }

    ExprPtr rewrite(const ExprPtr& e)
    {
        auto copy = std::make_shared<Expr>(*e);
        for (auto& op : copy->operands) {
            op = rewrite(op);
        }
        for (auto& b : copy->at) {
            b.tag = rewrite(b.tag);
        }
        for (auto& d : copy->decls) {
            if (d.body) {
                d.body = rewrite(d.body);
            }
        }
        if (copy->kind != ExprKind::Indexical) {
            return copy;
        }
        const std::string& d = copy->name;
        SourceLoc loc = copy->loc;
        switch (copy->indexical) {
        case IndexicalOp::First:
            return first(d, copy->operands[0], loc);
        case IndexicalOp::Next:
            return next(d, copy->operands[0], loc);
        case IndexicalOp::Fby:
            return fby(d, copy->operands[0], copy->operands[1], loc);
        case IndexicalOp::Wvr:
            return wvr(d, copy->operands[0], copy->operands[1], loc);
        case IndexicalOp::Upon:
            return upon(d, copy->operands[0], copy->operands[1], loc);
        case IndexicalOp::Asa:
            return first(d, wvr(d, copy->operands[0], copy->operands[1], loc), loc);
        }
        return copy;
    }

private:
    std::string fresh(const std::string& stem)
    {
        for (int i = 1;; ++i) {
            std::string name = stem + std::to_string(i);
            if (taken_.insert(name).second) {
                return name;
            }
        }
    }

    static ExprPtr integer(std::int64_t v, SourceLoc loc) { return make_literal({v}, loc); }

    static ExprPtr tag_plus(const std::string& d, BinaryOp op, std::int64_t k, SourceLoc loc)
    {
        return make_binary(op, make_tag_query(d, loc), integer(k, loc), loc);
    }

    static ExprPtr first(const std::string& d, ExprPtr x, SourceLoc loc)
    {
        return make_at(std::move(x), {{d, integer(0, loc)}}, loc);
    }

    static ExprPtr next(const std::string& d, ExprPtr x, SourceLoc loc)
    {
        return make_at(std::move(x), {{d, tag_plus(d, BinaryOp::Add, 1, loc)}}, loc);
    }

    static ExprPtr fby(const std::string& d, ExprPtr x, ExprPtr y, SourceLoc loc)
    {
        auto cond = make_binary(BinaryOp::Le, make_tag_query(d, loc), integer(0, loc), loc);
        auto prev = make_at(std::move(y), {{d, tag_plus(d, BinaryOp::Sub, 1, loc)}}, loc);
        return make_conditional(cond, std::move(x), prev, loc);
    }

    ExprPtr wvr(const std::string& d, ExprPtr x, ExprPtr y, SourceLoc loc)
    {
        std::string t = fresh("T");
        std::string u = fresh("U");
        // T = U fby.d (U @[d:T + 1])
        auto u_after = make_at(make_identifier(u, loc),
                               {{d, make_binary(BinaryOp::Add, make_identifier(t, loc), integer(1, loc), loc)}}, loc);
        auto t_def = fby(d, make_identifier(u, loc), u_after, loc);
        // U = if Y then #.d else next.d U
        auto u_def = make_conditional(std::move(y), make_tag_query(d, loc), next(d, make_identifier(u, loc), loc), loc);
        auto body = make_at(std::move(x), {{d, make_identifier(t, loc)}}, loc);
        return make_where(body, {make_variable_decl(t, t_def), make_variable_decl(u, u_def)}, loc);
    }

    ExprPtr upon(const std::string& d, ExprPtr x, ExprPtr y, SourceLoc loc)
    {
        std::string w = fresh("W");
        // W = 0 fby.d (if Y then W + 1 else W)
        auto step = make_conditional(std::move(y),
                                     make_binary(BinaryOp::Add, make_identifier(w, loc), integer(1, loc), loc),
                                     make_identifier(w, loc), loc);
        auto w_def = fby(d, integer(0, loc), step, loc);
        auto body = make_at(std::move(x), {{d, make_identifier(w, loc)}}, loc);
        return make_where(body, {make_variable_decl(w, w_def)}, loc);
    }

    std::set<std::string> taken_;
};

}  // namespace

ExprPtr desugar_indexical(const ExprPtr& ast)
{
    Desugarer desugarer(ast);
    ExprPtr out = desugarer.rewrite(ast);
    number_nodes(out);
    return out;
}

bool is_core(const ExprPtr& ast)
{
    bool core = true;
    walk(ast, [&](const ExprPtr& e) {
        if (e->kind == ExprKind::Indexical) {
            core = false;
        }
    });
    return core;
}

}  // namespace jooip::lucid
