#include "jooip/context.hpp"
#include "jooip/diagnostics.hpp"
#include "jooip/dimset.hpp"

#include <doctest.h>

#include <random>

using namespace jooip;

namespace {

Context random_context(std::mt19937& rng)
{
    static const char* dims[] = {"d", "e", "t", "x", "y"};
    std::uniform_int_distribution<int> count(0, 4), pick(0, 4), value(-3, 3), kind(0, 3);
    Context ctx;
    for (int i = count(rng); i > 0; --i) {
        int v = value(rng);
        ctx = kind(rng) == 0 ? ctx.with(dims[pick(rng)], std::to_string(v)) : ctx.with(dims[pick(rng)], v);
    }
    return ctx;
}

}  // namespace

TEST_SUITE("context")
{
    TEST_CASE("override rebinds only the delta's dimensions")
    {
        Context base{{"d", 1}, {"e", 2}};
        Context r = override(base, Context{{"d", 5}});
        CHECK(query(r, "d") == Tag(5));
        CHECK(query(r, "e") == Tag(2));
        CHECK(override(base, {}) == base);
        CHECK(override({}, base) == base);
    }

    TEST_CASE("query of an unbound dimension is integer zero")
    {
        CHECK(query({}, "time") == Tag(0));
        CHECK(query(Context{{"s", "north"}}, "s") == Tag("north"));
        CHECK(query(Context{{"s", "north"}}, "s") != Tag(0));
    }

    TEST_CASE("project materialises missing dimensions and drops the rest")
    {
        Context ctx{{"d", 3}, {"e", 4}};
        Context p = project(ctx, {"d", "t"});
        CHECK(p.size() == 2);
        CHECK(query(p, "d") == Tag(3));
        CHECK(p.binds("t"));
        CHECK(!p.binds("e"));
    }

    TEST_CASE("canonical keys are order independent and separate tag kinds")
    {
        Context a = Context{}.with("d", 1).with("e", 2);
        Context b = Context{}.with("e", 2).with("d", 1);
        CHECK(canonical_key(a) == canonical_key(b));
        CHECK(canonical_key(Context{{"d", 1}}) != canonical_key(Context{{"d", "1"}}));
        CHECK(canonical_key(Context{{"d", "1,e:2"}}) != canonical_key(Context{{"d", "1"}, {"e", 2}}));
    }

    TEST_CASE("context literals")
    {
        Context c = parse_context_literal("d:3, e:hello,t:-2");
        CHECK(query(c, "d") == Tag(3));
        CHECK(query(c, "e") == Tag("hello"));
        CHECK(query(c, "t") == Tag(-2));
        CHECK(parse_context_literal("").empty());
        CHECK_THROWS_AS(parse_context_literal("d:"), CompileError);
        CHECK_THROWS_AS(parse_context_literal("d:1,d:2"), CompileError);
        CHECK(c.to_string() == "{d:3, e:hello, t:-2}");
    }

    TEST_CASE("property: override, query and canonical_key laws on random contexts")
    {
        std::mt19937 rng(20261015);
        for (int i = 0; i < 500; ++i) {
            Context a = random_context(rng), b = random_context(rng), c = random_context(rng);
            Context ab = override(a, b);
            for (const char* d : {"d", "e", "t", "x", "y"}) {
                Tag expected = b.binds(d) ? b.bindings().at(d) : a.binds(d) ? a.bindings().at(d) : Tag(0);
                CHECK(query(ab, d) == expected);
            }
            CHECK(override(override(a, b), c) == override(a, override(b, c)));
            CHECK((canonical_key(a) == canonical_key(b)) == (a == b));
            std::set<DimensionName> dims{"d", "x"};
            Context p = project(a, dims);
            CHECK(project(p, dims) == p);
            for (const auto& d : dims) {
                CHECK(query(p, d) == query(a, d));
            }
        }
    }

    TEST_CASE("dimension sets")
    {
        DimSet s{"d"};
        s.unite(DimSet{"e"});
        CHECK(s == DimSet{"d", "e"});
        DimSet all = DimSet::all();
        all.remove("d");
        CHECK(!all.contains("d"));
        CHECK(all.contains("zeta"));
        DimSet u = all;
        u.unite(DimSet{"d"});
        CHECK(u == DimSet::all());
        Context ctx{{"d", 1}, {"e", 2}};
        CHECK(all.project(ctx) == Context{{"e", 2}});
        CHECK(DimSet{"t"}.project(ctx) == Context{{"t", 0}});
        CHECK(all.to_string() == "all - {d}");
    }
}
