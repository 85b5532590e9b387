#include "jooip/geer.hpp"
#include "jooip/lucid_parser.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace jooip;

namespace {

Geer build(const std::string& text, const HostEnv& env = {}, const std::string& tag = "OBJECTIVELUCID")
{
    auto parsed = lucid::parse_segment(tag, text);
    CompileOptions opts;
    opts.source = text;
    opts.dot_notation = parsed.dot_notation;
    return compile(parsed.ast, env, opts);
}

std::string compile_error(const std::string& text, const HostEnv& env = {}, const std::string& tag = "OBJECTIVELUCID")
{
    try {
        build(text, env, tag);
    } catch (const CompileError& e) {
        return e.message();
    }
    return "";
}

HostEnv listing_env()
{
    HostEnv env;
    env.class_name = "GIPLtest";
    env.fields = {{"N", true, false}, {"count", false, false}, {"total", false, true}};
    env.locals = {"f"};
    env.free_functions = {{"square", 1}};
    return env;
}

}  // namespace

TEST_SUITE("geer")
{
    TEST_CASE("scope errors")
    {
        CHECK(compile_error("x + 1") == "undefined identifier x");
        CHECK(compile_error("X where X = 1; X = 2; end") == "multiply defined identifier X");
        CHECK(compile_error("#.d") == "undefined dimension d");
        CHECK(compile_error("1 @[d: 2]") == "undefined dimension d");
        CHECK(compile_error("d + 1 where dimension d; end") == "dimension d used as a value (use #.d)");
        CHECK(compile_error("f where f(x) = x; end") == "function f used without arguments");
        CHECK(compile_error("f(1, 2) where f(x) = x; end").find("argument") != std::string::npos);
        CHECK(compile_error("o.v", {}, "GIPL").find("OBJECTIVELUCID") != std::string::npos);
    }

    TEST_CASE("dimension parameters shadow declared dimensions")
    {
        Value v = test_support::eval_lucid("g.d(5) where dimension d; g.a(x) = x + #.a; end", Context{{"d", 2}});
        CHECK(v == Value::integer(7));
    }

    TEST_CASE("captures classify host identifiers")
    {
        Geer g = build("N @[d: f] + count + total + square(2) where dimension d; end", listing_env());
        std::vector<Capture> expected{{"N", CaptureKind::IntensionalMember},
                                      {"f", CaptureKind::MethodLocal},
                                      {"count", CaptureKind::HostField},
                                      {"total", CaptureKind::HostField}};
        for (const auto& c : expected) {
            CHECK(std::find(g.captures.begin(), g.captures.end(), c) != g.captures.end());
        }
        CHECK(std::none_of(g.captures.begin(), g.captures.end(), [](const Capture& c) { return c.name == "square"; }));
    }

    TEST_CASE("static contexts see only static fields")
    {
        HostEnv env = listing_env();
        env.static_context = true;
        CHECK(compile_error("count", env) == "undefined identifier count");
        CHECK(compile_error("total", env).empty());
    }

    TEST_CASE("lucid definitions shadow host fields")
    {
        Geer g = build("count where count = 3; end", listing_env());
        CHECK(g.captures.empty());
    }

    TEST_CASE("dictionary records scopes")
    {
        Geer g = build("N + X where dimension d; X = f; g.a(y) = y; end", listing_env());
        std::vector<std::string> dump = g.dictionary.dump();
        auto has = [&](const std::string& needle) {
            return std::any_of(dump.begin(), dump.end(),
                               [&](const std::string& l) { return l.find(needle) != std::string::npos; });
        };
        CHECK(has("host GIPLtest hostClass"));
        CHECK(has("host GIPLtest.N hostMember"));
        CHECK(has(" d dimension"));
        CHECK(has(" X variable"));
        CHECK(has(" g function"));
        CHECK(has("method f"));
    }

    TEST_CASE("digest depends on the source only")
    {
        Geer a = build("1 + 2"), b = build("1 + 2"), c = build("1 + 3");
        CHECK(a.digest == b.digest);
        CHECK(a.digest != c.digest);
        CHECK(a.digest.size() == 16);
    }

    TEST_CASE("free dimensions")
    {
        Geer g = build("#.d + #.e where dimension d, e; end");
        CHECK(g.free_dimensions(g.root->id) == DimSet{"d", "e"});
        Geer rebound = build("(#.d + #.e) @[d: 3] where dimension d, e; end");
        CHECK(rebound.free_dimensions(rebound.root->id) == DimSet{"e"});
        Geer tag_uses = build("(#.d) @[d: #.t] where dimension d, t; end");
        CHECK(tag_uses.free_dimensions(tag_uses.root->id) == DimSet{"t"});
        Geer obj = build("o.v", [] {
            HostEnv env;
            env.locals = {"o"};
            return env;
        }());
        CHECK(obj.free_dimensions(obj.root->id) == DimSet::all());
        Geer constant = build("X where X = 1 + 2; end");
        CHECK(constant.free_dimensions(constant.root->id).empty());
        Geer rec = build("N where dimension d; N = if #.d <= 0 then 1 else N @[d: #.d - 1] + 1 fi; end");
        CHECK(rec.free_dimensions(rec.root->id) == DimSet{"d"});
        CHECK_THROWS_AS(rec.free_dimensions(99999), InternalError);
    }

    TEST_CASE("member free dimensions come from the resolver")
    {
        auto parsed = lucid::parse_segment("GIPL", "N + 1");
        HostEnv env = listing_env();
        Geer g = compile(parsed.ast, env, {}, [](const std::string&) { return DimSet{"d"}; });
        CHECK(g.free_dimensions(g.root->id) == DimSet{"d"});
    }

    TEST_CASE("dot-call on a Lucid function becomes a call with dimension arguments")
    {
        Geer g = build("f.d(2) where dimension d; f.a(x) = x * #.a; end");
        CHECK(g.root->operands[0]->kind == lucid::ExprKind::Call);
        CHECK(g.root->operands[0]->dim_args == std::vector<std::string>{"d"});
    }
}
