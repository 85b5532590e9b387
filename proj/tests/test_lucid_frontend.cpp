#include "jooip/desugar.hpp"
#include "jooip/lucid_parser.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace jooip;
using namespace jooip::lucid;

namespace {

ExprPtr parse(const std::string& s)
{
    return parse_gipl(s);
}

bool same(const std::string& a, const std::string& b)
{
    return same_shape(desugar_indexical(parse(a)), desugar_indexical(parse(b)));
}

}  // namespace

TEST_SUITE("lucid_frontend")
{
    TEST_CASE("precedence and associativity")
    {
        CHECK(same_shape(parse("1 + 2 * 3"), parse("1 + (2 * 3)")));
        CHECK(same_shape(parse("1 - 2 - 3"), parse("(1 - 2) - 3")));
        CHECK(same_shape(parse("a <= b && c"), parse("(a <= b) && c")));
        CHECK(same_shape(parse("-k * y / m"), parse("((-k) * y) / m")));
    }

    TEST_CASE("at-forms")
    {
        CHECK(same_shape(parse("N @.d f - 1"), parse("(N @[d: f]) - 1")));
        CHECK(same_shape(parse("N @.d (f - 1)"), parse("N @[d: f - 1]")));
        ExprPtr chained = parse("P @[x:1][y:2]");
        REQUIRE(chained->kind == ExprKind::At);
        CHECK(chained->operands[0]->kind == ExprKind::At);
    }

    TEST_CASE("printing reparses to the same tree")
    {
        for (const char* src : {"if #.d <= 0 then 1 else (N + 1) @[d: #.d - 1] fi where dimension d; N = 3; end",
                                "f.d(x, 2) where dimension d; f.a(u) = u @[a: #.a + 1]; end", "o.m(1).v",
                                "\"a\" + \"b\"", "!true || false"}) {
            ExprPtr e = parse(src);
            CHECK_MESSAGE(same_shape(parse(print(e)), e), src);
        }
    }

    TEST_CASE("desugaring rules")
    {
        CHECK(same("first.d X", "X @[d: 0]"));
        CHECK(same("next.d X", "X @[d: #.d + 1]"));
        CHECK(same("X fby.d Y", "if #.d <= 0 then X else Y @[d: #.d - 1] fi"));
        CHECK(same("X asa.d Y", "first.d (X wvr.d Y)"));
        for (const char* src : {"X wvr.d Y", "X upon.d Y", "X asa.d Y", "first.d (1 fby.d next.d X)"}) {
            CHECK(is_core(desugar_indexical(parse(src))));
            CHECK(!is_core(parse(src)));
        }
    }

    TEST_CASE("fresh names never capture user identifiers")
    {
        Value v = test_support::eval_lucid("(T + 0) wvr.d (#.d % 2 == 0) where dimension d; T = #.d * 10; end",
                                           Context{{"d", 2}}, "INDEXICALLUCID");
        CHECK(v == Value::integer(40));
    }

    TEST_CASE("dialects")
    {
        CHECK_THROWS_WITH_AS(parse_segment("GIPL", "X fby.d Y"), doctest::Contains("INDEXICALLUCID"), CompileError);
        CHECK_NOTHROW(parse_segment("INDEXICALLUCID", "X fby.d Y"));
        CHECK_THROWS_AS(test_support::compile_lucid("o.v"), CompileError);
        CHECK(parse_segment("OBJECTIVELUCID", "o.v").dot_notation);
        CHECK(!parse_segment("JLUCID", "o.v").warnings.empty());
        CHECK(!parse_segment("LUCX", "o.v").warnings.empty());
        CHECK_THROWS_WITH_AS(parse_segment("COBOL", "1"), doctest::Contains("GIPL"), CompileError);
        CHECK(parse_segment("", "1").dialect == DialectTag::GIPL);
    }

    TEST_CASE("optional semicolon before where")
    {
        CHECK(same_shape(parse("X; where X = 1; end"), parse("X where X = 1; end")));
    }

    TEST_CASE("syntax errors carry a position")
    {
        try {
            parse("1 +");
            FAIL("no error");
        } catch (const CompileError& e) {
            CHECK(e.loc().line == 1);
            CHECK(std::string(e.what()).find("expected") != std::string::npos);
        }
    }
}
