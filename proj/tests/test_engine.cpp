#include "jooip/engine.hpp"
#include "jooip/free_functions.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace jooip;
using test_support::compile_lucid;
using test_support::eval_lucid;

namespace {

const char* kNaturals = "N where dimension d; N = if #.d <= 0 then 1 else (N + 1) @[d: #.d - 1] fi; end";

std::int64_t naturals_oracle(std::int64_t d)
{
    std::int64_t n = 1;
    for (std::int64_t i = 1; i <= d; ++i) {
        n = n + 1;
    }
    return n;
}

std::string runtime_error(const std::string& text, const Context& ctx = {})
{
    try {
        eval_lucid(text, ctx);
    } catch (const RuntimeError& e) {
        return e.message();
    }
    return "";
}

}  // namespace

TEST_SUITE("engine")
{
    TEST_CASE("arithmetic")
    {
        CHECK(eval_lucid("7 / 2") == Value::integer(3));
        CHECK(eval_lucid("-7 / 2") == Value::integer(-3));
        CHECK(eval_lucid("7 / 2.0") == Value::real(3.5));
        CHECK(eval_lucid("7 % 3") == Value::integer(1));
        CHECK(eval_lucid("\"ab\" + \"cd\"") == Value::string("abcd"));
        CHECK(eval_lucid("\"a\" < \"b\"") == Value::boolean(true));
        CHECK(eval_lucid("1 == 1.0") == Value::boolean(true));
        CHECK(eval_lucid("\"a\" == 1") == Value::boolean(false));
        CHECK(runtime_error("1 / 0") == "division by zero");
        CHECK(runtime_error("5 % 2.0").find("%") != std::string::npos);
        CHECK(!runtime_error("1 + true").empty());
    }

    TEST_CASE("value printing")
    {
        CHECK(Value::real(3.0).to_string() == "3.0");
        CHECK(Value::real(0.1 + 0.2).to_string() == "0.30000000000000004");
        CHECK(Value::integer(-4).to_string() == "-4");
        CHECK(Value::array({Value::integer(1), Value::integer(2)}).to_string() == "[1, 2]");
    }

    TEST_CASE("natural numbers stream matches the recurrence")
    {
        for (std::int64_t d : {0, 1, 3, 17}) {
            CHECK(eval_lucid(kNaturals, Context{{"d", d}}) == Value::integer(naturals_oracle(d)));
        }
        CHECK(eval_lucid(kNaturals, Context{{"d", -4}}) == Value::integer(1));
    }

    TEST_CASE("warehouse keeps the stream linear")
    {
        Geer g = compile_lucid(kNaturals, Context{{"d", 0}});
        Engine e;
        CHECK(e.eval(g, Context{{"d", 100}}) == Value::integer(101));
        NodeId body = 0;
        for (const auto& [id, node] : g.nodes) {
            if (node->kind == lucid::ExprKind::Conditional) {
                body = id;
            }
        }
        REQUIRE(body != 0);
        CHECK(e.computations(g, body) <= 101);
        WarehouseStats before = e.stats();
        CHECK(e.eval(g, Context{{"d", 100}}) == Value::integer(101));
        CHECK(e.stats().hits > before.hits);
        CHECK(e.stats().misses == before.misses);
    }

    TEST_CASE("projection shares results across irrelevant dimensions")
    {
        Geer g = compile_lucid(kNaturals, Context{{"d", 0}, {"z", 0}});
        Engine e;
        e.eval(g, Context{{"d", 10}, {"z", 1}});
        std::size_t size = e.warehouse_size();
        e.eval(g, Context{{"d", 10}, {"z", 2}});
        CHECK(e.warehouse_size() == size);
    }

    TEST_CASE("without the warehouse a doubly recursive stream is exponential")
    {
        const char* twice = "F where dimension d; F = if #.d <= 0 then 1 else F @[d: #.d - 1] + F @[d: #.d - 1] fi; end";
        Geer g = compile_lucid(twice, Context{{"d", 0}});
        EngineOptions off;
        off.warehouse = false;
        Engine slow(off);
        CHECK(slow.eval(g, Context{{"d", 10}}) == Value::integer(1024));
        CHECK(slow.node_evaluations() >= 1024);
        Engine fast;
        CHECK(fast.eval(g, Context{{"d", 10}}) == Value::integer(1024));
        CHECK(fast.node_evaluations() < slow.node_evaluations() / 10);
    }

    TEST_CASE("demand cycles are reported with their chain")
    {
        std::string msg = runtime_error("X where X = X + 1; end");
        CHECK(msg.find("demand cycle") != std::string::npos);
        CHECK(msg.find("X -> X") != std::string::npos);
    }

    TEST_CASE("trace lines")
    {
        Geer g = compile_lucid("#.d + 1", Context{{"d", 0}});
        std::ostringstream trace;
        EngineOptions opts;
        opts.trace = &trace;
        Engine e(opts);
        e.eval(g, Context{{"d", 4}});
        CHECK(trace.str().rfind("DEMAND n", 0) == 0);
        CHECK(trace.str().find("{d:4}") != std::string::npos);
        CHECK(trace.str().find("-> 5") != std::string::npos);
    }

    TEST_CASE("warehouse is write-once")
    {
        Warehouse w;
        w.store("k", Value::integer(1));
        CHECK_NOTHROW(w.store("k", Value::integer(1)));
        CHECK_THROWS_AS(w.store("k", Value::integer(2)), InternalError);
        CHECK(w.lookup("k").has_value());
        CHECK(!w.lookup("missing").has_value());
        CHECK(w.stats().hits == 1);
        CHECK(w.stats().misses == 1);
    }

    TEST_CASE("free function registry")
    {
        FreeFunctionRegistry reg;
        reg.add("twice", 1, [](const std::vector<Value>& a) { return Value::integer(a[0].as_integer() * 2); });
        REQUIRE(reg.find("twice") != nullptr);
        CHECK(reg.find("twice")->arity == 1);
        CHECK(reg.find("absent") == nullptr);
        CHECK_THROWS_WITH(reg.add("twice", 1, {}), "free function twice is already registered");
        Engine e;
        e.set_free_functions(&reg);
        CHECK(e.eval_free_function("twice", {Value::integer(21)}) == Value::integer(42));
        CHECK_THROWS_AS(e.eval_free_function("absent", {}), RuntimeError);
    }

    TEST_CASE("dot access needs an object")
    {
        Engine e;
        CHECK_THROWS_AS(e.eval_dot_member(Value::integer(3), "v"), RuntimeError);
        CHECK_THROWS_AS(e.eval_dot_method(Value::object(nullptr), "m", {}), RuntimeError);
    }

    TEST_CASE("string tags")
    {
        CHECK(eval_lucid("#.s", Context{{"s", "north"}}) == Value::string("north"));
        CHECK(eval_lucid("(#.s) @[s: \"east\"]", Context{{"s", "north"}}) == Value::string("east"));
    }
}
