#include "support.hpp"

#include <doctest.h>

using namespace jooip;
using test_support::corpus_path;
using test_support::read_file;
using test_support::run_source;

namespace {

std::string runtime_error(const std::string& source)
{
    try {
        run_source(source);
    } catch (const RuntimeError& e) {
        return e.message();
    }
    return "";
}

// The light cycles RED -> GREEN -> YELLOW with 8, 5 and 1 ticks.
std::vector<std::string> traffic_oracle(int n)
{
    const std::string names[] = {"GREEN", "YELLOW", "RED"};
    const int ticks[] = {5, 1, 8};
    int state = 2;
    int timer = 8;
    std::vector<std::string> out{names[state]};
    while (static_cast<int>(out.size()) < n) {
        int t = timer - 1;
        if (t <= 0) {
            state = (state + 1) % 3;
            t = ticks[state];
        }
        timer = t;
        out.push_back(names[state]);
    }
    return out;
}

}  // namespace

TEST_SUITE("runtime")
{
    TEST_CASE("printing")
    {
        CHECK(run_source("class A { public static void main(String[] a) { print(1 + 2); } }") == "3");
        CHECK(run_source("class A { public static void main(String[] a) { System.out.println(1.0 / 4); } }") ==
              "0.25\n");
        CHECK(run_source("class A { public static void main(String[] a) { System.out.println(2.0); } }") == "2.0\n");
        CHECK(run_source("class A { public static void main(String[] a) { System.out.println(\"n=\" + 7 / 2); } }") ==
              "n=3\n");
    }

    TEST_CASE("runtime errors")
    {
        CHECK(runtime_error("class A { public static void main(String[] a) { int x = 1 / 0; } }") == "division by zero");
        CHECK(runtime_error("class A { static int f(int n) { return f(n + 1); } "
                            "public static void main(String[] a) { f(0); } }")
                  .find("stack overflow") == 0);
        CHECK(runtime_error("class A { public static void main(String[] a) { int[] v = new int[2]; v[2] = 1; } }")
                  .find("index") != std::string::npos);
    }

    TEST_CASE("segments inside methods see locals")
    {
        CHECK(run_source("class A { public static void main(String[] a) { int k = 4; "
                         "System.out.println(/@ k * #.d + 1 where dimension d; end @/); } }") == "1\n");
        CHECK(run_source("class A { public static void main(String[] a) { int k = 4; "
                         "System.out.println(/@ (k * #.d) @[d: 3] where dimension d; end @/); } }") == "12\n");
    }

    TEST_CASE("mutually referencing lazy fields terminate")
    {
        auto program = compile_program(read_file(corpus_path("feynman.hyb")), "feynman.hyb");
        Interpreter interp(*program);
        ObjectHandle in = interp.construct("InPhase", {});
        REQUIRE(in != nullptr);
        CHECK(in->class_name() == "InPhase");
    }

    TEST_CASE("constructing an object leaves intensional members undemanded")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        Interpreter interp(*program);
        interp.construct("GIPLtest", {});
        CHECK(interp.engine().warehouse_size() == 0);
    }

    TEST_CASE("dot access evaluates a member stream")
    {
        auto program = compile_program(read_file(corpus_path("feynman.hyb")), "feynman.hyb");
        Interpreter interp(*program);
        ObjectHandle in = interp.construct("InPhase", {});
        const double dt = 0.2;
        const double v0 = 2.8;
        Value y1 = interp.engine().eval_dot_member(Value::object(in), "Y", Context{{"time", 1}});
        REQUIRE(y1.is_double());
        CHECK(y1.as_double() == 0.0 + v0 * dt);
        Value y0 = interp.engine().eval_dot_member(Value::object(in), "Y", Context{{"time", 0}});
        CHECK(y0 == Value::real(0.0));
    }

    TEST_CASE("written members stop evaluating their stream")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        Interpreter interp(*program);
        ObjectHandle obj = interp.construct("GIPLtest", {});
        CHECK(interp.read_field(obj, "N") == HostValue::make_int(1));
        interp.write_field(obj, "N", HostValue::make_int(9));
        CHECK(interp.read_field(obj, "N") == HostValue::make_int(9));
        CHECK(test_support::run_program(*program) == "N=3\n");
    }

    TEST_CASE("private members are not reachable from another class's segment")
    {
        std::string msg = runtime_error(
            "class B { private int secret = 3; public int open = 4; }"
            "class A { public static void main(String[] a) { B b = new B(); "
            "System.out.println(/@#OBJECTIVELUCID b.secret @/); } }");
        CHECK(msg == "member not accessible: B.secret");
        CHECK(run_source("class B { private int secret = 3; public int open = 4; }"
                         "class A { public static void main(String[] a) { B b = new B(); "
                         "System.out.println(/@#OBJECTIVELUCID b.open @/); } }") == "4\n");
    }

    TEST_CASE("free functions are callable from segments")
    {
        CHECK(run_source("int twice(int v) { return 2 * v; }"
                         "class A { public static void main(String[] a) { "
                         "System.out.println(/@ twice(#.d) @[d: 5] where dimension d; end @/); } }") == "10\n");
    }

    TEST_CASE("lazy field reads are memoized")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        Interpreter interp(*program);
        ObjectHandle obj = interp.construct("GIPLtest", {});
        interp.read_field(obj, "N");
        auto misses = interp.engine().stats().misses;
        interp.read_field(obj, "N");
        CHECK(interp.engine().stats().misses == misses);
    }

    TEST_CASE("coercion")
    {
        CHECK(run_source("class A { public static void main(String[] a) { double d = 3; System.out.println(d); } }") ==
              "3.0\n");
        CHECK(!runtime_error("class A { public static void main(String[] a) { int i = 2.5; } }").empty());
        CHECK(run_source("class A { public static void main(String[] a) { int i = 1; i += 2.5; "
                         "System.out.println(i); } }") == "3\n");
        CHECK(runtime_error("class A { int x = /@ 2.5 @/; public static void main(String[] a) { "
                            "System.out.println(new A().x); } }")
                  .find("run-time type check semantic error") == 0);
    }

    TEST_CASE("traffic light follows the automaton")
    {
        std::string out = test_support::run_source(read_file(corpus_path("trafficlight.hyb")));
        std::string expected;
        for (const auto& s : traffic_oracle(20)) {
            expected += s + "\n";
        }
        CHECK(out == expected);
    }
}
