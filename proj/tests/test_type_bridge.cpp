#include "jooip/diagnostics.hpp"
#include "jooip/type_bridge.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace jooip;

namespace {

struct Row {
    const char* lucid;
    const char* host;
    const char* gipsy;
};

// Lucid type, host type, runtime type.
const Row kTable[] = {
    {"dimension", "int, String", "GIPSYContext"}, {"char", "char", "GIPSYCharacter"},
    {"int", "byte", "GIPSYInteger"},              {"int", "short", "GIPSYInteger"},
    {"int", "int", "GIPSYInteger"},               {"(-)", "long", "GIPSYInteger"},
    {"float", "float", "GIPSYFloat"},             {"double", "double", "GIPSYDouble"},
    {"bool", "boolean", "GIPSYBoolean"},          {"[]", "array", "GIPSYArray"},
    {"string", "String", "GIPSYString"},          {"object", "class", "GIPSYObject"},
    {"(-)", "interface", "(-)"},                  {"(-)", "enum", "GIPSYObject"},
    {"bool:true", "void", "GIPSYVoid"},
};

bool type_error(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const RuntimeError& e) {
        return e.message().find("run-time type check semantic error") == 0;
    }
    return false;
}

}  // namespace

TEST_SUITE("type_bridge")
{
    TEST_CASE("mapping table rows")
    {
        const auto& rows = type_map();
        REQUIRE(rows.size() == std::size(kTable));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CAPTURE(i);
            CHECK(rows[i].lucid_type == kTable[i].lucid);
            CHECK(rows[i].host_type == kTable[i].host);
            CHECK(rows[i].gipsy_type == kTable[i].gipsy);
        }
    }

    TEST_CASE("row lookup")
    {
        CHECK(type_row("int", 0) == 4);
        CHECK(type_row("byte", 0) == 2);
        CHECK(type_row("long", 0) == 5);
        CHECK(type_row("String", 0) == 10);
        CHECK(type_row("int", 1) == 9);
        CHECK(type_row("GIPLtest", 0, true) == 11);
        CHECK(type_row("__Context", 0) == 0);
        CHECK(type_row("void", 0) == 14);
    }

    TEST_CASE("host to Lucid")
    {
        CHECK(to_lucid(HostValue::make_int(5)) == Value::integer(5));
        CHECK(to_lucid(HostValue::make_byte(-3)) == Value::integer(-3));
        CHECK(to_lucid(HostValue::make_short(300)) == Value::integer(300));
        CHECK(to_lucid(HostValue::make_double(2.5)) == Value::real(2.5));
        CHECK(to_lucid(HostValue::make_bool(true)) == Value::boolean(true));
        CHECK(to_lucid(HostValue::make_string("x")) == Value::string("x"));
        CHECK(to_lucid(HostValue::make_char('q')) == Value::character('q'));
        CHECK(to_lucid(HostValue::void_value()).is_void());
        CHECK(type_error([] { to_lucid(HostValue::make_long(5)); }));
    }

    TEST_CASE("Lucid to host")
    {
        CHECK(to_host(Value::integer(44), "int") == HostValue::make_int(44));
        CHECK(to_host(Value::integer(44), "double") == HostValue::make_double(44.0));
        CHECK(type_error([] { to_host(Value::real(2.5), "int"); }));
        CHECK(type_error([] { to_host(Value::string("a"), "int"); }));
        CHECK(type_error([] { to_host(Value::integer(1), "boolean"); }));
        CHECK(type_error([] { to_host(Value::integer(1), "long"); }));
        CHECK(type_error([] { to_host(Value::integer(300), "byte"); }));
        CHECK(to_host(Value::integer(127), "byte") == HostValue::make_byte(127));
        CHECK(to_host(Value::integer(-128), "byte") == HostValue::make_byte(-128));
        CHECK(type_error([] { to_host(Value::integer(-129), "byte"); }));
        CHECK(to_host(Value::integer(32767), "short") == HostValue::make_short(32767));
        CHECK(type_error([] { to_host(Value::integer(32768), "short"); }));
        CHECK(to_host(Value::void_value(), "void").kind == HostKind::Void);
    }

    TEST_CASE("arrays convert element-wise")
    {
        Value v = Value::array({Value::integer(1), Value::integer(2)});
        HostValue h = to_host(v, "int", 1);
        REQUIRE(h.kind == HostKind::Array);
        REQUIRE(h.array->elements.size() == 2);
        CHECK(h.array->elements[1] == HostValue::make_int(2));
        CHECK(to_lucid(h) == v);
        CHECK(type_error([&] { to_host(v, "String", 1); }));
    }

    TEST_CASE("float narrowing warns")
    {
        std::vector<std::string> warnings;
        HostValue h = to_host(Value::real(0.1), "float", 0, &warnings);
        CHECK(h.kind == HostKind::Float);
        CHECK(warnings.size() == 1);
        warnings.clear();
        to_host(Value::real(0.5), "float", 0, &warnings);
        CHECK(warnings.empty());
    }

    TEST_CASE("random round trips")
    {
        std::mt19937_64 rng(20261015);
        std::uniform_int_distribution<std::int64_t> ints(-1000000000, 1000000000);
        std::uniform_real_distribution<double> reals(-1e6, 1e6);
        for (int i = 0; i < 1000; ++i) {
            HostValue h;
            std::string type;
            switch (i % 4) {
            case 0: h = HostValue::make_int(ints(rng)); type = "int"; break;
            case 1: h = HostValue::make_double(reals(rng)); type = "double"; break;
            case 2: h = HostValue::make_bool(rng() & 1); type = "boolean"; break;
            default: h = HostValue::make_string(std::to_string(ints(rng))); type = "String"; break;
            }
            CHECK(to_host(to_lucid(h), type) == h);
        }
    }
}
