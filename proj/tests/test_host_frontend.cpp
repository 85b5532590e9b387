#include "jooip/host_parser.hpp"
#include "jooip/symbol_table.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace jooip;
using test_support::corpus_path;
using test_support::read_file;

namespace {

std::string compile_error(const std::string& source)
{
    try {
        compile_program(source, "t.hyb");
    } catch (const CompileError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("host_frontend")
{
    TEST_CASE("segments are cut out and numbered in source order")
    {
        host::Unit u = host::parse_host(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        REQUIRE(u.segments.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(u.segments[i].index == i + 1);
        }
        CHECK(u.segments[0].tag == "GIPL");
        CHECK(u.segments[1].tag == "GIPL");
        CHECK(u.segments[1].text.find("N@.d f - 1") != std::string::npos);
        REQUIRE(u.classes.size() == 1);
        CHECK(u.classes[0].name == "GIPLtest");
        const host::FieldDecl* n = u.classes[0].field("N");
        REQUIRE(n != nullptr);
        CHECK(n->intensional());
        CHECK(n->visibility == host::Visibility::Private);
    }

    TEST_CASE("explicit dialect tags")
    {
        host::Unit u = host::parse_host("class A { int x = /@#LUCX 1 @/; }");
        REQUIRE(u.segments.size() == 1);
        CHECK(u.segments[0].tag == "LUCX");
    }

    TEST_CASE("segment delimiters are checked")
    {
        CHECK_THROWS_WITH(host::parse_host("class A { int x = /@ 1 ; }", "a.hyb"),
                          doctest::Contains("unterminated Lucid segment"));
        CHECK_THROWS_WITH(host::parse_host("class A { int x = /@ 1 + /@ 2 @/ @/; }", "a.hyb"),
                          doctest::Contains("nested Lucid segment"));
    }

    TEST_CASE("syntax errors carry file, line and column")
    {
        try {
            host::parse_host("class A {\n  int x = ;\n}", "bad.hyb");
            FAIL("expected a syntax error");
        } catch (const CompileError& e) {
            CHECK(std::string(e.what()).rfind("bad.hyb:2:", 0) == 0);
            CHECK(e.message().find("syntax error") == 0);
            CHECK(e.loc().line == 2);
        }
    }

    TEST_CASE("printing reaches a fixed point")
    {
        for (const char* name : {"naturals.hyb", "euler.hyb", "feynman.hyb", "prime.hyb", "hamming.hyb",
                                 "trafficlight.hyb", "multi.hyb", "naturals42.hyb"}) {
            CAPTURE(name);
            host::Unit u = host::parse_host(read_file(corpus_path(name)), name);
            std::string once = host::print(u);
            std::string twice = host::print(host::parse_host(once, name));
            CHECK(once == twice);
        }
    }

    TEST_CASE("host text and segment reinsertion are inverse")
    {
        std::string src = read_file(corpus_path("naturals.hyb"));
        host::Unit u = host::parse_host(src, "naturals.hyb");
        std::string text = host::host_text(u);
        CHECK(text.find("/@") == std::string::npos);
        CHECK(text.find("__lucid_expr_1") != std::string::npos);
        CHECK(text.find("__lucid_expr_3") != std::string::npos);
        CHECK(host::reinsert_segments(text, u) == src);
    }

    TEST_CASE("intensional members enter the symbol table as non-host members")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        const ClassSymbolTable& t = program->tables.at("GIPLtest");
        const IdentifierSymbolEntry* n = t.find("N");
        REQUIRE(n != nullptr);
        CHECK(!n->is_host_member);
        CHECK(n->ast_entry.has_value());
        CHECK(n->lucid_dictionary != nullptr);
        CHECK(n->owning_class == "GIPLtest");
        CHECK(n->decl_source.find("#.d") != std::string::npos);
        const IdentifierSymbolEntry* avg = t.find("computeLocalAverage");
        REQUIRE(avg != nullptr);
        CHECK(avg->kind == IdentifierSymbolEntry::Kind::Method);
        CHECK(avg->is_host_member);
        CHECK(!avg->ast_entry.has_value());
        CHECK(symbol_tables_consistent(program->tables));
    }

    TEST_CASE("duplicates are rejected")
    {
        CHECK(compile_error("class A { int x; int x; }").find("multiply defined identifier A.x") != std::string::npos);
        CHECK(compile_error("class A { } class A { }").find("multiply defined class A") != std::string::npos);
        CHECK(compile_error("int f() { return 1; } int f() { return 2; } class A { }")
                  .find("multiply defined free function f") != std::string::npos);
    }

    TEST_CASE("free functions live in their own table")
    {
        auto program = compile_program("int twice(int v) { return 2 * v; } class A { }", "t.hyb");
        REQUIRE(program->tables.count(kFreeFunctionTable) == 1);
        const IdentifierSymbolEntry* f = program->tables.at(kFreeFunctionTable).find("twice");
        REQUIRE(f != nullptr);
        CHECK(f->kind == IdentifierSymbolEntry::Kind::FreeFunction);
    }

    TEST_CASE("consistency check notices a missing entry")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        SymbolTables tables = program->tables;
        tables.at("GIPLtest").members.at("N").ast_entry.reset();
        CHECK(!symbol_tables_consistent(tables));
    }

    TEST_CASE("segments outside expressions are rejected")
    {
        CHECK_NOTHROW(compile_program("class A { static int f() { return /@ 1 @/; } }", "t.hyb"));
        CHECK(!compile_error("class A { int x = 1; void m() { int /@ 1 @/ = 2; } }").empty());
    }
}
