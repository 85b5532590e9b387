#include "support.hpp"

#include <doctest.h>

using namespace jooip;
using test_support::corpus_path;
using test_support::count_of;
using test_support::read_file;

namespace {

const char* kCorpus[] = {"naturals.hyb", "naturals42.hyb", "euler.hyb",        "feynman.hyb",
                         "prime.hyb",    "hamming.hyb",    "trafficlight.hyb", "multi.hyb"};

std::string translate_file(const std::string& name)
{
    auto program = compile_program(read_file(corpus_path(name)), name);
    return translate(*program);
}

}  // namespace

TEST_SUITE("translator")
{
    TEST_CASE("naturals scaffolding")
    {
        std::string pure = translate_file("naturals.hyb");
        CHECK(count_of(pure, "static __Program") == 3);
        CHECK(count_of(pure, "new __Engine(") == 3);
        CHECK(count_of(pure, "__Context __ctx") == 1);
        CHECK(count_of(pure, "__work()") == 1);
        CHECK(count_of(pure, "static\n    {") == 1);
        CHECK(count_of(pure, "implements ISequentialThread") == 1);
        CHECK(pure.find("/@") == std::string::npos);
        CHECK(pure.find("int N = 0;") != std::string::npos);
        CHECK(pure.find("private boolean __bNIsWritten = false;") != std::string::npos);
    }

    TEST_CASE("a class without segments only gains scaffolding")
    {
        auto program = compile_program("class A { int x = 1; public static void main(String[] a) { print(x); } }",
                                       "a.hyb");
        std::string pure = translate(*program);
        CHECK(count_of(pure, "static __Program") == 0);
        CHECK(count_of(pure, "__compile(") == 0);
        CHECK(count_of(pure, "__Context __ctx") == 1);
        CHECK(count_of(pure, "__work()") == 1);
        CHECK(pure.find("int x = 1;") != std::string::npos);
    }

    TEST_CASE("one intensional member")
    {
        auto program = compile_program("class A { int N = /@ 5 @/; }", "a.hyb");
        std::string pure = translate(*program);
        CHECK(count_of(pure, "int N = 0;") == 1);
        CHECK(count_of(pure, "__bNIsWritten = false") == 1);
        CHECK(count_of(pure, "static __Program") == 1);
        CHECK(count_of(pure, "__get_N()") == 1);
    }

    TEST_CASE("bindings name their slots by segment")
    {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        LucidExprBinding b = binding_for(program->segments.at(1));
        CHECK(b.index == 2);
        CHECK(b.program_slot == "__geer_2");
        CHECK(b.engine_handle == "__engine_2");
        CHECK(b.captures == std::vector<std::string>{"f"});
    }

    TEST_CASE("translated corpus programs print the same output")
    {
        for (const char* name : kCorpus) {
            CAPTURE(name);
            std::string src = read_file(corpus_path(name));
            CHECK(test_support::run_translated(src) == test_support::run_source(src));
        }
    }

    TEST_CASE("generated names must not collide")
    {
        CHECK_THROWS_AS(translate(*compile_program("class A { boolean __bNIsWritten; int N = /@ 1 @/; }", "a.hyb")),
                        CompileError);
        CHECK_THROWS_AS(translate(*compile_program("class A { int __geer_1 = 1; int N = /@ 1 @/; }", "a.hyb")),
                        CompileError);
    }

    TEST_CASE("translating twice adds no slots")
    {
        for (const char* name : kCorpus) {
            CAPTURE(name);
            std::string once = translate_file(name);
            std::string twice = translate(*compile_program(once, "x.pure.hyb"));
            CHECK(count_of(twice, "static __Program") == count_of(once, "static __Program"));
            CHECK(count_of(twice, "__Context __ctx") == count_of(once, "__Context __ctx"));
            CHECK(count_of(twice, "__work()") == count_of(once, "__work()"));
        }
    }

    TEST_CASE("buffers assemble in order")
    {
        EmitBuffers b{"H", "I", "S", "M", "B"};
        CHECK(b.assemble() == "HISMB}\n");
        std::string pure = translate_file("naturals.hyb");
        auto header = pure.find("class GIPLtest");
        auto slot = pure.find("static __Program");
        auto block = pure.find("static\n    {");
        auto getter = pure.find("__get_N()");
        auto body = pure.find("computeLocalAverage");
        CHECK(header < slot);
        CHECK(slot < block);
        CHECK(block < getter);
        CHECK(getter < body);
    }

    TEST_CASE("output path")
    {
        CHECK(translated_path("dir/prog.hyb") == "dir/prog.pure.hyb");
        CHECK(translated_path("prog") == "prog.pure.hyb");
    }
}
