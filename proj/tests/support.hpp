#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include "jooip/engine.hpp"
#include "jooip/geer.hpp"
#include "jooip/interpreter.hpp"
#include "jooip/lucid_parser.hpp"
#include "jooip/program.hpp"
#include "jooip/stack.hpp"
#include "jooip/translator.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace test_support {

inline std::string corpus_path(const std::string& name)
{
    return std::string(JOOIP_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string run_program(const jooip::Program& program, jooip::EngineOptions engine = {})
{
    std::ostringstream out, err;
    jooip::RunOptions opts;
    opts.engine = engine;
    opts.out = &out;
    opts.err = &err;
    jooip::run_on_large_stack([&] {
        jooip::Interpreter interp(program, opts);
        interp.run();
    });
    return out.str();
}

/// Compiles and runs hybrid source directly; returns its standard output.
inline std::string run_source(const std::string& source, jooip::EngineOptions engine = {})
{
    auto program = jooip::compile_program(source, "test.hyb");
    return run_program(*program, engine);
}

/// Translates, reparses and runs the pure unit.
inline std::string run_translated(const std::string& source, jooip::EngineOptions engine = {})
{
    auto program = jooip::compile_program(source, "test.hyb");
    auto pure = jooip::compile_program(jooip::translate(*program), "test.pure.hyb");
    return run_program(*pure, engine);
}

/// Compiles a standalone Lucid expression; `ctx` dimensions count as declared.
inline jooip::Geer compile_lucid(const std::string& text, const jooip::Context& ctx = {},
                                 const std::string& tag = "GIPL")
{
    auto parsed = jooip::lucid::parse_segment(tag, text);
    jooip::CompileOptions opts;
    opts.source = text;
    opts.dot_notation = parsed.dot_notation;
    for (const auto& [dim, t] : ctx.bindings()) {
        opts.ambient_dimensions.push_back(dim);
    }
    return jooip::compile(parsed.ast, {}, opts);
}

inline jooip::Value eval_lucid(const std::string& text, const jooip::Context& ctx = {},
                               const std::string& tag = "GIPL", jooip::EngineOptions engine = {})
{
    jooip::Geer geer = compile_lucid(text, ctx, tag);
    jooip::Engine e(engine);
    return e.eval(geer, ctx);
}

inline std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

}  // namespace test_support
