// Command-line driver: run, translate, eval and check.

#include "jooip/engine.hpp"
#include "jooip/interpreter.hpp"
#include "jooip/lucid_parser.hpp"
#include "jooip/program.hpp"
#include "jooip/stack.hpp"
#include "jooip/translator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kCompile = 2, kRuntime = 3 };

struct EngineFlags {
    bool trace = false;
    bool stats = false;
    bool no_warehouse = false;

    void attach(CLI::App* cmd)
    {
        cmd->add_flag("--trace-demands", trace, "Print one DEMAND line per engine demand to stderr");
        cmd->add_flag("--warehouse-stats", stats, "Print warehouse hit/miss counts to stderr");
        cmd->add_flag("--no-warehouse", no_warehouse, "Disable the value warehouse");
    }

    jooip::EngineOptions options() const
    {
        jooip::EngineOptions o;
        o.warehouse = !no_warehouse;
        o.trace = trace ? &std::cerr : nullptr;
        return o;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Maps the library's error types onto the documented exit codes.
int guarded(const std::function<void()>& body)
{
    int code = kOk;
    try {
        jooip::run_on_large_stack(body);
    } catch (const jooip::CompileError& e) {
        std::cerr << e.what() << '\n';
        code = kCompile;
    } catch (const jooip::RuntimeError& e) {
        std::cout.flush();
        std::cerr << e.describe() << '\n';
        code = kRuntime;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = kUsage;
    } catch (const std::exception& e) {
        std::cout.flush();
        std::cerr << "internal error: " << e.what() << '\n';
        code = kRuntime;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hybrid object-oriented / intensional language toolchain"};
    app.require_subcommand(1);

    std::string run_file;
    EngineFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "Compile and interpret a .hyb file");
    run->add_option("file", run_file, "Input file")->required();
    run_flags.attach(run);

    std::string tr_file, tr_out;
    CLI::App* translate = app.add_subcommand("translate", "Translate a .hyb file into a segment-free unit");
    translate->add_option("file", tr_file, "Input file")->required();
    translate->add_option("-o", tr_out, "Output path (default <name>.pure.hyb)");

    std::string expr, dialect = "GIPL", ctx_text;
    EngineFlags eval_flags;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a standalone Lucid expression");
    eval->add_option("-e", expr, "Expression")->required();
    eval->add_option("--dialect", dialect, "Dialect tag")->capture_default_str();
    eval->add_option("--ctx", ctx_text, "Evaluation context, e.g. \"d:3, t:0\"");
    eval_flags.attach(eval);

    std::string check_file;
    CLI::App* check = app.add_subcommand("check", "Compile a .hyb file and dump its dictionaries");
    check->add_option("file", check_file, "Input file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return guarded([&] {
            auto program = jooip::compile_program(read_file(run_file), run_file);
            for (const auto& w : program->warnings) {
                std::cerr << w << '\n';
            }
            jooip::RunOptions opts;
            opts.engine = run_flags.options();
            jooip::Interpreter interp(*program, opts);
            try {
                interp.run();
            } catch (...) {
                if (run_flags.stats) {
                    std::cerr << interp.engine().stats().to_string() << '\n';
                }
                throw;
            }
            std::cout.flush();
            if (run_flags.stats) {
                std::cerr << interp.engine().stats().to_string() << '\n';
            }
        });
    }

    if (translate->parsed()) {
        return guarded([&] {
            auto program = jooip::compile_program(read_file(tr_file), tr_file);
            std::string text = jooip::translate(*program);
            std::string out_path = tr_out.empty() ? jooip::translated_path(tr_file) : tr_out;
            std::ofstream out(out_path, std::ios::binary);
            if (!out || !(out << text)) {
                throw std::ios_base::failure("cannot write " + out_path);
            }
        });
    }

    if (eval->parsed()) {
        return guarded([&] {
            jooip::Context ctx = ctx_text.empty() ? jooip::Context{} : jooip::parse_context_literal(ctx_text);
            auto parsed = jooip::lucid::parse_segment(dialect, expr);
            for (const auto& w : parsed.warnings) {
                std::cerr << "warning: " << w << '\n';
            }
            jooip::CompileOptions copts;
            copts.source = expr;
            copts.dot_notation = parsed.dot_notation;
            copts.label = "eval";
            for (const auto& [dim, tag] : ctx.bindings()) {
                copts.ambient_dimensions.push_back(dim);
            }
            jooip::Geer geer = jooip::compile(parsed.ast, {}, copts);
            jooip::Engine engine(eval_flags.options());
            jooip::Value v = engine.eval(geer, ctx);
            std::cout << v.to_string() << '\n';
            if (eval_flags.stats) {
                std::cerr << engine.stats().to_string() << '\n';
            }
        });
    }

    if (check->parsed()) {
        return guarded([&] {
            auto program = jooip::compile_program(read_file(check_file), check_file);
            for (const auto& w : program->warnings) {
                std::cerr << w << '\n';
            }
            for (const auto& seg : program->segments) {
                std::cout << "segment " << seg.index << " (" << seg.tag << ")";
                if (!seg.class_name.empty()) {
                    std::cout << " in " << seg.class_name;
                }
                if (!seg.member.empty()) {
                    std::cout << " member " << seg.member;
                }
                std::cout << '\n';
                for (const auto& line : seg.geer->dictionary.dump()) {
                    std::cout << "  " << line << '\n';
                }
            }
            std::cout << "segments: " << program->segments.size() << '\n';
        });
    }
    return kUsage;
}
