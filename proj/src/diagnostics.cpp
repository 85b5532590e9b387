#include "jooip/diagnostics.hpp"

#include <sstream>

namespace jooip {

namespace {

std::string format_compile(const std::string& message, SourceLoc loc, const std::string& file)
{
    std::ostringstream out;
    out << (file.empty() ? "<input>" : file) << ':' << loc.line << ':' << loc.column << ": " << message;
    return out.str();
}

}  // namespace

CompileError::CompileError(const std::string& message, SourceLoc loc, std::string file)
    : std::runtime_error(format_compile(message, loc, file)), message_(message), loc_(loc), file_(std::move(file))
{
}

CompileError CompileError::relocated(SourceLoc origin, const std::string& file) const
{
    SourceLoc at = loc_;
    if (at.line == 1) {
        at.column += origin.column - 1;
    }
    at.line += origin.line - 1;
    return CompileError(message_, at, file);
}

RuntimeError::RuntimeError(const std::string& message) : std::runtime_error(message), message_(message) {}

std::string RuntimeError::describe() const
{
    std::ostringstream out;
    out << "runtime error: " << message_;
    for (auto it = backtrace_.rbegin(); it != backtrace_.rend(); ++it) {
        out << "\n  in " << *it;
    }
    return out.str();
}

}  // namespace jooip
