#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jooip {

struct SourceLoc {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Raised for anything that must stop a program before it runs: lexing,
/// parsing, scope checking. Exit code 2 at the CLI.
class CompileError : public std::runtime_error {
public:
    CompileError(const std::string& message, SourceLoc loc = {}, std::string file = {});

    const std::string& message() const { return message_; }
    SourceLoc loc() const { return loc_; }
    const std::string& file() const { return file_; }

    /// Re-anchors an error raised inside an embedded segment to the host file.
    CompileError relocated(SourceLoc origin, const std::string& file) const;

private:
    std::string message_;
    SourceLoc loc_;
    std::string file_;
};

/// Raised while evaluating, on either the Lucid or the host side. Carries the
/// chain of outstanding demands (innermost last) when the error crossed the
/// engine. Exit code 3 at the CLI.
class RuntimeError : public std::runtime_error {
public:
    explicit RuntimeError(const std::string& message);

    const std::string& message() const { return message_; }
    const std::vector<std::string>& backtrace() const { return backtrace_; }
    void push_frame(std::string frame) { backtrace_.push_back(std::move(frame)); }

    std::string describe() const;

private:
    std::string message_;
    std::vector<std::string> backtrace_;
};

/// Violations of internal invariants (unknown node ids and the like).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace jooip
