#pragma once

// Hybrid unit -> pure host unit. Segments become engine calls through the
// runtime intrinsics `__compile`, `__Engine.eval`, `__convert` and
// `__convert_as`; intensional members become plain members guarded by a
// written flag.

#include "jooip/program.hpp"

#include <string>

namespace jooip {

/// The five output buffers, in assembly order.
struct EmitBuffers {
    std::string header;
    std::string identifiers;
    std::string statics;
    std::string methods;
    std::string body;

    std::string assemble() const { return header + identifiers + statics + methods + body + "}\n"; }
};

/// Per-segment generated names.
struct LucidExprBinding {
    std::size_t index = 0;
    std::string program_slot;    // __geer_<i>
    std::string engine_handle;   // __engine_<i>
    std::string source;
    std::vector<std::string> captures;   // method locals passed to eval
};

LucidExprBinding binding_for(const SegmentInfo& segment);

/// Pure host source for `program`. Throws CompileError when a generated name
/// collides with a user identifier.
std::string translate(const Program& program);

/// `dir/name.hyb` -> `dir/name.pure.hyb`.
std::string translated_path(const std::string& input);

}  // namespace jooip
