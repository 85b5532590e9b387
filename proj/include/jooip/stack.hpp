#pragma once

#include <cstddef>
#include <functional>

namespace jooip {

/// Runs `fn` to completion on a thread with a `bytes`-sized stack; exceptions
/// propagate to the caller. Deep demand chains recurse once per demand.
void run_on_large_stack(const std::function<void()>& fn, std::size_t bytes = std::size_t{512} << 20);

}  // namespace jooip
