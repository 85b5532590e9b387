#pragma once

#include "jooip/lucid_ast.hpp"

namespace jooip::lucid {

/// Rewrites every Indexical operator into GIPL:
///
///   first.d X     =>  X @[d:0]
///   next.d X      =>  X @[d:#.d + 1]
///   X fby.d Y     =>  if #.d <= 0 then X else Y @[d:#.d - 1]
///   X wvr.d Y     =>  X @[d:T] where T = U fby.d (U @[d:T + 1]);
///                                    U = if Y then #.d else next.d U; end
///   X upon.d Y    =>  X @[d:W] where W = 0 fby.d (if Y then W + 1 else W); end
///   X asa.d Y     =>  first.d (X wvr.d Y)
///
/// Auxiliary names are drawn from identifiers that occur nowhere in the input,
/// so they cannot capture user variables. The result is a fresh tree; the
/// input is not modified. Node ids are renumbered.
ExprPtr desugar_indexical(const ExprPtr& ast);

/// True when no Indexical node remains.
bool is_core(const ExprPtr& ast);

}  // namespace jooip::lucid
