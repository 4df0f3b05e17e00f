#pragma once

#include <optional>

#include "stagec/diag.hpp"
#include "stagec/term.hpp"

namespace stagec::kernel {

// Re-checks a whole tree against the claimed indices. Returns nothing when
// every node satisfies the typing rules, otherwise the first violation in
// pre-order with a dotted path to the offending node.
std::optional<Diag> validate(const TermPtr& t, Phase ph, Stage st, const TyPtr& ty,
                             const Ctx& ctx);

}  // namespace stagec::kernel
