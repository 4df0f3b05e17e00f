#pragma once

#include <string>

#include "stagec/term.hpp"

namespace stagec::kernel {

// Renders a term in the surface grammar. The output elaborates back to a
// structurally equal term when checked against prettyType(t->type());
// ascriptions are inserted exactly where bidirectional elaboration would
// otherwise be stuck (lambdas in head position, rewiring components whose
// input arity the checker cannot recover).
std::string prettyTerm(const TermPtr& t);

std::string prettyType(const TyPtr& ty);

}  // namespace stagec::kernel
