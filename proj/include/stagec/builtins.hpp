#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stagec/term.hpp"

namespace stagec::kernel {

// n nested succ around zero at the requested indices.
TermPtr numeral(std::uint64_t n, Phase ph, Stage st);

// \x. g (f x) — both functions weakened under the fresh binder.
TermPtr compose(const TermPtr& g, const TermPtr& f);

// Library of closed example terms. Throws Error(UnknownBuiltin) for names
// outside the catalogue.
TermPtr builtin(std::string_view name);

// Catalogue in a stable listing order.
const std::vector<std::string>& builtinNames();

}  // namespace stagec::kernel
