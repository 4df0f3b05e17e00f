#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "stagec/diag.hpp"
#include "stagec/ope.hpp"

namespace stagec::stager {

// Closure under future context extensions: a Boxed<F> over a context of
// n entries yields an F at any target reachable by an embedding from it.
template <class F>
class Boxed {
public:
  using Run = std::function<F(const ope::Ope&)>;

  Boxed(std::size_t contextSize, Run run) : contextSize_(contextSize), run_(std::move(run)) {}

  std::size_t contextSize() const { return contextSize_; }

  F run(const ope::Ope& sigma) const {
    if (sigma.source() != contextSize_)
      throw InternalError("box used with an embedding from the wrong context");
    return run_(sigma);
  }

  F extract() const { return run(ope::Ope::id(contextSize_)); }

  Boxed<Boxed<F>> duplicate() const {
    Boxed self = *this;
    return Boxed<Boxed<F>>(contextSize_, [self](const ope::Ope& sigma) {
      return Boxed<F>(sigma.target(), [self, sigma](const ope::Ope& tau) {
        return self.run(ope::compose(sigma, tau));
      });
    });
  }

  // Transport to a wider context by precomposition.
  Boxed<F> weakened(const ope::Ope& sigma) const {
    Boxed self = *this;
    return Boxed<F>(sigma.target(), [self, sigma](const ope::Ope& tau) {
      return self.run(ope::compose(sigma, tau));
    });
  }

private:
  std::size_t contextSize_;
  Run run_;
};

template <class F>
F extract(const Boxed<F>& box) {
  return box.extract();
}

template <class F>
Boxed<Boxed<F>> duplicate(const Boxed<F>& box) {
  return box.duplicate();
}

}  // namespace stagec::stager
