#pragma once

#include <optional>

#include "bsci/error.hpp"

namespace bsci::test {

// Kind of the bsci::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace bsci::test
