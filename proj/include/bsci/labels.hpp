#pragma once

#include <compare>
#include <string>

namespace bsci {

/// Radial orbital label (n, l); hydrogenic convention n >= l + 1.
struct OrbitalLabel {
  int n = 1;
  int l = 0;

  auto operator<=>(const OrbitalLabel&) const = default;
};

/// "1s", "3d", "12k"...
std::string to_string(OrbitalLabel o);

/// Letter for orbital angular momentum l (s, p, d, f, g, h, i, k, ...).
char l_symbol(int l);

}  // namespace bsci
