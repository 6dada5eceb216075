#include "bsci/labels.hpp"

namespace bsci {

char l_symbol(int l) {
  // Spectroscopic letters; 'j' is skipped by convention.
  static constexpr char kLetters[] = "spdfghiklmnoqrtuvwxyz";
  if (l < 0 || l >= static_cast<int>(sizeof(kLetters)) - 1) return '?';
  return kLetters[l];
}

std::string to_string(OrbitalLabel o) { return std::to_string(o.n) + l_symbol(o.l); }

}  // namespace bsci
