#pragma once

#include <vector>

#include "bsci/labels.hpp"

namespace bsci {

// Wigner symbols are evaluated from the Racah formulas in exact rational
// arithmetic and rounded to double once. Arguments ending in _2 are twice
// the quantum number so half-integers stay integral.

double threej_2(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);
double sixj_2(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

/// 3-j symbol with (half-)integer arguments given as doubles.
double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);
/// 6-j symbol {j1 j2 j3; j4 j5 j6}.
double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6);

bool triangle(int two_a, int two_b, int two_c);

/// <l || C^k || l'> with <l m|C^k_q|l' m'> = (-1)^(l-m) (l k l'; -m q m') <l||C^k||l'>.
double reduced_ck(int l, int k, int lp);

/// Angular factor of the rank-k multipole term of 1/r12 between LS-coupled
/// pairs: <(l1 l2)L| C^k(1).C^k(2) |(l3 l4)L>. The radial factor is
/// R^k(12,34) with electron 1 in l1/l3 and electron 2 in l2/l4.
double coupling_coefficient(int l1, int l2, int l3, int l4, int L, int k);

struct SpinOrbital {
  OrbitalLabel orbital;
  int m = 0;
  int two_ms = 1;  // +1 up, -1 down

  auto operator<=>(const SpinOrbital&) const = default;
};

/// Amplitude of the normalized determinant |first second| in a CSF.
struct CsfTerm {
  SpinOrbital first;
  SpinOrbital second;
  double coefficient = 0.0;
};

/// Expands the LS-coupled two-electron function built from orbitals a, b into
/// Slater determinants. Distinct orbitals keep the ordering (a, b); for a == b
/// equivalent determinants are merged with an extra 1/sqrt(2), so the result
/// is normalized and empty when the coupling is Pauli-forbidden.
std::vector<CsfTerm> csf_expand(OrbitalLabel a, OrbitalLabel b, int L, int M_L, int S, int M_S);

}  // namespace bsci
