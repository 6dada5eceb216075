#include "bsci/angular.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "bsci/error.hpp"

namespace bsci {

namespace mp = boost::multiprecision;

namespace {

constexpr int kMaxFactorial = 400;

const std::vector<mp::cpp_int>& factorial_table() {
  static const std::vector<mp::cpp_int> table = [] {
    std::vector<mp::cpp_int> f(kMaxFactorial + 1);
    f[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

const mp::cpp_int& fact(int n) {
  if (n < 0 || n > kMaxFactorial)
    throw Error(ErrorKind::invalid_quantum_numbers,
                "factorial argument out of range: " + std::to_string(n));
  return factorial_table()[static_cast<std::size_t>(n)];
}

// Triangle coefficient Delta(abc) for doubled arguments, as a rational.
mp::cpp_rational delta(int a2, int b2, int c2) {
  return mp::cpp_rational(fact((a2 + b2 - c2) / 2) * fact((a2 - b2 + c2) / 2) *
                              fact((-a2 + b2 + c2) / 2),
                          fact((a2 + b2 + c2) / 2 + 1));
}

// sign * sqrt(radicand) * sum, rounded once.
double signed_root(const mp::cpp_rational& radicand, const mp::cpp_rational& sum) {
  if (sum == 0) return 0.0;
  const mp::cpp_rational sq = radicand * sum * sum;
  const double mag = std::sqrt(static_cast<double>(sq));
  return sum < 0 ? -mag : mag;
}

bool is_integral(double x2) { return std::abs(x2 - std::round(x2)) < 1e-9; }

int twice(double x) {
  const double x2 = 2.0 * x;
  if (!is_integral(x2))
    throw Error(ErrorKind::invalid_quantum_numbers, "quantum number must be a half-integer");
  return static_cast<int>(std::lround(x2));
}

}  // namespace

bool triangle(int two_a, int two_b, int two_c) {
  if (two_a < 0 || two_b < 0 || two_c < 0) return false;
  if ((two_a + two_b + two_c) % 2 != 0) return false;
  return two_c <= two_a + two_b && two_c >= std::abs(two_a - two_b);
}

double threej_2(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3) {
  const int js[3] = {two_j1, two_j2, two_j3};
  const int ms[3] = {two_m1, two_m2, two_m3};
  for (int i = 0; i < 3; ++i) {
    if (js[i] < 0 || std::abs(ms[i]) > js[i] || (js[i] + ms[i]) % 2 != 0)
      throw Error(ErrorKind::invalid_quantum_numbers, "inconsistent j/m in 3-j symbol");
  }
  if (two_m1 + two_m2 + two_m3 != 0) return 0.0;
  if (!triangle(two_j1, two_j2, two_j3)) return 0.0;

  const int j1pm1 = (two_j1 + two_m1) / 2, j1mm1 = (two_j1 - two_m1) / 2;
  const int j2pm2 = (two_j2 + two_m2) / 2, j2mm2 = (two_j2 - two_m2) / 2;
  const int j3pm3 = (two_j3 + two_m3) / 2, j3mm3 = (two_j3 - two_m3) / 2;

  // Summation limits from non-negative factorial arguments.
  const int a1 = (two_j3 - two_j2 + two_m1) / 2;   // t + a1 >= 0
  const int a2 = (two_j3 - two_j1 - two_m2) / 2;   // t + a2 >= 0
  const int b1 = (two_j1 + two_j2 - two_j3) / 2;   // b1 - t >= 0
  const int b2 = j1mm1;                             // b2 - t >= 0
  const int b3 = j2pm2;                             // b3 - t >= 0
  const int t_min = std::max({0, -a1, -a2});
  const int t_max = std::min({b1, b2, b3});

  mp::cpp_rational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    const mp::cpp_int den =
        fact(t) * fact(t + a1) * fact(t + a2) * fact(b1 - t) * fact(b2 - t) * fact(b3 - t);
    const mp::cpp_rational term(1, den);
    sum += (t % 2 == 0) ? term : mp::cpp_rational(-term);
  }
  const int phase_exp = (two_j1 - two_j2 - two_m3) / 2;
  if (phase_exp % 2 != 0) sum = -sum;

  const mp::cpp_rational radicand =
      delta(two_j1, two_j2, two_j3) *
      mp::cpp_rational(fact(j1pm1) * fact(j1mm1) * fact(j2pm2) * fact(j2mm2) * fact(j3pm3) *
                       fact(j3mm3));
  return signed_root(radicand, sum);
}

double sixj_2(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6) {
  for (int j : {two_j1, two_j2, two_j3, two_j4, two_j5, two_j6})
    if (j < 0) throw Error(ErrorKind::invalid_quantum_numbers, "negative j in 6-j symbol");
  if (!triangle(two_j1, two_j2, two_j3) || !triangle(two_j1, two_j5, two_j6) ||
      !triangle(two_j4, two_j2, two_j6) || !triangle(two_j4, two_j5, two_j3))
    return 0.0;

  const int a1 = (two_j1 + two_j2 + two_j3) / 2;
  const int a2 = (two_j1 + two_j5 + two_j6) / 2;
  const int a3 = (two_j4 + two_j2 + two_j6) / 2;
  const int a4 = (two_j4 + two_j5 + two_j3) / 2;
  const int b1 = (two_j1 + two_j2 + two_j4 + two_j5) / 2;
  const int b2 = (two_j2 + two_j3 + two_j5 + two_j6) / 2;
  const int b3 = (two_j3 + two_j1 + two_j6 + two_j4) / 2;
  const int t_min = std::max({a1, a2, a3, a4});
  const int t_max = std::min({b1, b2, b3});

  mp::cpp_rational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    const mp::cpp_int den = fact(t - a1) * fact(t - a2) * fact(t - a3) * fact(t - a4) *
                            fact(b1 - t) * fact(b2 - t) * fact(b3 - t);
    const mp::cpp_rational term(fact(t + 1), den);
    sum += (t % 2 == 0) ? term : mp::cpp_rational(-term);
  }
  const mp::cpp_rational radicand =
      delta(two_j1, two_j2, two_j3) * delta(two_j1, two_j5, two_j6) *
      delta(two_j4, two_j2, two_j6) * delta(two_j4, two_j5, two_j3);
  return signed_root(radicand, sum);
}

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  return threej_2(twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3));
}

double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6) {
  return sixj_2(twice(j1), twice(j2), twice(j3), twice(j4), twice(j5), twice(j6));
}

double reduced_ck(int l, int k, int lp) {
  if ((l + k + lp) % 2 != 0) return 0.0;
  const double phase = (l % 2 == 0) ? 1.0 : -1.0;
  return phase * std::sqrt(static_cast<double>((2 * l + 1) * (2 * lp + 1))) *
         threej_2(2 * l, 2 * k, 2 * lp, 0, 0, 0);
}

double coupling_coefficient(int l1, int l2, int l3, int l4, int L, int k) {
  if (l1 < 0 || l2 < 0 || l3 < 0 || l4 < 0 || L < 0 || k < 0)
    throw Error(ErrorKind::invalid_coupling, "negative angular momentum");
  if (!triangle(2 * l1, 2 * l2, 2 * L) || !triangle(2 * l3, 2 * l4, 2 * L))
    throw Error(ErrorKind::invalid_coupling, "orbital pair cannot couple to the requested L");
  const double c13 = reduced_ck(l1, k, l3);
  const double c24 = reduced_ck(l2, k, l4);
  if (c13 == 0.0 || c24 == 0.0) return 0.0;
  const double phase = ((l2 + l3 + L) % 2 == 0) ? 1.0 : -1.0;
  return phase * sixj_2(2 * l1, 2 * l2, 2 * L, 2 * l4, 2 * l3, 2 * k) * c13 * c24;
}

std::vector<CsfTerm> csf_expand(OrbitalLabel a, OrbitalLabel b, int L, int M_L, int S, int M_S) {
  if (a.l < 0 || b.l < 0 || a.n <= a.l || b.n <= b.l)
    throw Error(ErrorKind::invalid_coupling, "invalid orbital label");
  if (!triangle(2 * a.l, 2 * b.l, 2 * L) || std::abs(M_L) > L || (S != 0 && S != 1) ||
      std::abs(M_S) > S)
    throw Error(ErrorKind::invalid_coupling, "invalid (L, M_L, S, M_S) for this pair");

  const double prefactor = (((b.l - a.l) % 2 == 0) ? 1.0 : -1.0) *
                           std::sqrt(static_cast<double>((2 * S + 1) * (2 * L + 1)));
  std::vector<CsfTerm> terms;
  for (int m = -a.l; m <= a.l; ++m) {
    const int mp_ = M_L - m;
    if (std::abs(mp_) > b.l) continue;
    const double orb = threej_2(2 * a.l, 2 * b.l, 2 * L, 2 * m, 2 * mp_, -2 * M_L);
    if (orb == 0.0) continue;
    for (int two_ms : {1, -1}) {
      const int two_msp = 2 * M_S - two_ms;
      if (std::abs(two_msp) != 1) continue;
      const double spin = threej_2(1, 1, 2 * S, two_ms, two_msp, -2 * M_S);
      if (spin == 0.0) continue;
      terms.push_back({{a, m, two_ms}, {b, mp_, two_msp}, prefactor * orb * spin});
    }
  }
  if (a != b) return terms;

  // Equivalent orbitals: |x y| = -|y x|, |x x| = 0.
  std::map<std::pair<SpinOrbital, SpinOrbital>, double> merged;
  for (const auto& t : terms) {
    if (t.first == t.second) continue;
    if (t.first < t.second)
      merged[{t.first, t.second}] += t.coefficient;
    else
      merged[{t.second, t.first}] -= t.coefficient;
  }
  std::vector<CsfTerm> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const auto& [key, c] : merged) {
    if (std::abs(c) < 1e-14) continue;
    out.push_back({key.first, key.second, c * inv_sqrt2});
  }
  return out;
}

}  // namespace bsci
