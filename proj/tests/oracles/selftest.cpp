#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include "bsci/angular.hpp"
#include "bsci/ci.hpp"
#include "bsci/entanglement.hpp"
#include "oracles.hpp"

namespace bsci::oracle {

namespace {

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Check finish(std::string name, double worst, double tol, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.worst = worst;
  c.tolerance = tol;
  c.pass = std::isfinite(worst) && worst <= tol;
  c.detail = std::move(detail);
  return c;
}

std::shared_ptr<const BSplineBasis> basis(double r_max, int n, int order = 7, double gamma = 6.0) {
  return std::make_shared<BSplineBasis>(make_knots(r_max, n, order, {GridKind::exponential, gamma}));
}

Check hydrogenic_levels() {
  double worst = 0.0;
  std::string where;
  const double Z = 2.0;
  const auto set = build_orbitals(basis(200.0, 90), Z, 3, 10);
  for (int l = 0; l <= 3; ++l)
    for (int n = l + 1; n <= 10; ++n) {
      const double d = std::abs(set.energy({n, l}) + Z * Z / (2.0 * n * n));
      if (d > worst) {
        worst = d;
        where = to_string(OrbitalLabel{n, l});
      }
    }
  return finish("hydrogenic eps_nl vs -Z^2/2n^2 (Z=2, n<=10, l<=3)", worst, 1e-8, "worst at " + where);
}

Check monopole_integrals() {
  double worst = 0.0;
  for (double Z : {1.0, 2.0, 5.0}) {
    const auto set = build_orbitals(basis(120.0 / Z, 40), Z, 0, 2);
    const SlaterEngine eng(set);
    worst = std::max(worst, std::abs(eng.slater(0, {1, 0}, {1, 0}, {1, 0}, {1, 0}) - r0_1s1s(Z)));
    worst = std::max(worst, std::abs(eng.slater(0, {1, 0}, {2, 0}, {1, 0}, {2, 0}) - f0_1s2s(Z)));
    worst = std::max(worst, std::abs(eng.slater(0, {1, 0}, {2, 0}, {2, 0}, {1, 0}) - g0_1s2s(Z)));
  }
  return finish("R^0 vs 5Z/8, 17Z/81, 16Z/729 (Z=1,2,5)", worst, 1e-8);
}

Check wigner_symbols() {
  double worst = 0.0;
  for (int j1 = 0; j1 <= 8; ++j1)
    for (int j2 = 0; j2 <= 8; ++j2)
      for (int j3 = std::abs(j1 - j2); j3 <= std::min(j1 + j2, 8); ++j3)
        for (int m1 = -j1; m1 <= j1; ++m1)
          for (int m2 = -j2; m2 <= j2; ++m2) {
            const int m3 = -m1 - m2;
            if (std::abs(m3) > j3) continue;
            worst = std::max(worst, std::abs(threej_2(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3) -
                                             threej_gsl(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3)));
          }
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b)
      for (int c = 0; c <= 10; ++c)
        for (int d = 0; d <= 10; ++d)
          for (int e = 0; e <= 6; ++e)
            for (int f = 0; f <= 6; ++f)
              worst = std::max(worst, std::abs(sixj_2(a, b, c, d, e, f) - sixj_gsl(a, b, c, d, e, f)));
  return finish("3j/6j vs GSL (integer j<=8, doubled args<=10)", worst, 1e-12);
}

Check coupling() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int l3 = 0; l3 <= 4; ++l3)
        for (int l4 = 0; l4 <= 4; ++l4)
          for (int L = std::max(std::abs(l1 - l2), std::abs(l3 - l4)); L <= std::min(l1 + l2, l3 + l4); ++L)
            for (int k = 0; k <= 8; ++k) {
              const double lib = coupling_coefficient(l1, l2, l3, l4, L, k);
              worst = std::max(worst, std::abs(lib - coupling_bruteforce(l1, l2, l3, l4, L, k, 0)));
              if (L > 0) worst = std::max(worst, std::abs(lib - coupling_bruteforce(l1, l2, l3, l4, L, k, L)));
              ++cases;
            }
  return finish("coupling coefficient vs m-summation (l<=4, k<=8)", worst, 1e-12,
                std::to_string(cases) + " cases");
}

struct Toy {
  std::shared_ptr<const BSplineBasis> splines = basis(40.0, 20);
  RadialOrbitalSet orbitals = build_orbitals(splines, 2.0, 2, 4);
  SlaterEngine engine{orbitals};
};

std::vector<Configuration> toy_configs(int L, int l_max, int n_max) {
  std::vector<Configuration> out;
  std::vector<OrbitalLabel> orbs;
  for (int l = 0; l <= l_max; ++l)
    for (int n = l + 1; n <= n_max; ++n) orbs.push_back({n, l});
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (std::size_t j = i; j < orbs.size(); ++j)
      if (triangle(2 * orbs[i].l, 2 * orbs[j].l, 2 * L)) out.push_back({orbs[i], orbs[j]});
  return out;
}

Check toy_hamiltonian(const Toy& toy) {
  double worst = 0.0;
  const SlaterIntegralTable table(toy.engine);
  for (int S = 0; S <= 1; ++S) {
    for (int L = 0; L <= 2; ++L) {
      std::vector<Configuration> configs;
      for (const auto& c : toy_configs(L, 2, 4))
        if (!(c.equivalent() && (L + S) % 2 == 1)) configs.push_back(c);
      const Eigen::MatrixXd ref = hamiltonian_bruteforce(configs, toy.orbitals, toy.engine, L, S);
      for (std::size_t i = 0; i < configs.size(); ++i)
        for (std::size_t j = 0; j < configs.size(); ++j) {
          const double h = hamiltonian_element(configs[i], configs[j], toy.orbitals, table, L, S);
          worst = std::max(worst, std::abs(h - ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    }
    const ConfigList list = build_config_list(2, 4, 0, S);
    const Eigen::MatrixXd ref = hamiltonian_bruteforce(list.configs, toy.orbitals, toy.engine, 0, S);
    worst = std::max(worst, (assemble_hamiltonian(list, toy.orbitals, toy.engine) - ref).cwiseAbs().maxCoeff());
  }
  return finish("toy Hamiltonian vs product-basis brute force (L<=2, S=0,1)", worst, 1e-12);
}

struct ToyState {
  Eigen::VectorXd c;
  const ConfigList* configs;
};

std::vector<Check> rdm_checks(const Toy& toy) {
  std::vector<ToyState> states;
  const ConfigList singlets = build_config_list(2, 4, 0, 0);
  const ConfigList triplets = build_config_list(2, 4, 0, 1);
  std::mt19937 rng(20240611u);
  std::normal_distribution<double> gauss;
  for (const ConfigList* list : {&singlets, &triplets}) {
    for (int r = 0; r < 4; ++r) {
      Eigen::VectorXd c(static_cast<Eigen::Index>(list->size()));
      for (auto& x : c) x = gauss(rng);
      states.push_back({c.normalized(), list});
    }
    const Spectrum sp = diagonalize(assemble_hamiltonian(*list, toy.orbitals, toy.engine));
    for (int r = 0; r < 3; ++r) states.push_back({sp.vectors.col(r), list});
  }

  double worst_rdm = 0.0, worst_pair = 0.0, worst_bound = 0.0, worst_trace = 0.0;
  for (const auto& st : states) {
    const RdmSpectrum spec = rdm_spectrum(reduced_density_matrix(coefficient_blocks(st.c, *st.configs)));
    std::vector<double> expanded;
    for (const auto& e : spec.entries) expanded.insert(expanded.end(), static_cast<std::size_t>(e.degeneracy), e.lambda);
    std::sort(expanded.rbegin(), expanded.rend());
    const std::vector<double> ref = explicit_rdm_eigenvalues(st.c, *st.configs);
    if (ref.size() != expanded.size()) worst_rdm = INFINITY;
    else
      for (std::size_t i = 0; i < ref.size(); ++i) worst_rdm = std::max(worst_rdm, std::abs(ref[i] - expanded[i]));
    worst_trace = std::max(worst_trace, std::abs(spec.trace() - 1.0));
    if (st.configs->S == 1) {
      // Within each l block the nonzero occupations come in equal pairs.
      for (int l = 0; l <= 2; ++l) {
        std::vector<double> lam;
        for (const auto& e : spec.entries)
          if (e.l == l && e.lambda > 1e-10) lam.push_back(e.lambda);
        if (lam.size() % 2 != 0) worst_pair = INFINITY;
        for (std::size_t i = 0; i + 1 < lam.size(); i += 2) worst_pair = std::max(worst_pair, std::abs(lam[i] - lam[i + 1]));
      }
      worst_bound = std::max(worst_bound, 0.5 - linear_entropy(spec));
    }
  }
  return {finish("block RDM vs m-resolved RDM eigenvalues (toy states, both spins)", worst_rdm, 1e-12,
                 std::to_string(states.size()) + " states"),
          finish("triplet occupation pairing", worst_pair, 1e-12),
          finish("triplet S_L >= 0.5", std::max(0.0, worst_bound), 1e-12),
          finish("sum g lambda = 1", worst_trace, 1e-10)};
}

}  // namespace

std::vector<Check> run_selftest() {
  std::vector<Check> out;
  out.push_back(hydrogenic_levels());
  out.push_back(monopole_integrals());
  out.push_back(wigner_symbols());
  out.push_back(coupling());
  const Toy toy;
  out.push_back(toy_hamiltonian(toy));
  for (auto& c : rdm_checks(toy)) out.push_back(std::move(c));
  return out;
}

}  // namespace bsci::oracle
