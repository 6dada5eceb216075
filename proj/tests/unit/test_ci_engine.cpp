#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "bsci/ci.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bsci;
using bsci::test::thrown_kind;

namespace {

std::shared_ptr<const BSplineBasis> basis(double R, int n) {
  return std::make_shared<BSplineBasis>(make_knots(R, n, 7));
}

struct Helium {
  RadialOrbitalSet orbitals = build_orbitals(basis(60.0, 27), 2.0, 3, 25);
  SlaterEngine engine{orbitals};
};

const Helium& helium() {
  static const Helium he;
  return he;
}

}  // namespace

TEST_CASE("configuration counts") {
  CHECK(build_config_list(6, 40, 0, 0).size() == 4935);
  CHECK(build_config_list(6, 40, 0, 1).size() == 4676);
  CHECK(config_count(6, 40, 0) == 4935);
  CHECK(config_count(6, 40, 1) == 4676);
  for (int l = 0; l <= 4; ++l)
    for (int n = l + 1; n <= 12; ++n)
      for (int S = 0; S <= 1; ++S) CHECK(build_config_list(l, n, 0, S).size() == config_count(l, n, S));
  const auto t = build_config_list(0, 2, 0, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == Configuration{{1, 0}, {2, 0}});
  CHECK(to_string(t[0]) == "1s2s");
  CHECK(build_config_list(0, 2, 0, 0).size() == 3);
  CHECK(t.find(Configuration{{1, 0}, {2, 0}}) == std::size_t{0});
  CHECK(!t.find(Configuration{{1, 0}, {1, 0}}));
  CHECK(thrown_kind([] { build_config_list(2, 5, 1, 0); }) == ErrorKind::unsupported_symmetry);
  CHECK(thrown_kind([] { build_config_list(5, 5, 0, 0); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("hydrogenic Slater integrals") {
  for (double Z : {1.0, 2.0, 5.0}) {
    const auto set = build_orbitals(basis(120.0 / Z, 40), Z, 0, 2);
    const SlaterEngine eng(set);
    CHECK(std::abs(eng.slater(0, {1, 0}, {1, 0}, {1, 0}, {1, 0}) - oracle::r0_1s1s(Z)) < 1e-8);
    CHECK(std::abs(eng.slater(0, {1, 0}, {2, 0}, {1, 0}, {2, 0}) - oracle::f0_1s2s(Z)) < 1e-8);
    CHECK(std::abs(eng.slater(0, {1, 0}, {2, 0}, {2, 0}, {1, 0}) - oracle::g0_1s2s(Z)) < 1e-8);
  }
}

TEST_CASE("Slater integral symmetries and cache") {
  const auto& he = helium();
  const OrbitalLabel a{2, 1}, b{3, 0}, c{4, 1}, d{2, 0};
  const double v = he.engine.slater(1, a, b, c, d);
  CHECK(v != 0.0);
  for (double w : {he.engine.slater(1, c, b, a, d), he.engine.slater(1, a, d, c, b), he.engine.slater(1, b, a, d, c),
                   he.engine.slater(1, d, c, b, a)})
    CHECK(w == doctest::Approx(v).epsilon(1e-12));
  const SlaterIntegralTable table(he.engine);
  CHECK(SlaterIntegralTable::canonical_key(1, a, b, c, d) == SlaterIntegralTable::canonical_key(1, d, c, b, a));
  CHECK(table.get(1, a, b, c, d) == doctest::Approx(v).epsilon(1e-12));
  CHECK(table.get(1, b, a, d, c) == table.get(1, a, b, c, d));
  CHECK(table.size() == 1);
}

TEST_CASE("Hamiltonian elements") {
  const auto& he = helium();
  const SlaterIntegralTable table(he.engine);
  const Configuration s2{{1, 0}, {1, 0}};
  const double h = hamiltonian_element(s2, s2, he.orbitals, table, 0, 0);
  CHECK(h == doctest::Approx(2 * he.orbitals.energy({1, 0}) + he.engine.slater(0, {1, 0}, {1, 0}, {1, 0}, {1, 0})).epsilon(1e-14));
  CHECK(std::abs(h + 2.75) < 1e-8);

  // toy set l_max = 1, n_max = 3 against the product-basis oracle, both spins
  const auto toy = build_orbitals(basis(40.0, 20), 2.0, 1, 3);
  const SlaterEngine eng(toy);
  const SlaterIntegralTable tt(eng);
  for (int S = 0; S <= 1; ++S) {
    const ConfigList list = build_config_list(1, 3, 0, S);
    const Eigen::MatrixXd ref = oracle::hamiltonian_bruteforce(list.configs, toy, eng, 0, S);
    const Eigen::MatrixXd H = assemble_hamiltonian(list, toy, eng);
    CHECK((H - ref).cwiseAbs().maxCoeff() < 1e-12);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = 0; j < list.size(); ++j)
        CHECK(std::abs(hamiltonian_element(list[i], list[j], toy, tt, 0, S) -
                       ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) < 1e-12);
  }
}

TEST_CASE("assembly") {
  const auto& he = helium();
  const ConfigList one = build_config_list(0, 2, 0, 1);
  CHECK(assemble_hamiltonian(one, he.orbitals, he.engine).rows() == 1);

  const ConfigList list = build_config_list(3, 12, 0, 0);
  const Eigen::MatrixXd H1 = assemble_hamiltonian(list, he.orbitals, he.engine, {.threads = 1});
  const Eigen::MatrixXd H4 = assemble_hamiltonian(list, he.orbitals, he.engine, {.threads = 4});
  CHECK(H1.rows() == static_cast<Eigen::Index>(list.size()));
  CHECK((H1 - H1.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((H1 - H4).cwiseAbs().maxCoeff() == 0.0);
  // s^2 and p^2 blocks talk through k = 1
  const auto s = *list.find({{1, 0}, {1, 0}});
  const auto p = *list.find({{2, 1}, {2, 1}});
  CHECK(H1(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p)) != 0.0);

  CHECK(thrown_kind([&] { assemble_hamiltonian(list, he.orbitals, he.engine, {.threads = 1, .memory_budget_bytes = 1000}); }) ==
        ErrorKind::memory_budget_exceeded);
  CHECK(thrown_kind([&] { assemble_hamiltonian(build_config_list(4, 12, 0, 0), he.orbitals, he.engine); }) ==
        ErrorKind::inconsistent_inputs);
}

TEST_CASE("diagonalization") {
  const auto& he = helium();
  const Eigen::MatrixXd H = assemble_hamiltonian(build_config_list(2, 10, 0, 0), he.orbitals, he.engine);
  const Spectrum sp = diagonalize(H);
  const double hn = H.norm();
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    if (i > 0) CHECK(sp.values(i) >= sp.values(i - 1));
    CHECK((H * sp.vectors.col(i) - sp.values(i) * sp.vectors.col(i)).norm() <= 1e-10 * hn);
    Eigen::Index at = 0;
    sp.vectors.col(i).cwiseAbs().maxCoeff(&at);
    CHECK(sp.vectors(at, i) > 0.0);
  }
  CHECK(std::abs(sp.values.sum() - H.trace()) <= 1e-8 * std::abs(H.trace()));
  const Spectrum low = diagonalize_lowest(H, 4);
  REQUIRE(low.values.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(low.values(i) == doctest::Approx(sp.values(i)).epsilon(1e-12));
    CHECK(std::abs(low.vectors.col(i).dot(sp.vectors.col(i))) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(thrown_kind([] { diagonalize(Eigen::MatrixXd::Zero(2, 3)); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("helium state selection") {
  const auto& he = helium();
  const ConfigList singlets = build_config_list(3, 25, 0, 0);
  const ConfigList triplets = build_config_list(3, 25, 0, 1);
  const Spectrum s = diagonalize_lowest(assemble_hamiltonian(singlets, he.orbitals, he.engine), 4);
  const Spectrum t = diagonalize_lowest(assemble_hamiltonian(triplets, he.orbitals, he.engine), 4);

  const CIState g = select_state(s, singlets, TargetState::ground_1s2);
  CHECK(g.root == 0);
  CHECK(g.energy == doctest::Approx(-2.9036).epsilon(1e-3 / 2.9));
  CHECK(g.label == "1s2 1S");
  CHECK(g.target_weight > 0.9);
  CHECK(!g.ambiguous);

  const CIState e = select_state(s, singlets, TargetState::s1s2s);
  CHECK(e.root == 1);
  CHECK(e.energy == doctest::Approx(-2.1460).epsilon(1e-3 / 2.1));
  const CIState eo = select_state(s, singlets, TargetState::s1s2s, SelectionRule::max_overlap);
  CHECK(eo.root == 1);
  CHECK(eo.target_weight >= 0.5);

  const CIState tr = select_state(t, triplets, TargetState::s1s2s);
  CHECK(tr.root == 0);
  CHECK(tr.energy == doctest::Approx(-2.1752).epsilon(1e-3 / 2.1));
  CHECK(tr.dominant == Configuration{{1, 0}, {2, 0}});
  CHECK(thrown_kind([&] { select_state(t, triplets, TargetState::ground_1s2); }) == ErrorKind::invalid_parameter);
  CHECK(thrown_kind([&] { select_state(t, singlets, TargetState::s1s2s); }) == ErrorKind::inconsistent_inputs);

  CHECK(parse_target("1s2s") == TargetState::s1s2s);
  CHECK(state_label(TargetState::s1s3s, 1) == "1s3s 3S");
  CHECK(thrown_kind([] { parse_target("2p2"); }) == ErrorKind::invalid_parameter);
}
