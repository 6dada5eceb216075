#include "bsci/ci.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "bsci/angular.hpp"
#include "bsci/error.hpp"

namespace bsci {

std::string to_string(const Configuration& c) { return to_string(c.first) + to_string(c.second); }

std::optional<std::size_t> ConfigList::find(const Configuration& c) const {
  const auto it = std::find(configs.begin(), configs.end(), c);
  if (it == configs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - configs.begin());
}

std::size_t config_count(int l_max, int n_max, int S) {
  std::size_t total = 0;
  for (int l = 0; l <= l_max; ++l) {
    const auto m = static_cast<std::size_t>(std::max(0, n_max - l));
    total += (S == 0) ? m * (m + 1) / 2 : (m >= 2 ? m * (m - 1) / 2 : 0);
  }
  return total;
}

ConfigList build_config_list(int l_max, int n_max, int L, int S) {
  if (L != 0)
    throw Error(ErrorKind::unsupported_symmetry, "only L = 0 configuration lists are supported");
  if (S != 0 && S != 1) throw Error(ErrorKind::invalid_parameter, "S must be 0 or 1");
  if (l_max < 0 || n_max <= l_max)
    throw Error(ErrorKind::invalid_parameter, "need 0 <= l_max < n_max");
  ConfigList list;
  list.l_max = l_max;
  list.n_max = n_max;
  list.L = L;
  list.S = S;
  list.configs.reserve(config_count(l_max, n_max, S));
  for (int l = 0; l <= l_max; ++l)
    for (int n1 = l + 1; n1 <= n_max; ++n1)
      for (int n2 = (S == 0 ? n1 : n1 + 1); n2 <= n_max; ++n2)
        list.configs.push_back({{n1, l}, {n2, l}});
  return list;
}

double hamiltonian_element(const Configuration& ci, const Configuration& cj,
                           const RadialOrbitalSet& orbitals, const SlaterIntegralTable& integrals,
                           int L, int S) {
  const OrbitalLabel a = ci.first, b = ci.second, c = cj.first, d = cj.second;
  double two_body = 0.0;
  const double exchange_phase = ((L + S + c.l + d.l) % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k <= std::min(a.l + c.l, b.l + d.l); ++k) {
    const double fd = coupling_coefficient(a.l, b.l, c.l, d.l, L, k);
    if (fd != 0.0) two_body += fd * integrals.get(k, a, b, c, d);
  }
  for (int k = 0; k <= std::min(a.l + d.l, b.l + c.l); ++k) {
    const double fx = coupling_coefficient(a.l, b.l, d.l, c.l, L, k);
    if (fx != 0.0) two_body += exchange_phase * fx * integrals.get(k, a, b, d, c);
  }
  double norm = 1.0;
  if (ci.equivalent()) norm *= 1.0 / std::sqrt(2.0);
  if (cj.equivalent()) norm *= 1.0 / std::sqrt(2.0);
  double h = norm * two_body;
  if (ci == cj) h += orbitals.energy(a) + orbitals.energy(b);
  return h;
}

namespace {

struct LBlock {
  int l = 0;
  std::vector<std::size_t> rows;        // indices into the config list
  std::vector<std::pair<int, int>> pos; // orbital positions (n1-l-1, n2-l-1)
};

std::vector<LBlock> group_by_l(const ConfigList& configs) {
  std::vector<LBlock> blocks(static_cast<std::size_t>(configs.l_max + 1));
  for (int l = 0; l <= configs.l_max; ++l) blocks[static_cast<std::size_t>(l)].l = l;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    if (c.first.l != c.second.l)
      throw Error(ErrorKind::unsupported_symmetry, "L = 0 assembly needs l1 = l2");
    auto& blk = blocks[static_cast<std::size_t>(c.first.l)];
    blk.rows.push_back(i);
    blk.pos.emplace_back(c.first.n - c.first.l - 1, c.second.n - c.second.l - 1);
  }
  return blocks;
}

// Fills H rows of block `bi` against columns of block `bj` (bi.l <= bj.l).
void fill_block(Eigen::MatrixXd& h, const LBlock& bi, const LBlock& bj, int S,
                const SlaterEngine& engine) {
  const int l1 = bi.l, l2 = bj.l;
  const auto n2 = static_cast<Eigen::Index>(engine.orbitals().of_l(l2).size());
  const double exchange_phase = (S % 2 == 0) ? 1.0 : -1.0;
  const bool diagonal = (l1 == l2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bi.rows.size()),
                                              static_cast<Eigen::Index>(bj.rows.size()));
  for (int k = std::abs(l1 - l2); k <= l1 + l2; k += 2) {
    const double f = coupling_coefficient(l1, l1, l2, l2, 0, k);
    if (f == 0.0) continue;
    const Eigen::MatrixXd t = engine.pair_table(k, l1, l2);
    for (std::size_t i = 0; i < bi.rows.size(); ++i) {
      const auto [a, b] = bi.pos[i];
      for (std::size_t j = diagonal ? i : 0; j < bj.rows.size(); ++j) {
        const auto [c, d] = bj.pos[j];
        const double direct = t(a * n2 + c, b * n2 + d);
        const double exchange = t(a * n2 + d, b * n2 + c);
        acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            f * (direct + exchange_phase * exchange);
      }
    }
  }
  const auto& orbs1 = engine.orbitals().of_l(l1);
  for (std::size_t i = 0; i < bi.rows.size(); ++i) {
    const auto [a, b] = bi.pos[i];
    const double ni = (a == b) ? inv_sqrt2 : 1.0;
    for (std::size_t j = diagonal ? i : 0; j < bj.rows.size(); ++j) {
      const auto [c, d] = bj.pos[j];
      const double nj = (c == d) ? inv_sqrt2 : 1.0;
      double v = ni * nj * acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (diagonal && i == j) v += orbs1[static_cast<std::size_t>(a)].energy +
                                   orbs1[static_cast<std::size_t>(b)].energy;
      const auto r = static_cast<Eigen::Index>(bi.rows[i]);
      const auto c2 = static_cast<Eigen::Index>(bj.rows[j]);
      h(r, c2) = v;
      h(c2, r) = v;
    }
  }
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

}  // namespace

Eigen::MatrixXd assemble_hamiltonian(const ConfigList& configs, const RadialOrbitalSet& orbitals,
                                     const SlaterEngine& engine, const AssemblyOptions& opts) {
  if (configs.L != 0)
    throw Error(ErrorKind::unsupported_symmetry, "Hamiltonian assembly supports L = 0 only");
  if (&engine.orbitals() != &orbitals)
    throw Error(ErrorKind::inconsistent_inputs, "Slater engine built for a different orbital set");
  if (configs.l_max > orbitals.l_max() || configs.n_max > orbitals.n_max())
    throw Error(ErrorKind::inconsistent_inputs, "configuration list exceeds the orbital set");

  const auto n = configs.size();
  const std::size_t required = n * n * sizeof(double);
  if (required > opts.memory_budget_bytes)
    throw Error(ErrorKind::memory_budget_exceeded,
                "Hamiltonian needs " + std::to_string(required) + " bytes, budget is " +
                    std::to_string(opts.memory_budget_bytes));

  const auto blocks = group_by_l(configs);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i; j < blocks.size(); ++j)
      if (!blocks[i].rows.empty() && !blocks[j].rows.empty()) work.emplace_back(i, j);

  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    for (const auto& [i, j] : work) fill_block(h, blocks[i], blocks[j], configs.S, engine);
    return h;
  }
  // Blocks write disjoint regions of h.
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t w = static_cast<std::size_t>(t); w < work.size();
           w += static_cast<std::size_t>(threads)) {
        try {
          fill_block(h, blocks[work[w].first], blocks[work[w].second], configs.S, engine);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return h;
}

Spectrum diagonalize(const Eigen::MatrixXd& H) {
  const auto n = static_cast<lapack_int>(H.rows());
  if (H.cols() != H.rows()) throw Error(ErrorKind::invalid_parameter, "matrix must be square");
  Spectrum out;
  out.vectors = H;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n,
                                         out.values.data());
  if (info != 0)
    throw Error(ErrorKind::convergence_failure, "dsyevd failed, info=" + std::to_string(info));
  fix_signs(out.vectors);
  return out;
}

Spectrum diagonalize_lowest(const Eigen::MatrixXd& H, int count) {
  const auto n = static_cast<lapack_int>(H.rows());
  if (H.cols() != H.rows()) throw Error(ErrorKind::invalid_parameter, "matrix must be square");
  const lapack_int m_req = std::clamp<lapack_int>(count, 0, n);
  Spectrum out;
  if (m_req == 0) return out;
  Eigen::MatrixXd a = H;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, m_req);
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * m_req));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0,
                                         1, m_req, 0.0, &found, w.data(), z.data(), n,
                                         support.data());
  if (info != 0 || found != m_req)
    throw Error(ErrorKind::convergence_failure, "dsyevr failed, info=" + std::to_string(info));
  out.values = w.head(m_req);
  out.vectors = std::move(z);
  fix_signs(out.vectors);
  return out;
}

std::string state_label(TargetState t, int S) {
  const char* mult = (S == 0) ? " 1S" : " 3S";
  switch (t) {
    case TargetState::ground_1s2: return std::string("1s2") + mult;
    case TargetState::s1s2s: return std::string("1s2s") + mult;
    case TargetState::s1s3s: return std::string("1s3s") + mult;
  }
  return "?";
}

TargetState parse_target(const std::string& name) {
  if (name == "1s2" || name == "1s^2" || name == "1s1s" || name == "ground") return TargetState::ground_1s2;
  if (name == "1s2s") return TargetState::s1s2s;
  if (name == "1s3s") return TargetState::s1s3s;
  throw Error(ErrorKind::invalid_parameter, "unknown target state '" + name + "'");
}

Configuration target_configuration(TargetState t) {
  switch (t) {
    case TargetState::ground_1s2: return {{1, 0}, {1, 0}};
    case TargetState::s1s2s: return {{1, 0}, {2, 0}};
    case TargetState::s1s3s: return {{1, 0}, {3, 0}};
  }
  return {};
}

CIState select_state(const Spectrum& spectrum, const ConfigList& configs, TargetState target,
                     SelectionRule rule) {
  const auto roots = static_cast<int>(spectrum.values.size());
  if (spectrum.vectors.rows() != static_cast<Eigen::Index>(configs.size()))
    throw Error(ErrorKind::inconsistent_inputs, "spectrum does not match configuration list");
  if (target == TargetState::ground_1s2 && configs.S != 0)
    throw Error(ErrorKind::invalid_parameter, "1s^2 has no triplet");

  const auto target_index = configs.find(target_configuration(target));
  auto weight_of = [&](int root) {
    return target_index ? std::pow(spectrum.vectors(static_cast<Eigen::Index>(*target_index), root), 2)
                        : 0.0;
  };

  int root = 0;
  if (rule == SelectionRule::energy_rank) {
    // Singlets: 1s^2, 1s2s, 1s3s; triplets: 1s2s, 1s3s.
    root = static_cast<int>(target) - (configs.S == 0 ? 0 : 1);
  } else {
    double best = -1.0;
    for (int r = 0; r < roots; ++r) {
      if (const double w = weight_of(r); w > best) {
        best = w;
        root = r;
      }
    }
  }
  if (root >= roots)
    throw Error(ErrorKind::invalid_parameter,
                "spectrum has " + std::to_string(roots) + " roots, need root " + std::to_string(root));

  CIState st;
  st.root = root;
  st.energy = spectrum.values(root);
  st.coefficients = spectrum.vectors.col(root);
  st.label = state_label(target, configs.S);
  st.target_weight = weight_of(root);
  Eigen::Index imax = 0;
  st.dominant_weight = st.coefficients.cwiseAbs2().maxCoeff(&imax);
  st.dominant = configs[static_cast<std::size_t>(imax)];
  st.ambiguous = st.target_weight < 0.5;
  return st;
}

}  // namespace bsci
