#include "thermops/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thermops {

namespace {

std::vector<double> total_energies(const std::vector<double>& es,
                                   const std::vector<double>& eb) {
  std::vector<double> t;
  t.reserve(es.size() * eb.size());
  for (double a : es)
    for (double b : eb) t.push_back(a + b);
  return t;
}

void require_unitary(const CMat& u, double tol, const char* who) {
  const double res =
      (u * u.adjoint() - CMat::Identity(u.rows(), u.cols())).norm();
  if (u.rows() != u.cols() || res > tol)
    throw std::invalid_argument(std::string(who) + ": matrix not unitary " +
                                "(residual " + std::to_string(res) + ")");
}

// Permutation sorting `vals` ascending (stable); perm[new] = old.
std::vector<Eigen::Index> sort_permutation(const std::vector<double>& vals) {
  std::vector<Eigen::Index> perm(vals.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) {
    return vals[a] < vals[b];
  });
  return perm;
}

// Conjugates U by 1_n (x) P where P e_{new} = e_{old} per the permutation.
CMat sort_bath_basis(const CMat& u, Eigen::Index n,
                     const std::vector<Eigen::Index>& perm) {
  const auto m = static_cast<Eigen::Index>(perm.size());
  CMat out(u.rows(), u.cols());
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const Eigen::Index rs = r / m, rb = r % m;
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const Eigen::Index cs = c / m, cb = c % m;
      out(r, c) = u(rs * m + perm[rb], cs * m + perm[cb]);
    }
  }
  return out;
}

}  // namespace

Eigen::Index ThermalOpSpec::system_dim() const {
  return static_cast<Eigen::Index>(system.dim());
}

Eigen::Index ThermalOpSpec::bath_dim() const {
  return static_cast<Eigen::Index>(bath.dim());
}

EnergyResidual energy_residual(const CMat& u, const DiagonalHamiltonian& hs,
                               const DiagonalHamiltonian& hb, double epsilon) {
  const auto es = hs.expand();
  const auto eb = hb.expand();
  const auto t = total_energies(es, eb);
  const auto dim = static_cast<Eigen::Index>(t.size());
  if (u.rows() != dim || u.cols() != dim)
    throw std::invalid_argument("energy_residual: dimension mismatch");
  CMat delta(dim, dim);
  // U H U* - H = U H U* - H with H diagonal; conjugate then subtract.
  CMat uh = u;
  for (Eigen::Index c = 0; c < dim; ++c) uh.col(c) *= t[c];
  delta = uh * u.adjoint();
  for (Eigen::Index i = 0; i < dim; ++i) delta(i, i) -= t[i];
  EnergyResidual res;
  res.exact = operator_norm(delta);
  if (epsilon >= 1.0) {
    res.epsilon_pass = true;
  } else {
    const double hs_norm = std::max(std::abs(hs.min_level()),
                                    std::abs(hs.max_level()));
    const double hb_norm = std::max(std::abs(hb.min_level()),
                                    std::abs(hb.max_level()));
    const double budget = 2.0 * epsilon *
                          operator_norm(u - CMat::Identity(dim, dim)) *
                          (hs_norm + hb_norm);
    res.epsilon_pass = res.exact <= budget;
  }
  return res;
}

QuantumChannel realize(const ThermalOpSpec& spec, double tol) {
  const Eigen::Index n = spec.system_dim();
  const Eigen::Index m = spec.bath_dim();
  require_unitary(spec.unitary, tol, "realize");
  const auto res = energy_residual(spec.unitary, spec.system, spec.bath, 0.0);
  if (res.exact > tol)
    throw EnergyConservationError(
        "realize: energy conservation violated (residual " +
        std::to_string(res.exact) + ")");
  const RVec w = gibbs_weights(spec.bath, spec.beta);
  CMat choi(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Columns of U hitting e_i (x) bath, with Gibbs weights applied.
    const CMat ci = spec.unitary.middleCols(i * m, m);
    const CMat a = ci * w.cast<Complex>().asDiagonal();
    for (Eigen::Index j = 0; j < n; ++j) {
      const CMat cj = spec.unitary.middleCols(j * m, m);
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
          choi(i * n + k, j * n + l) =
              (a.middleRows(k * m, m).array() *
               cj.middleRows(l * m, m).array().conjugate())
                  .sum();
    }
  }
  return QuantumChannel(n, std::move(choi));
}

ThermalOpSpec compose_specs(const ThermalOpSpec& s1, const ThermalOpSpec& s2,
                            double tol) {
  if (!s1.system.same_as(s2.system, tol))
    throw std::invalid_argument("compose_specs: system Hamiltonians differ");
  if (std::abs(s1.beta.beta - s2.beta.beta) > tol)
    throw std::invalid_argument("compose_specs: temperatures differ");
  const Eigen::Index n = s1.system_dim();
  const Eigen::Index m1 = s1.bath_dim();
  const Eigen::Index m2 = s2.bath_dim();
  const CMat in = CMat::Identity(n, n);
  const CMat f = flip_operator(m1, m2);
  const CMat u = kron(s1.unitary, CMat::Identity(m2, m2)) *
                 kron(in, f.adjoint()) *
                 kron(s2.unitary, CMat::Identity(m1, m1)) * kron(in, f);
  const auto eb = total_energies(s1.bath.expand(), s2.bath.expand());
  const auto perm = sort_permutation(eb);
  std::vector<double> sorted(eb.size());
  for (std::size_t k = 0; k < eb.size(); ++k) sorted[k] = eb[perm[k]];
  ThermalOpSpec out;
  out.system = s1.system;
  out.bath = DiagonalHamiltonian::from_energies(sorted, tol);
  out.unitary = sort_bath_basis(u, n, perm);
  out.beta = s1.beta;
  return out;
}

ThermalOpSpec convex_combine_specs(const ThermalOpSpec& s1,
                                   const ThermalOpSpec& s2, std::int64_t k,
                                   std::int64_t d, double tol) {
  if (k <= 0 || d <= 1 || k >= d)
    throw std::invalid_argument("convex_combine_specs: need 0 < k < d");
  if (!s1.system.same_as(s2.system, tol))
    throw std::invalid_argument("convex_combine_specs: systems differ");
  if (std::abs(s1.beta.beta - s2.beta.beta) > tol)
    throw std::invalid_argument("convex_combine_specs: temperatures differ");
  const Eigen::Index n = s1.system_dim();
  const Eigen::Index m1 = s1.bath_dim();
  const Eigen::Index m2 = s2.bath_dim();
  const auto dd = static_cast<Eigen::Index>(d);
  CMat proj = CMat::Zero(dd, dd);  // rank-k projector on the first k vectors
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); ++i)
    proj(i, i) = 1.0;
  const CMat rest = CMat::Identity(dd, dd) - proj;
  const CMat in = CMat::Identity(n, n);
  const CMat f = flip_operator(m1, m2);
  const CMat swap1 = kron(in, kron(f.adjoint(), CMat::Identity(dd, dd)));
  const CMat swap2 = kron(in, kron(f, CMat::Identity(dd, dd)));
  const CMat u = kron(s1.unitary, kron(CMat::Identity(m2, m2), proj)) +
                 swap1 * kron(s2.unitary, kron(CMat::Identity(m1, m1), rest)) *
                     swap2;
  std::vector<double> eb;
  for (double a : s1.bath.expand())
    for (double b : s2.bath.expand())
      for (Eigen::Index r = 0; r < dd; ++r) eb.push_back(a + b);
  const auto perm = sort_permutation(eb);
  std::vector<double> sorted(eb.size());
  for (std::size_t i = 0; i < eb.size(); ++i) sorted[i] = eb[perm[i]];
  ThermalOpSpec out;
  out.system = s1.system;
  out.bath = DiagonalHamiltonian::from_energies(sorted, tol);
  out.unitary = sort_bath_basis(u, n, perm);
  out.beta = s1.beta;
  return out;
}

std::vector<WeightedSpec> decompose_nonresonant(const ThermalOpSpec& spec,
                                                double tol) {
  const auto graph = resonance_graph(spec.bath, spec.system, tol);
  if (graph.resonant()) return {{1.0, spec}};
  const Eigen::Index n = spec.system_dim();
  const Eigen::Index m = spec.bath_dim();
  const auto eb = spec.bath.expand();
  const double ground = spec.bath.min_level();
  double z = 0.0;
  for (double e : eb) z += std::exp(-spec.beta.beta * (e - ground));
  std::vector<WeightedSpec> out;
  for (const auto& comp : graph.components) {
    std::vector<bool> in_comp(spec.bath.levels.size(), false);
    for (int v : comp) in_comp[static_cast<std::size_t>(v)] = true;
    std::vector<Eigen::Index> idx;  // expanded bath indices, ascending
    {
      Eigen::Index b = 0;
      for (std::size_t lvl = 0; lvl < spec.bath.levels.size(); ++lvl)
        for (std::int64_t c = 0; c < spec.bath.mults[lvl]; ++c, ++b)
          if (in_comp[lvl]) idx.push_back(b);
    }
    double weight = 0.0;
    std::vector<double> sub_energies;
    for (auto b : idx) {
      weight += std::exp(-spec.beta.beta * (eb[b] - ground));
      sub_energies.push_back(eb[static_cast<std::size_t>(b)]);
    }
    weight /= z;
    const auto mc = static_cast<Eigen::Index>(idx.size());
    CMat sub_u(n * mc, n * mc);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index p = 0; p < mc; ++p)
          for (Eigen::Index q = 0; q < mc; ++q)
            sub_u(a * mc + p, b * mc + q) =
                spec.unitary(a * m + idx[p], b * m + idx[q]);
    ThermalOpSpec sub;
    sub.system = spec.system;
    sub.bath = DiagonalHamiltonian::from_energies(sub_energies, tol);
    sub.unitary = std::move(sub_u);
    sub.beta = spec.beta;
    auto rec = decompose_nonresonant(sub, tol);
    for (auto& ws : rec) out.push_back({weight * ws.weight, std::move(ws.spec)});
  }
  return out;
}

ThermalOpSpec spin_embed(const DiagonalHamiltonian& hs,
                         const DiagonalHamiltonian& hb, double delta_e,
                         const CMat& h_tot, std::int64_t alpha,
                         InverseTemperature beta, double tol) {
  if (alpha < 1) throw std::invalid_argument("spin_embed: alpha < 1");
  if (!on_spin_grid(hb, delta_e, tol))
    throw std::invalid_argument("spin_embed: bath levels off the grid");
  const Eigen::Index n = static_cast<Eigen::Index>(hs.dim());
  const Eigen::Index m = static_cast<Eigen::Index>(hb.dim());
  if (h_tot.rows() != n * m || h_tot.cols() != n * m)
    throw std::invalid_argument("spin_embed: generator dimension mismatch");
  {
    const auto t = total_energies(hs.expand(), hb.expand());
    double comm = 0.0;  // ||[H_tot, H_S (x) 1 + 1 (x) H_B]||_F
    for (Eigen::Index r = 0; r < h_tot.rows(); ++r)
      for (Eigen::Index c = 0; c < h_tot.cols(); ++c) {
        const double factor = t[c] - t[r];
        comm += std::norm(h_tot(r, c) * factor);
      }
    comm = std::sqrt(comm);
    if (comm > tol * std::max(1.0, h_tot.norm()))
      throw std::invalid_argument(
          "spin_embed: generator does not commute with H_S (x) 1 + 1 (x) H_B");
  }
  // Missing grid points strictly between the lowest and highest bath level.
  std::vector<double> missing;
  {
    const double base = hb.min_level();
    const auto steps = static_cast<std::int64_t>(
        std::llround((hb.max_level() - base) / delta_e));
    for (std::int64_t j = 1; j < steps; ++j) {
      const double lv = base + static_cast<double>(j) * delta_e;
      bool present = false;
      for (double have : hb.levels)
        if (std::abs(have - lv) <= tol) present = true;
      if (!present) missing.push_back(lv);
    }
  }
  const auto j_count = static_cast<Eigen::Index>(missing.size());
  const Eigen::Index m_new = alpha * m + j_count;
  if (n * m_new > kDimCap)
    throw DimensionCapError("spin_embed: embedded dimension exceeds cap");
  std::vector<double> eb_new;
  const auto eb = hb.expand();
  for (std::int64_t copy = 0; copy < alpha; ++copy)
    eb_new.insert(eb_new.end(), eb.begin(), eb.end());
  eb_new.insert(eb_new.end(), missing.begin(), missing.end());
  const auto perm = sort_permutation(eb_new);
  CMat gen = CMat::Zero(n * m_new, n * m_new);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const CMat blk = h_tot.block(i * m, j * m, m, m);
      // alpha copies of the block, zero on the filler levels, re-sorted.
      for (Eigen::Index p = 0; p < m_new; ++p)
        for (Eigen::Index q = 0; q < m_new; ++q) {
          const Eigen::Index po = perm[p], qo = perm[q];
          if (po >= alpha * m || qo >= alpha * m) continue;
          if (po / m != qo / m) continue;  // different copies do not couple
          gen(i * m_new + p, j * m_new + q) = blk(po % m, qo % m);
        }
    }
  std::vector<double> sorted(eb_new.size());
  for (std::size_t k = 0; k < eb_new.size(); ++k) sorted[k] = eb_new[perm[k]];
  ThermalOpSpec out;
  out.system = hs;
  out.bath = DiagonalHamiltonian::from_energies(sorted, tol);
  out.unitary = unitary_from_generator(gen, tol);
  out.beta = beta;
  return out;
}

SpinBlockResult spin_block_choi(const SpinBlockSpec& sbs,
                                InverseTemperature beta, double tol) {
  const auto m = static_cast<Eigen::Index>(sbs.alphas.size());
  if (m < 1) throw std::invalid_argument("spin_block_choi: empty alphas");
  if (!(sbs.delta_e > 0))
    throw std::invalid_argument("spin_block_choi: delta_e <= 0");
  if (static_cast<Eigen::Index>(sbs.block_unitaries.size()) != m + 1)
    throw std::invalid_argument("spin_block_choi: need m+1 block unitaries");
  for (auto a : sbs.alphas)
    if (a < 1) throw std::invalid_argument("spin_block_choi: alpha < 1");
  const auto& blocks = sbs.block_unitaries;
  const auto& alphas = sbs.alphas;
  for (Eigen::Index j = 0; j <= m; ++j) {
    const Eigen::Index expect =
        (j == 0) ? alphas[0]
                 : (j == m ? alphas[m - 1] : alphas[j - 1] + alphas[j]);
    if (blocks[j].rows() != expect || blocks[j].cols() != expect)
      throw std::invalid_argument("spin_block_choi: block size mismatch");
    require_unitary(blocks[j], tol, "spin_block_choi");
  }
  const double q = std::exp(-beta.beta * sbs.delta_e);
  std::vector<double> qpow(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j)
    qpow[static_cast<std::size_t>(j)] = std::pow(q, static_cast<double>(j));
  double z = 0.0;
  for (Eigen::Index j = 0; j < m; ++j)
    z += static_cast<double>(alphas[j]) * qpow[static_cast<std::size_t>(j)];

  auto part_a = [&](Eigen::Index j) -> CMat {  // A_j, size alpha_j
    return blocks[j].topLeftCorner(alphas[j], alphas[j]);
  };
  auto part_b = [&](Eigen::Index j) -> CMat {  // B_j, alpha_j x alpha_{j-1}
    return blocks[j].topRightCorner(alphas[j], alphas[j - 1]);
  };
  auto part_c = [&](Eigen::Index j) -> CMat {  // C_j, alpha_{j-1} x alpha_j
    return blocks[j].bottomLeftCorner(alphas[j - 1], alphas[j]);
  };
  auto part_d = [&](Eigen::Index j) -> CMat {  // D_j, size alpha_{j-1}
    return blocks[j].bottomRightCorner(alphas[j - 1], alphas[j - 1]);
  };

  double lambda = 0.0;
  Complex c;
  if (m == 1) {
    c = (blocks[0] * blocks[1].adjoint()).trace() / z;
  } else {
    for (Eigen::Index j = 0; j + 2 <= m; ++j)
      lambda += part_b(j + 1).squaredNorm() * qpow[static_cast<std::size_t>(j)];
    lambda /= z;
    Complex num = (blocks[0] * part_d(1).adjoint()).trace();
    for (Eigen::Index j = 1; j + 2 <= m; ++j)
      num += (part_a(j) * part_d(j + 1).adjoint()).trace() *
             qpow[static_cast<std::size_t>(j)];
    num += (part_a(m - 1) * blocks[m].adjoint()).trace() *
           qpow[static_cast<std::size_t>(m - 1)];
    c = num / z;
  }

  // Assemble the full unitary: system-major basis, bath levels ascending.
  const Eigen::Index big =
      std::accumulate(alphas.begin(), alphas.end(), Eigen::Index{0});
  std::vector<Eigen::Index> off(static_cast<std::size_t>(m), 0);
  for (Eigen::Index j = 1; j < m; ++j)
    off[static_cast<std::size_t>(j)] =
        off[static_cast<std::size_t>(j - 1)] + alphas[j - 1];
  CMat u = CMat::Zero(2 * big, 2 * big);
  u.block(0, 0, alphas[0], alphas[0]) = blocks[0];
  for (Eigen::Index j = 1; j < m; ++j) {
    const auto oj = off[static_cast<std::size_t>(j)];
    const auto ojm = off[static_cast<std::size_t>(j - 1)];
    u.block(oj, oj, alphas[j], alphas[j]) = part_a(j);
    u.block(oj, big + ojm, alphas[j], alphas[j - 1]) = part_b(j);
    u.block(big + ojm, oj, alphas[j - 1], alphas[j]) = part_c(j);
    u.block(big + ojm, big + ojm, alphas[j - 1], alphas[j - 1]) = part_d(j);
  }
  const auto otop = off[static_cast<std::size_t>(m - 1)];
  u.block(big + otop, big + otop, alphas[m - 1], alphas[m - 1]) = blocks[m];

  ThermalOpSpec spec;
  spec.system = DiagonalHamiltonian({0.0, sbs.delta_e}, {1, 1});
  std::vector<double> bath_levels;
  for (Eigen::Index j = 0; j < m; ++j)
    bath_levels.push_back(static_cast<double>(j) * sbs.delta_e);
  spec.bath = DiagonalHamiltonian(bath_levels, alphas);
  spec.unitary = std::move(u);
  spec.beta = beta;
  return {lambda, c, std::move(spec)};
}

}  // namespace thermops
