#include "thermops/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thermops {

namespace {

// Sorted values grouped within tol, anchored at the first member of a group.
void group_sorted(const std::vector<double>& sorted,
                  const std::vector<std::int64_t>& counts, double tol,
                  std::vector<double>& out_vals,
                  std::vector<std::int64_t>& out_counts) {
  out_vals.clear();
  out_counts.clear();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!out_vals.empty() && sorted[i] - out_vals.back() <= tol) {
      out_counts.back() += counts[i];
    } else {
      out_vals.push_back(sorted[i]);
      out_counts.push_back(counts[i]);
    }
  }
}

bool matches_any(const std::vector<double>& sorted_vals, double x,
                 double tol) {
  auto it = std::lower_bound(sorted_vals.begin(), sorted_vals.end(), x - tol);
  return it != sorted_vals.end() && *it <= x + tol;
}

}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(std::vector<double> lv,
                                         std::vector<std::int64_t> mu,
                                         double tol)
    : levels(std::move(lv)), mults(std::move(mu)) {
  if (levels.empty() || levels.size() != mults.size())
    throw std::invalid_argument("DiagonalHamiltonian: empty or mismatched");
  for (double e : levels)
    if (!std::isfinite(e))
      throw std::invalid_argument("DiagonalHamiltonian: non-finite level");
  for (std::size_t k = 0; k + 1 < levels.size(); ++k)
    if (levels[k + 1] - levels[k] <= tol)
      throw std::invalid_argument(
          "DiagonalHamiltonian: levels not strictly increasing");
  for (auto m : mults)
    if (m < 1)
      throw std::invalid_argument("DiagonalHamiltonian: multiplicity < 1");
}

DiagonalHamiltonian DiagonalHamiltonian::from_energies(
    std::vector<double> energies, double tol) {
  if (energies.empty())
    throw std::invalid_argument("from_energies: empty spectrum");
  std::sort(energies.begin(), energies.end());
  std::vector<std::int64_t> ones(energies.size(), 1);
  DiagonalHamiltonian h;
  group_sorted(energies, ones, tol, h.levels, h.mults);
  return DiagonalHamiltonian(h.levels, h.mults, tol * 0.5);
}

std::int64_t DiagonalHamiltonian::dim() const {
  return std::accumulate(mults.begin(), mults.end(), std::int64_t{0});
}

std::vector<double> DiagonalHamiltonian::expand(std::int64_t cap) const {
  if (dim() > cap)
    throw DimensionCapError("expand: dimension " + std::to_string(dim()) +
                            " exceeds cap " + std::to_string(cap));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (std::size_t k = 0; k < levels.size(); ++k)
    out.insert(out.end(), static_cast<std::size_t>(mults[k]), levels[k]);
  return out;
}

CMat DiagonalHamiltonian::matrix(std::int64_t cap) const {
  const auto e = expand(cap);
  CMat m = CMat::Zero(static_cast<Eigen::Index>(e.size()),
                      static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e[i];
  return m;
}

bool DiagonalHamiltonian::same_as(const DiagonalHamiltonian& other,
                                  double tol) const {
  if (levels.size() != other.levels.size()) return false;
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (std::abs(levels[k] - other.levels[k]) > tol ||
        mults[k] != other.mults[k])
      return false;
  return true;
}

InverseTemperature::InverseTemperature(double b) : beta(b) {
  if (!std::isfinite(b) || b < 0.0)
    throw std::invalid_argument("InverseTemperature: beta must be >= 0");
}

InverseTemperature InverseTemperature::from_q(double q, double delta_e) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("InverseTemperature: q must be in (0,1]");
  if (!(delta_e > 0.0))
    throw std::invalid_argument("InverseTemperature: delta_e must be > 0");
  return InverseTemperature(q == 1.0 ? 0.0 : -std::log(q) / delta_e);
}

double InverseTemperature::q(double delta_e) const {
  return std::exp(-beta * delta_e);
}

std::vector<double> BohrSpectrum::nonnegative() const {
  std::vector<double> out;
  for (double v : values)
    if (v >= 0.0) out.push_back(v);
  return out;
}

BohrSpectrum bohr_spectrum(const DiagonalHamiltonian& h, double tol) {
  const std::size_t k = h.levels.size();
  std::vector<double> diffs;
  std::vector<std::int64_t> counts;
  diffs.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      diffs.push_back(h.levels[i] - h.levels[j]);
      counts.push_back(h.mults[i] * h.mults[j]);
    }
  std::vector<std::size_t> order(diffs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return diffs[a] < diffs[b]; });
  std::vector<double> sorted;
  std::vector<std::int64_t> sorted_counts;
  for (auto idx : order) {
    sorted.push_back(diffs[idx]);
    sorted_counts.push_back(counts[idx]);
  }
  BohrSpectrum spec;
  group_sorted(sorted, sorted_counts, tol, spec.values, spec.mults);
  const std::int64_t n = h.dim();
  spec.degenerate =
      static_cast<std::int64_t>(spec.values.size()) < n * n - n + 1;
  return spec;
}

ResonanceGraph resonance_graph(const DiagonalHamiltonian& bath,
                               const DiagonalHamiltonian& system,
                               double tol) {
  const auto sys_bohr = bohr_spectrum(system, tol).nonnegative();
  ResonanceGraph g;
  g.levels = bath.levels;
  const int v = static_cast<int>(bath.levels.size());
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) {
      const double d = std::abs(bath.levels[j] - bath.levels[i]);
      if (matches_any(sys_bohr, d, tol)) {
        g.edges.emplace_back(i, j);
        parent[find(i)] = find(j);
      }
    }
  std::vector<std::vector<int>> buckets(v);
  for (int i = 0; i < v; ++i) buckets[find(i)].push_back(i);
  for (auto& b : buckets)
    if (!b.empty()) g.components.push_back(std::move(b));
  return g;
}

RVec gibbs_weights(const DiagonalHamiltonian& h, InverseTemperature beta,
                   std::int64_t cap) {
  const auto energies = h.expand(cap);
  const double ground = h.min_level();
  RVec w(static_cast<Eigen::Index>(energies.size()));
  for (std::size_t i = 0; i < energies.size(); ++i)
    w(static_cast<Eigen::Index>(i)) =
        std::exp(-beta.beta * (energies[i] - ground));
  w /= w.sum();
  return w;
}

CMat gibbs_state(const DiagonalHamiltonian& h, InverseTemperature beta,
                 std::int64_t cap) {
  const RVec w = gibbs_weights(h, beta, cap);
  CMat g = CMat::Zero(w.size(), w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) g(i, i) = w(i);
  return g;
}

std::vector<double> gibbs_level_probabilities(const DiagonalHamiltonian& h,
                                              InverseTemperature beta) {
  const double ground = h.min_level();
  std::vector<double> p(h.levels.size());
  double z = 0.0;
  for (std::size_t k = 0; k < h.levels.size(); ++k) {
    p[k] = static_cast<double>(h.mults[k]) *
           std::exp(-beta.beta * (h.levels[k] - ground));
    z += p[k];
  }
  for (auto& x : p) x /= z;
  return p;
}

std::optional<double> rational_bohr_constant(const DiagonalHamiltonian& h,
                                             double tol) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < h.levels.size(); ++i)
    for (std::size_t j = i + 1; j < h.levels.size(); ++j)
      diffs.push_back(h.levels[j] - h.levels[i]);
  if (diffs.empty()) return std::nullopt;  // single level, no transitions
  double g = 0.0;
  for (double d : diffs) {
    double a = std::max(g, d), b = std::min(g, d);
    while (b > tol) {
      double r = std::fmod(a, b);
      if (b - r <= tol) r = 0.0;
      a = b;
      b = r;
    }
    g = a;
  }
  if (g <= tol) return std::nullopt;
  for (double d : diffs)
    if (std::abs(d - std::round(d / g) * g) > tol) return std::nullopt;
  return g;
}

bool on_spin_grid(const DiagonalHamiltonian& h, double delta_e, double tol) {
  if (!(delta_e > 0.0)) throw std::invalid_argument("on_spin_grid: dE <= 0");
  for (double lv : h.levels) {
    const double j = (lv - h.min_level()) / delta_e;
    if (std::abs(j - std::round(j)) * delta_e > tol) return false;
  }
  return true;
}

bool mixing_allowed(const DiagonalHamiltonian& system,
                    const DiagonalHamiltonian& bath, std::pair<int, int> ij,
                    std::pair<int, int> kl, double tol) {
  const auto e = system.expand();
  const auto n = static_cast<int>(e.size());
  for (int idx : {ij.first, ij.second, kl.first, kl.second})
    if (idx < 0 || idx >= n)
      throw std::out_of_range("mixing_allowed: index out of range");
  const double d_ik = e[ij.first] - e[kl.first];
  const double d_jl = e[ij.second] - e[kl.second];
  if (std::abs(d_ik - d_jl) > tol) return false;
  const auto bath_bohr = bohr_spectrum(bath, tol).nonnegative();
  return matches_any(bath_bohr, std::abs(d_ik), tol);
}

}  // namespace thermops
