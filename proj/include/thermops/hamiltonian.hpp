#ifndef THERMOPS_HAMILTONIAN_HPP
#define THERMOPS_HAMILTONIAN_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "thermops/linalg.hpp"

namespace thermops {

/// A Hamiltonian diagonal in the computational basis, stored as strictly
/// increasing distinct levels with positive multiplicities. The associated
/// basis ordering is "expanded ascending": index 0 carries the lowest level.
struct DiagonalHamiltonian {
  std::vector<double> levels;
  std::vector<std::int64_t> mults;

  DiagonalHamiltonian() = default;
  DiagonalHamiltonian(std::vector<double> lv, std::vector<std::int64_t> mu,
                      double tol = kDefaultTol);

  /// Groups raw per-index energies within tol; one entry per basis index.
  static DiagonalHamiltonian from_energies(std::vector<double> energies,
                                           double tol = kDefaultTol);

  std::int64_t dim() const;
  double min_level() const { return levels.front(); }
  double max_level() const { return levels.back(); }

  /// Per-index energies, ascending. Throws DimensionCapError beyond cap.
  std::vector<double> expand(std::int64_t cap = kDimCap) const;

  /// Dense diagonal matrix. Subject to the same cap as expand().
  CMat matrix(std::int64_t cap = kDimCap) const;

  bool same_as(const DiagonalHamiltonian& other,
               double tol = kDefaultTol) const;
};

/// beta in [0, inf); beta = 0 encodes infinite temperature.
struct InverseTemperature {
  double beta = 0.0;

  InverseTemperature() = default;
  explicit InverseTemperature(double b);

  bool infinite_temperature() const { return beta == 0.0; }

  /// q = e^{-beta dE} with q in (0,1]; q = 1 encodes infinite temperature.
  static InverseTemperature from_q(double q, double delta_e = 1.0);
  double q(double delta_e = 1.0) const;
};

/// Distinct signed level differences E_i - E_j with multiplicities (counted
/// over all ordered index pairs of the expanded spectrum).
struct BohrSpectrum {
  std::vector<double> values;  // ascending, symmetric about 0
  std::vector<std::int64_t> mults;
  bool degenerate = false;  // fewer than n^2 - n + 1 distinct values

  /// The nonnegative part of the spectrum (what |sigma(ad_H)| prints as).
  std::vector<double> nonnegative() const;
};

BohrSpectrum bohr_spectrum(const DiagonalHamiltonian& h,
                           double tol = kDefaultTol);

/// Graph on the distinct bath levels; vertices are adjacent when their
/// difference appears in sigma(ad_{H_S}).
struct ResonanceGraph {
  std::vector<double> levels;                   // vertex labels
  std::vector<std::pair<int, int>> edges;       // i < j, vertex indices
  std::vector<std::vector<int>> components;     // partition of vertices
  bool resonant() const { return components.size() == 1; }
};

ResonanceGraph resonance_graph(const DiagonalHamiltonian& bath,
                               const DiagonalHamiltonian& system,
                               double tol = kDefaultTol);

/// Gibbs state e^{-beta H} / Z as a dense diagonal density matrix.
/// Energies are shifted by the ground level before exponentiation.
CMat gibbs_state(const DiagonalHamiltonian& h, InverseTemperature beta,
                 std::int64_t cap = kDimCap);

/// Per-index Gibbs weights (diagonal of gibbs_state), same cap.
RVec gibbs_weights(const DiagonalHamiltonian& h, InverseTemperature beta,
                   std::int64_t cap = kDimCap);

/// Total Gibbs probability carried by each distinct level. Safe for
/// arbitrarily large multiplicities (no expansion).
std::vector<double> gibbs_level_probabilities(const DiagonalHamiltonian& h,
                                              InverseTemperature beta);

/// Largest r > 0 such that every level difference is an integer multiple of
/// r within tol (real GCD with tolerance cutoff); empty if none exists.
std::optional<double> rational_bohr_constant(const DiagonalHamiltonian& h,
                                             double tol = kDefaultTol);

/// Whether sigma(H) is contained in the grid {E_min + j dE : j = 0,1,...}.
bool on_spin_grid(const DiagonalHamiltonian& h, double delta_e,
                  double tol = kDefaultTol);

/// Necessary condition for a thermal operation w.r.t. (H_S, H_B) to mix the
/// state entries rho_ij and rho_kl (0-based expanded system indices):
/// E_i - E_k = E_j - E_l and that difference appears in sigma(ad_{H_B}).
bool mixing_allowed(const DiagonalHamiltonian& system,
                    const DiagonalHamiltonian& bath,
                    std::pair<int, int> ij, std::pair<int, int> kl,
                    double tol = kDefaultTol);

}  // namespace thermops

#endif
