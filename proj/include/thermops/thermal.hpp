#ifndef THERMOPS_THERMAL_HPP
#define THERMOPS_THERMAL_HPP

#include <vector>

#include "thermops/channel.hpp"
#include "thermops/hamiltonian.hpp"

namespace thermops {

/// Default rejection threshold for the energy-conservation residual.
inline constexpr double kEnergyTol = 1e-8;

struct EnergyConservationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data of a thermal operation: system and bath Hamiltonians (diagonal, with
/// the bath basis ordered by ascending energy), a global unitary on the
/// product space in system-major ordering, and the inverse bath temperature.
struct ThermalOpSpec {
  DiagonalHamiltonian system;
  DiagonalHamiltonian bath;
  CMat unitary;
  InverseTemperature beta;

  Eigen::Index system_dim() const;
  Eigen::Index bath_dim() const;
};

struct EnergyResidual {
  double exact = 0;          // ||U H_tot U* - H_tot||_inf
  bool epsilon_pass = false; // exact <= 2 eps ||U-1||_inf (||H_S||+||H_B||)
};

EnergyResidual energy_residual(const CMat& u, const DiagonalHamiltonian& hs,
                               const DiagonalHamiltonian& hb, double epsilon);

/// The channel tr_B(U((.) (x) g_B) U*) with g_B the bath Gibbs state.
/// Rejects non-unitary U and energy-conservation residuals above tol.
QuantumChannel realize(const ThermalOpSpec& spec, double tol = kEnergyTol);

/// Spec whose realization composes the two inputs (s1 after s2). Bath is
/// H_{B,1} (x) 1 + 1 (x) H_{B,2}; the combined unitary is assembled with the
/// flip operator and re-sorted to ascending bath energies.
ThermalOpSpec compose_specs(const ThermalOpSpec& s1, const ThermalOpSpec& s2,
                            double tol = kDefaultTol);

/// Spec realizing (k/d) S1 + (1-k/d) S2 via a rank-k projector on an
/// auxiliary d-level register with trivial Hamiltonian.
ThermalOpSpec convex_combine_specs(const ThermalOpSpec& s1,
                                   const ThermalOpSpec& s2, std::int64_t k,
                                   std::int64_t d, double tol = kDefaultTol);

struct WeightedSpec {
  double weight;
  ThermalOpSpec spec;
};

/// Splits a spec along the connected components of the bath resonance graph.
/// Weights are Gibbs partition ratios; every returned bath is resonant
/// w.r.t. the system, and the weighted realizations sum to the original.
std::vector<WeightedSpec> decompose_nonresonant(const ThermalOpSpec& spec,
                                                double tol = kDefaultTol);

/// Fills the gaps of a spin-form bath (levels on the grid {E_min + j dE})
/// by taking alpha copies of the bath plus one copy of each missing level,
/// replicating the generator blocks accordingly. The realized channel
/// converges to the original as alpha grows.
ThermalOpSpec spin_embed(const DiagonalHamiltonian& hs,
                         const DiagonalHamiltonian& hb, double delta_e,
                         const CMat& h_tot, std::int64_t alpha,
                         InverseTemperature beta, double tol = kDefaultTol);

/// Qubit thermal operation on a spin bath H_B = sum_j j dE 1_{alpha_j},
/// given by the energy-block unitaries U_0, U_1, ..., U_m where U_j for
/// 0 < j < m is partitioned as [[A_j, B_j], [C_j, D_j]] with A_j of size
/// alpha_j and D_j of size alpha_{j-1}.
struct SpinBlockSpec {
  double delta_e = 1.0;
  std::vector<std::int64_t> alphas;       // alpha_0 ... alpha_{m-1}
  std::vector<CMat> block_unitaries;      // U_0 ... U_m (m+1 entries)
};

struct SpinBlockResult {
  double lambda;
  Complex c;
  ThermalOpSpec assembled;
};

/// Closed-form Choi parameters (lambda, c) of the spin-block operation plus
/// the assembled spec; psi(realize(assembled)) equals (lambda, conj-free c).
SpinBlockResult spin_block_choi(const SpinBlockSpec& sbs,
                                InverseTemperature beta,
                                double tol = kDefaultTol);

}  // namespace thermops

#endif
