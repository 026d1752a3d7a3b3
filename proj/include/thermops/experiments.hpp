#ifndef THERMOPS_EXPERIMENTS_HPP
#define THERMOPS_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "thermops/qubit.hpp"

namespace thermops {

struct ExperimentReport {
  std::string name;
  nlohmann::json parameters;
  nlohmann::json values;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Degenerate two-level system: the Hadamard-like thermal operation maps
/// |e1><e1| to the uniform coherent state, which no covariant channel of a
/// non-degenerate qubit can approach within trace distance 1.
ExperimentReport discontinuity_qubit(double q);

/// Qutrit with degenerate Bohr spectrum: the permutation-unitary operation
/// moves the coherence a_23 to the 1-2 transition, forcing distance
/// 1 - q^2/(1+q+q^2) >= 2/3 to any channel covariant w.r.t. the perturbed
/// Hamiltonian.
ExperimentReport discontinuity_qutrit(double q);

/// Gibbs-state distance probe on H_B(E) = 0 (+) E 1_N with
/// N = floor(e^{E(beta+beta')/2}): the gap 2 - ||g - g'||_1 decreases to 0,
/// so the naive continuity bound degenerates whenever beta != beta'.
/// Evaluated in closed form on the level/multiplicity representation.
ExperimentReport cmap_probe(double beta, double beta_prime,
                            const std::vector<double>& e_grid);

/// Max-min distance between sampled channel sets, using the Choi trace
/// distance surrogate.
double hausdorff_surrogate(const std::vector<QuantumChannel>& a,
                           const std::vector<QuantumChannel>& b);

/// Classical reachability test: x is reachable from y under Gibbs-stochastic
/// maps with weight vector d iff ||x - (y_i/d_i) d||_1 <= ||y - (y_i/d_i) d||_1
/// for every i.
bool thermo_majorization_check(const RVec& x, const RVec& y, const RVec& d,
                               double tol = 1e-12);

enum class ConvergenceKind {
  FiniteTemperatureExtreme,
  InfiniteTemperatureExtreme,
  SpinEmbedding
};

struct ConvergenceParams {
  double q = 0.2;
  double lambda = 0.5;
  double phi = 0.0;
  std::int64_t mu_num = 2;
  std::int64_t mu_den = 1;
};

/// Tabulates the approximation error against the closed-form target along
/// the schedule (m values, or alpha values for the embedding study) and
/// checks that it decreases.
ExperimentReport convergence_study(ConvergenceKind kind,
                                   const ConvergenceParams& params,
                                   const std::vector<std::int64_t>& schedule);

}  // namespace thermops

#endif
