#ifndef THERMOPS_CHANNEL_HPP
#define THERMOPS_CHANNEL_HPP

#include <vector>

#include "thermops/hamiltonian.hpp"
#include "thermops/linalg.hpp"

namespace thermops {

/// A linear map on C^{n x n} stored as its Choi matrix in the computational
/// basis, C = sum_{ij} |e_i><e_j| (x) S(|e_i><e_j|). Complete positivity is
/// positive semi-definiteness of C; trace preservation is tr_out(C) = 1_n.
class QuantumChannel {
 public:
  QuantumChannel(Eigen::Index dim, CMat choi);

  static QuantumChannel identity(Eigen::Index n);
  static QuantumChannel full_dephasing(Eigen::Index n);

  Eigen::Index dim() const { return dim_; }
  const CMat& choi() const { return choi_; }

  /// S(|e_i><e_j|), the (i,j) block of the Choi matrix.
  CMat block(Eigen::Index i, Eigen::Index j) const;

 private:
  Eigen::Index dim_;
  CMat choi_;
};

/// Evaluates S(rho) from the Choi matrix.
CMat apply(const QuantumChannel& s, const CMat& rho);

/// Choi matrix of the composition S1 after S2.
QuantumChannel compose(const QuantumChannel& s1, const QuantumChannel& s2);

/// Weighted sum of channels; weights must be nonnegative and sum to 1
/// within 1e-12.
QuantumChannel convex_combine(const std::vector<QuantumChannel>& channels,
                              const std::vector<double>& weights);

struct CptpReport {
  double hermiticity_residual = 0;
  double cp_min_eigenvalue = 0;  // min eigenvalue of the Choi matrix
  double tp_residual = 0;        // ||tr_out(C) - 1||_F
  bool cp = false;
  bool tp = false;
  bool pass() const { return cp && tp; }
};

CptpReport check_cptp(const QuantumChannel& s, double tol = kDefaultTol);

struct StationarityReport {
  double fixed_point_residual = 0;  // ||S(g) - g||_1, g the Gibbs state
  double covariance_residual = 0;   // max_X ||S([H,X]) - [H,S(X)]||_1
};

/// Residuals of the Gibbs fixed-point and covariance laws, probed on all
/// matrix units X = |e_i><e_j|.
StationarityReport stationarity_covariance(const QuantumChannel& s,
                                           const DiagonalHamiltonian& h,
                                           InverseTemperature beta);

/// Trace norm of the Choi difference, scaled by 1/n. A computable surrogate
/// for the induced trace-norm distance (not equal to it).
double choi_distance(const QuantumChannel& s1, const QuantumChannel& s2);

/// max_X ||S1(X) - S2(X)||_1 over the given probes (each with trace norm 1);
/// a certified lower bound on ||S1 - S2||_{1->1}.
double induced_norm_lower_bound(const QuantumChannel& s1,
                                const QuantumChannel& s2,
                                const std::vector<CMat>& probes,
                                double tol = kDefaultTol);

}  // namespace thermops

#endif
