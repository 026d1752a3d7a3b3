#include "thermops/channel.hpp"

#include <cmath>

namespace thermops {

namespace {

// Reshuffle between the Choi matrix and the superoperator acting on
// row-major vectorizations: M[k n + l, i n + j] = C[i n + k, j n + l].
// The index permutation is an involution, so one function serves both ways.
CMat reshuffle(const CMat& c, Eigen::Index n) {
  CMat m(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
          m(k * n + l, i * n + j) = c(i * n + k, j * n + l);
  return m;
}

}  // namespace

QuantumChannel::QuantumChannel(Eigen::Index dim, CMat choi)
    : dim_(dim), choi_(std::move(choi)) {
  if (dim_ < 1) throw std::invalid_argument("QuantumChannel: dim < 1");
  if (choi_.rows() != dim_ * dim_ || choi_.cols() != dim_ * dim_)
    throw std::invalid_argument("QuantumChannel: Choi matrix must be n^2 x n^2");
}

QuantumChannel QuantumChannel::identity(Eigen::Index n) {
  CVec v = CVec::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0;
  return QuantumChannel(n, v * v.adjoint());
}

QuantumChannel QuantumChannel::full_dephasing(Eigen::Index n) {
  CMat c = CMat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) c(i * n + i, i * n + i) = 1.0;
  return QuantumChannel(n, c);
}

CMat QuantumChannel::block(Eigen::Index i, Eigen::Index j) const {
  return choi_.block(i * dim_, j * dim_, dim_, dim_);
}

CMat apply(const QuantumChannel& s, const CMat& rho) {
  const Eigen::Index n = s.dim();
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("apply: state dimension mismatch");
  CMat out = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (rho(i, j) != Complex(0, 0)) out += rho(i, j) * s.block(i, j);
  return out;
}

QuantumChannel compose(const QuantumChannel& s1, const QuantumChannel& s2) {
  if (s1.dim() != s2.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  const Eigen::Index n = s1.dim();
  const CMat m = reshuffle(s1.choi(), n) * reshuffle(s2.choi(), n);
  return QuantumChannel(n, reshuffle(m, n));
}

QuantumChannel convex_combine(const std::vector<QuantumChannel>& channels,
                              const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size())
    throw std::invalid_argument("convex_combine: empty or mismatched input");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("convex_combine: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("convex_combine: weights must sum to 1");
  const Eigen::Index n = channels.front().dim();
  CMat c = CMat::Zero(n * n, n * n);
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].dim() != n)
      throw std::invalid_argument("convex_combine: dimension mismatch");
    c += weights[k] * channels[k].choi();
  }
  return QuantumChannel(n, std::move(c));
}

CptpReport check_cptp(const QuantumChannel& s, double tol) {
  const Eigen::Index n = s.dim();
  CptpReport rep;
  rep.hermiticity_residual = (s.choi() - s.choi().adjoint()).norm();
  const CMat herm = 0.5 * (s.choi() + s.choi().adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(herm, Eigen::EigenvaluesOnly);
  rep.cp_min_eigenvalue = solver.eigenvalues().minCoeff();
  CMat marginal = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      marginal(i, j) = s.block(i, j).trace();
  rep.tp_residual = (marginal - CMat::Identity(n, n)).norm();
  rep.cp = rep.hermiticity_residual <= tol && rep.cp_min_eigenvalue >= -tol;
  rep.tp = rep.tp_residual <= tol;
  return rep;
}

StationarityReport stationarity_covariance(const QuantumChannel& s,
                                           const DiagonalHamiltonian& h,
                                           InverseTemperature beta) {
  const Eigen::Index n = s.dim();
  if (h.dim() != n)
    throw std::invalid_argument("stationarity_covariance: dim mismatch");
  StationarityReport rep;
  const CMat g = gibbs_state(h, beta);
  rep.fixed_point_residual = trace_norm(apply(s, g) - g);
  const CMat hd = h.matrix();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      CMat x = CMat::Zero(n, n);
      x(i, j) = 1.0;
      const CMat lhs = apply(s, hd * x - x * hd);
      const CMat sx = apply(s, x);
      const CMat rhs = hd * sx - sx * hd;
      rep.covariance_residual =
          std::max(rep.covariance_residual, trace_norm(lhs - rhs));
    }
  return rep;
}

double choi_distance(const QuantumChannel& s1, const QuantumChannel& s2) {
  if (s1.dim() != s2.dim())
    throw std::invalid_argument("choi_distance: dimension mismatch");
  return trace_norm(s1.choi() - s2.choi()) / static_cast<double>(s1.dim());
}

double induced_norm_lower_bound(const QuantumChannel& s1,
                                const QuantumChannel& s2,
                                const std::vector<CMat>& probes, double tol) {
  if (s1.dim() != s2.dim())
    throw std::invalid_argument("induced_norm_lower_bound: dim mismatch");
  double best = 0.0;
  for (const auto& x : probes) {
    if (std::abs(trace_norm(x) - 1.0) > tol)
      throw std::invalid_argument(
          "induced_norm_lower_bound: probe must have unit trace norm");
    best = std::max(best, trace_norm(apply(s1, x) - apply(s2, x)));
  }
  return best;
}

}  // namespace thermops
