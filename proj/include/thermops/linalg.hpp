#ifndef THERMOPS_LINALG_HPP
#define THERMOPS_LINALG_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace thermops {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Default absolute tolerance for structural predicates.
inline constexpr double kDefaultTol = 1e-9;

/// Hard cap on expanded (dense) dimensions; constructions beyond this throw
/// DimensionCapError instead of allocating.
inline constexpr std::int64_t kDimCap = 4096;

struct DimensionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimensions of the two factors of a bipartite space H_A (x) H_B.
struct BipartiteShape {
  Eigen::Index dim_a = 1;
  Eigen::Index dim_b = 1;
};

enum class Side { A, B };

/// Kronecker product A (x) B.
CMat kron(const CMat& a, const CMat& b);

/// Partial trace of a square matrix on H_A (x) H_B over the given factor.
/// Satisfies tr_B(A (x) B) = tr(B) A and tr(tr_B(M)) = tr(M).
CMat partial_trace(const CMat& m, BipartiteShape shape, Side traced);

/// The flip (swap) operator F: C^{m1} (x) C^{m2} -> C^{m2} (x) C^{m1},
/// F(x (x) y) = y (x) x. Conjugation satisfies F^* (B (x) A) F = A (x) B.
CMat flip_operator(Eigen::Index m1, Eigen::Index m2);

struct EigResult {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // columns, unitary
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws std::invalid_argument if the input is not Hermitian within tol.
EigResult herm_eig(const CMat& h, double tol = kDefaultTol);

/// e^{iH} for Hermitian H.
CMat unitary_from_generator(const CMat& h, double tol = kDefaultTol);

/// Trace norm: sum of singular values.
double trace_norm(const CMat& m);

/// Operator norm: largest singular value.
double operator_norm(const CMat& m);

enum class MatrixKind { Hermitian, Unitary, Psd, Density };

struct ValidationReport {
  double hermiticity_residual = 0;  // ||M - M*||_F
  double unitarity_residual = 0;    // ||M M* - 1||_F
  double min_eigenvalue = 0;        // of the Hermitian part (M + M*)/2
  double trace_error = 0;           // |tr(M) - 1|
  bool pass = false;
};

/// Structural check of a square matrix against the requested kind.
ValidationReport validate(const CMat& m, MatrixKind kind,
                          double tol = kDefaultTol);

}  // namespace thermops

#endif
