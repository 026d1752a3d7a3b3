#include "thermops/linalg.hpp"

#include <Eigen/SVD>

namespace thermops {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat partial_trace(const CMat& m, BipartiteShape shape, Side traced) {
  const Eigen::Index da = shape.dim_a, db = shape.dim_b;
  if (da < 1 || db < 1) throw std::invalid_argument("partial_trace: bad shape");
  if (m.rows() != m.cols() || m.rows() != da * db)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (traced == Side::B) {
    CMat out = CMat::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index b = 0; b < db; ++b)
          out(i, j) += m(i * db + b, j * db + b);
    return out;
  }
  CMat out = CMat::Zero(db, db);
  for (Eigen::Index a = 0; a < db; ++a)
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index i = 0; i < da; ++i)
        out(a, b) += m(i * db + a, i * db + b);
  return out;
}

CMat flip_operator(Eigen::Index m1, Eigen::Index m2) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("flip_operator: bad dims");
  CMat f = CMat::Zero(m1 * m2, m1 * m2);
  for (Eigen::Index x = 0; x < m1; ++x)
    for (Eigen::Index y = 0; y < m2; ++y) f(y * m1 + x, x * m2 + y) = 1.0;
  return f;
}

EigResult herm_eig(const CMat& h, double tol) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("herm_eig: matrix not square");
  const double herm_res = (h - h.adjoint()).norm();
  if (herm_res > tol * std::max(1.0, h.norm()))
    throw std::invalid_argument("herm_eig: input not Hermitian (residual " +
                                std::to_string(herm_res) + ")");
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMat unitary_from_generator(const CMat& h, double tol) {
  const auto [vals, vecs] = herm_eig(h, tol);
  CVec phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    phases(k) = std::exp(Complex(0.0, vals(k)));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

double trace_norm(const CMat& m) {
  return Eigen::BDCSVD<CMat>(m).singularValues().sum();
}

double operator_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::BDCSVD<CMat>(m).singularValues()(0);
}

ValidationReport validate(const CMat& m, MatrixKind kind, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("validate: matrix not square");
  ValidationReport rep;
  rep.hermiticity_residual = (m - m.adjoint()).norm();
  rep.unitarity_residual =
      (m * m.adjoint() - CMat::Identity(m.rows(), m.cols())).norm();
  const CMat herm_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(herm_part,
                                             Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = solver.eigenvalues().minCoeff();
  rep.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  switch (kind) {
    case MatrixKind::Hermitian:
      rep.pass = rep.hermiticity_residual <= tol;
      break;
    case MatrixKind::Unitary:
      rep.pass = rep.unitarity_residual <= tol;
      break;
    case MatrixKind::Psd:
      rep.pass = rep.hermiticity_residual <= tol && rep.min_eigenvalue >= -tol;
      break;
    case MatrixKind::Density:
      rep.pass = rep.hermiticity_residual <= tol &&
                 rep.min_eigenvalue >= -tol && rep.trace_error <= tol;
      break;
  }
  return rep;
}

}  // namespace thermops
