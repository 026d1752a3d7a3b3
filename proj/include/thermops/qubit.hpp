#ifndef THERMOPS_QUBIT_HPP
#define THERMOPS_QUBIT_HPP

#include <array>
#include <optional>
#include <vector>

#include "thermops/thermal.hpp"

namespace thermops {

/// Coordinates of a qubit covariant Gibbs-preserving map: the Choi matrix in
/// the energy eigenbasis is determined by (lambda, r, phi) together with
/// q = e^{-beta dE}; q = 1 encodes infinite temperature.
struct QubitParams {
  double lambda = 0;
  double r = 0;
  double phi = 0;
  double q = 1;
};

struct SemigroupElement {
  double lambda = 0;
  Complex c{1.0, 0.0};
};

/// Feasibility bound: r <= sqrt((1-lambda)(1-lambda q)).
double ento_r_bound(double lambda, double q);

/// Reads the two defining matrix elements of a qubit map,
/// (<g1, S(|g2><g2|) g1>, <g1, S(|g1><g2|) g2>).
SemigroupElement psi(const QuantumChannel& s);

/// Channel with the canonical Choi matrix for the given coordinates.
/// Rejects parameters violating the feasibility bound.
QuantumChannel psi_inv(const QubitParams& p, double tol = kDefaultTol);

/// Semigroup operation: (l1 + l2 - l1 l2 (1+q), c1 c2).
SemigroupElement circ(const SemigroupElement& e1, const SemigroupElement& e2,
                      double q);

/// Inverse under circ; empty when lambda = 1/(1+q) or c = 0 within tol.
std::optional<SemigroupElement> inverse_element(const SemigroupElement& e,
                                                double q,
                                                double tol = kDefaultTol);

enum class Membership {
  InteriorTO,         // thermal operation (relative interior)
  DephasingTO,        // lambda = 0 dephasing, a thermal operation
  EnTOBoundaryNotTO,  // extreme covariant map, not a thermal operation
  OutsideEnTO
};

Membership membership(const QubitParams& p, double tol = kDefaultTol);

const char* membership_name(Membership m);

struct FiniteExtremeResult {
  ThermalOpSpec spec;
  SemigroupElement psi_at_m;  // of the realized channel
  SemigroupElement limit;     // closed-form m -> infinity value
};

/// Finite-temperature approximants of the extreme covariant maps: spin bath
/// with block sizes growing geometrically with ratio mu = num/den in
/// (1, 1/q), diagonal contraction blocks completed cosine-sine style.
FiniteExtremeResult extreme_approx_finite(double lambda, std::int64_t mu_num,
                                          std::int64_t mu_den, std::int64_t m,
                                          double q,
                                          std::int64_t dim_cap = kDimCap);

/// Closed-form m -> infinity value of the finite-temperature family.
SemigroupElement finite_extreme_limit(double lambda, double mu, double q);

struct ExtremeFamilyResult {
  ThermalOpSpec spec;
  SemigroupElement psi_exact;  // closed form at this m
};

/// Infinite-temperature approximants on the non-degenerate spin bath
/// diag(0, dE, ..., (m-1) dE) with maximally mixed bath state.
ExtremeFamilyResult extreme_approx_infinite(double lambda, double phi,
                                            std::int64_t m);

/// Interior approximants at q in (0,1]; dispatches to the infinite-
/// temperature family at q = 1.
ExtremeFamilyResult interior_family(double lambda, double phi, std::int64_t m,
                                    double q);

struct DephasingPhasesResult {
  ThermalOpSpec spec;
  Complex c;    // Gibbs-weighted phase sum; realized psi c-component is
                // its conjugate
  double r_m;   // inner radius of the reachable annulus, 2(1-q)/(1-q^m) - 1
};

/// Diagonal-unitary dephasing 1_m (+) diag(e^{i phi_j}) on the truncated
/// single-mode bath.
DephasingPhasesResult dephasing_from_phases(const std::vector<double>& phases,
                                            double q);

/// Partial dephasing with coherence factor gamma, |gamma| <= 1, via a
/// trivial two-level bath and a 2x2 unitary of trace 2 gamma.
ThermalOpSpec dephasing_spec(Complex gamma, double q = 1.0);

/// Full dephasing in n dimensions from a fully degenerate n-level bath and
/// relative-phase blocks.
ThermalOpSpec full_dephasing_nd(std::int64_t n, double q = 1.0);

struct ThermalCone {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> boundary;  // r at the feasibility bound
  Eigen::Vector3d gibbs_point;
  Eigen::Vector3d input_point;
};

/// Image of the input Bloch vector under the covariant Gibbs-preserving maps
/// sampled on a (lambda, r/bound, phi) grid.
ThermalCone thermal_cone(const Eigen::Vector3d& bloch, double q,
                         std::array<int, 3> grid);

}  // namespace thermops

#endif
