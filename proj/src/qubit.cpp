#include "thermops/qubit.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace thermops {

namespace {

constexpr double kPi = std::numbers::pi;

void require_q(double q) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("q must be in (0,1]");
}

CMat scalar_block(Complex v) {
  CMat b(1, 1);
  b(0, 0) = v;
  return b;
}

}  // namespace

double ento_r_bound(double lambda, double q) {
  const double s = (1.0 - lambda) * (1.0 - lambda * q);
  return s <= 0.0 ? 0.0 : std::sqrt(s);
}

SemigroupElement psi(const QuantumChannel& s) {
  if (s.dim() != 2) throw std::invalid_argument("psi: channel must be a qubit");
  return {s.choi()(2, 2).real(), s.choi()(0, 3)};
}

QuantumChannel psi_inv(const QubitParams& p, double tol) {
  require_q(p.q);
  if (p.lambda < -tol || p.lambda > 1.0 + tol)
    throw std::domain_error("psi_inv: lambda must lie in [0,1]");
  if (p.r < -tol) throw std::domain_error("psi_inv: r must be >= 0");
  const double bound = ento_r_bound(p.lambda, p.q);
  if (p.r > bound + tol)
    throw std::domain_error("psi_inv: r = " + std::to_string(p.r) +
                            " exceeds the feasibility bound sqrt((1-l)(1-lq)) = " +
                            std::to_string(bound));
  const Complex coh = p.r * std::exp(Complex(0.0, p.phi));
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = 1.0 - p.lambda * p.q;
  c(1, 1) = p.lambda * p.q;
  c(2, 2) = p.lambda;
  c(3, 3) = 1.0 - p.lambda;
  c(0, 3) = coh;
  c(3, 0) = std::conj(coh);
  return QuantumChannel(2, std::move(c));
}

SemigroupElement circ(const SemigroupElement& e1, const SemigroupElement& e2,
                      double q) {
  require_q(q);
  return {e1.lambda + e2.lambda - e1.lambda * e2.lambda * (1.0 + q),
          e1.c * e2.c};
}

std::optional<SemigroupElement> inverse_element(const SemigroupElement& e,
                                                double q, double tol) {
  require_q(q);
  const double denom = e.lambda * (1.0 + q) - 1.0;
  if (std::abs(denom) <= tol || std::abs(e.c) <= tol) return std::nullopt;
  return SemigroupElement{e.lambda / denom, 1.0 / e.c};
}

Membership membership(const QubitParams& p, double tol) {
  require_q(p.q);
  const double bound = ento_r_bound(p.lambda, p.q);
  if (p.r > bound + tol) return Membership::OutsideEnTO;
  if (p.lambda <= tol) return Membership::DephasingTO;
  if (std::abs(p.r - bound) <= tol) return Membership::EnTOBoundaryNotTO;
  return Membership::InteriorTO;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::InteriorTO: return "InteriorTO";
    case Membership::DephasingTO: return "DephasingTO";
    case Membership::EnTOBoundaryNotTO: return "EnTOBoundaryNotTO";
    case Membership::OutsideEnTO: return "OutsideEnTO";
  }
  return "?";
}

FiniteExtremeResult extreme_approx_finite(double lambda, std::int64_t mu_num,
                                          std::int64_t mu_den, std::int64_t m,
                                          double q, std::int64_t dim_cap) {
  if (!(q > 0.0) || q >= 1.0)
    throw std::invalid_argument(
        "extreme_approx_finite: requires finite temperature q in (0,1)");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("extreme_approx_finite: lambda in [0,1]");
  if (m < 2) throw std::invalid_argument("extreme_approx_finite: m >= 2");
  if (mu_num <= 0 || mu_den <= 0)
    throw std::invalid_argument("extreme_approx_finite: bad rational mu");
  const std::int64_t g = std::gcd(mu_num, mu_den);
  mu_num /= g;
  mu_den /= g;
  const double mu = static_cast<double>(mu_num) / static_cast<double>(mu_den);
  if (!(mu > 1.0) || !(mu < 1.0 / q))
    throw std::invalid_argument(
        "extreme_approx_finite: mu must lie in (1, 1/q)");

  // alpha_0 = den^{m-1} is the smallest integer making every block size
  // alpha_j = alpha_0 mu^j an integer.
  std::vector<std::int64_t> alphas(static_cast<std::size_t>(m));
  {
    std::int64_t a0 = 1;
    for (std::int64_t j = 0; j + 1 < m; ++j) {
      if (a0 > dim_cap / mu_den)
        throw DimensionCapError("extreme_approx_finite: alpha_0 overflow");
      a0 *= mu_den;
    }
    std::int64_t num_pow = 1, den_pow = a0, total = 0;
    for (std::int64_t j = 0; j < m; ++j) {
      alphas[static_cast<std::size_t>(j)] = num_pow * den_pow;
      total += alphas[static_cast<std::size_t>(j)];
      if (total > dim_cap / 2)
        throw DimensionCapError(
            "extreme_approx_finite: bath dimension exceeds cap");
      if (j + 1 < m) {
        num_pow *= mu_num;
        den_pow /= mu_den;
      }
    }
  }

  const double gamma = std::sqrt((1.0 - lambda) / (1.0 - lambda / mu));
  // Diagonal contraction recursion: D_1 = 1, A_j = D_j (+) 1,
  // D_{j+1} = gamma A_j; completed to unitaries cosine-sine style.
  std::vector<CMat> blocks(static_cast<std::size_t>(m) + 1);
  blocks[0] = CMat::Identity(alphas[0], alphas[0]);
  RVec d_diag = RVec::Ones(alphas[0]);  // diag of D_j
  for (std::int64_t j = 1; j < m; ++j) {
    const auto aj = alphas[static_cast<std::size_t>(j)];
    const auto ajm = alphas[static_cast<std::size_t>(j - 1)];
    RVec a_diag(aj);
    a_diag.head(ajm) = d_diag;
    a_diag.tail(aj - ajm).setOnes();
    CMat u = CMat::Zero(aj + ajm, aj + ajm);
    for (Eigen::Index t = 0; t < aj; ++t) u(t, t) = a_diag(t);
    for (Eigen::Index t = 0; t < ajm; ++t) {
      const double s = std::sqrt(std::max(0.0, 1.0 - a_diag(t) * a_diag(t)));
      u(t, aj + t) = s;
      u(aj + t, t) = -s;
      u(aj + t, aj + t) = a_diag(t);
    }
    blocks[static_cast<std::size_t>(j)] = std::move(u);
    d_diag = gamma * a_diag;
  }
  blocks[static_cast<std::size_t>(m)] =
      CMat::Identity(alphas[static_cast<std::size_t>(m - 1)],
                     alphas[static_cast<std::size_t>(m - 1)]);

  SpinBlockSpec sbs{1.0, alphas, std::move(blocks)};
  auto res = spin_block_choi(sbs, InverseTemperature::from_q(q));
  FiniteExtremeResult out{std::move(res.assembled), {}, {}};
  out.psi_at_m = psi(realize(out.spec));
  out.limit = finite_extreme_limit(lambda, mu, q);
  return out;
}

SemigroupElement finite_extreme_limit(double lambda, double mu, double q) {
  const double denom = mu - lambda - mu * q * (1.0 - lambda);
  const double root = std::sqrt(mu * (1.0 - lambda) * (mu - lambda));
  SemigroupElement e;
  e.lambda = lambda * mu * (mu - 1.0) * q / denom;
  e.c = root * q + (1.0 - mu * q) * (1.0 + root * lambda * q / denom);
  return e;
}

ExtremeFamilyResult extreme_approx_infinite(double lambda, double phi,
                                            std::int64_t m) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("extreme_approx_infinite: lambda in [0,1]");
  if (m < 2) throw std::invalid_argument("extreme_approx_infinite: m >= 2");
  const double sl = std::sqrt(lambda), cl = std::sqrt(1.0 - lambda);
  const Complex ph = std::exp(Complex(0.0, -phi));
  std::vector<CMat> blocks(static_cast<std::size_t>(m) + 1);
  blocks[0] = scalar_block(1.0);
  for (std::int64_t j = 1; j < m; ++j) {
    CMat u(2, 2);
    u << cl, sl, -sl * ph, cl * ph;
    blocks[static_cast<std::size_t>(j)] = u;
  }
  blocks[static_cast<std::size_t>(m)] = scalar_block(1.0);
  SpinBlockSpec sbs{1.0, std::vector<std::int64_t>(m, 1), std::move(blocks)};
  auto res = spin_block_choi(sbs, InverseTemperature(0.0));
  const double md = static_cast<double>(m);
  const Complex eip = std::exp(Complex(0.0, phi));
  SemigroupElement exact;
  exact.lambda = lambda * (md - 1.0) / md;
  exact.c = (1.0 - lambda) * eip +
            cl * (1.0 + eip * (1.0 - 2.0 * cl)) / md;
  return {std::move(res.assembled), exact};
}

ExtremeFamilyResult interior_family(double lambda, double phi, std::int64_t m,
                                    double q) {
  require_q(q);
  if (q == 1.0) return extreme_approx_infinite(lambda, phi, m);
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("interior_family: lambda in [0,1]");
  if (m < 2) throw std::invalid_argument("interior_family: m >= 2");
  const double gamma = std::sqrt((1.0 - lambda) / (1.0 - lambda * q));
  const Complex ph = std::exp(Complex(0.0, -phi));
  std::vector<CMat> blocks(static_cast<std::size_t>(m) + 1);
  blocks[0] = scalar_block(1.0);
  for (std::int64_t j = 1; j < m; ++j) {
    const double gj = std::pow(gamma, static_cast<double>(j));
    const double s = std::sqrt(std::max(0.0, 1.0 - gj * gj));
    CMat u(2, 2);
    u << gj, Complex(0.0, s), Complex(0.0, s) * ph, gj * ph;
    blocks[static_cast<std::size_t>(j)] = u;
  }
  blocks[static_cast<std::size_t>(m)] = scalar_block(ph);
  SpinBlockSpec sbs{1.0, std::vector<std::int64_t>(m, 1), std::move(blocks)};
  auto res = spin_block_choi(sbs, InverseTemperature::from_q(q));

  const double md = static_cast<double>(m);
  const double qm = std::pow(q, md);
  const double qm1 = std::pow(q, md - 1.0);
  const double g2q = gamma * gamma * q;
  const double g2qm1 = std::pow(g2q, md - 1.0);
  const double z = (1.0 - qm) / (1.0 - q);
  SemigroupElement exact;
  exact.lambda =
      ((1.0 - qm1) / (1.0 - q) - gamma * gamma * (1.0 - g2qm1) / (1.0 - g2q)) /
      z;
  const Complex eip = std::exp(Complex(0.0, phi));
  exact.c = eip *
            (gamma * (1.0 - g2qm1) / (1.0 - g2q) +
             std::pow(gamma, md - 1.0) * qm1) /
            z;
  return {std::move(res.assembled), exact};
}

DephasingPhasesResult dephasing_from_phases(const std::vector<double>& phases,
                                            double q) {
  require_q(q);
  const auto m = static_cast<Eigen::Index>(phases.size());
  if (m < 1) throw std::invalid_argument("dephasing_from_phases: empty");
  const double md = static_cast<double>(m);
  std::vector<double> bath_levels(phases.size());
  std::iota(bath_levels.begin(), bath_levels.end(), 0.0);
  CMat u = CMat::Zero(2 * m, 2 * m);
  for (Eigen::Index b = 0; b < m; ++b) {
    u(b, b) = 1.0;
    u(m + b, m + b) = std::exp(Complex(0.0, phases[static_cast<std::size_t>(b)]));
  }
  ThermalOpSpec spec;
  spec.system = DiagonalHamiltonian({0.0, 1.0}, {1, 1});
  spec.bath = DiagonalHamiltonian::from_energies(bath_levels);
  spec.unitary = std::move(u);
  spec.beta = InverseTemperature::from_q(q);
  Complex c{0.0, 0.0};
  double z = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double w = std::pow(q, static_cast<double>(j));
    c += w * std::exp(Complex(0.0, phases[static_cast<std::size_t>(j)]));
    z += w;
  }
  c /= z;
  const double r_m = (q == 1.0) ? 2.0 / md - 1.0
                                : 2.0 * (1.0 - q) / (1.0 - std::pow(q, md)) - 1.0;
  return {std::move(spec), c, r_m};
}

ThermalOpSpec dephasing_spec(Complex gamma, double q) {
  require_q(q);
  if (std::abs(gamma) > 1.0 + 1e-12)
    throw std::domain_error("dephasing_spec: |gamma| must be <= 1");
  const double theta = std::acos(std::min(1.0, std::abs(gamma)));
  const double psi_arg = std::arg(gamma);  // arg(0) = 0 is fine here
  CMat u = CMat::Zero(4, 4);
  u(0, 0) = u(1, 1) = 1.0;
  u(2, 2) = std::exp(Complex(0.0, psi_arg + theta));
  u(3, 3) = std::exp(Complex(0.0, psi_arg - theta));
  ThermalOpSpec spec;
  spec.system = DiagonalHamiltonian({0.0, 1.0}, {1, 1});
  spec.bath = DiagonalHamiltonian({0.0}, {2});
  spec.unitary = std::move(u);
  spec.beta = InverseTemperature::from_q(q);
  return spec;
}

ThermalOpSpec full_dephasing_nd(std::int64_t n, double q) {
  require_q(q);
  if (n < 2) throw std::invalid_argument("full_dephasing_nd: n >= 2");
  const auto nn = static_cast<Eigen::Index>(n);
  CMat u = CMat::Zero(nn * nn, nn * nn);
  for (Eigen::Index j = 0; j < nn; ++j)
    for (Eigen::Index k = 0; k < nn; ++k)
      u(j * nn + k, j * nn + k) = std::exp(
          Complex(0.0, 2.0 * kPi * static_cast<double>((j + 1) * k) /
                           static_cast<double>(n)));
  std::vector<double> sys_levels(static_cast<std::size_t>(n));
  std::iota(sys_levels.begin(), sys_levels.end(), 0.0);
  ThermalOpSpec spec;
  spec.system = DiagonalHamiltonian::from_energies(sys_levels);
  spec.bath = DiagonalHamiltonian({0.0}, {n});
  spec.unitary = std::move(u);
  spec.beta = InverseTemperature::from_q(q);
  return spec;
}

ThermalCone thermal_cone(const Eigen::Vector3d& bloch, double q,
                         std::array<int, 3> grid) {
  require_q(q);
  if (bloch.norm() > 1.0 + 1e-12)
    throw std::invalid_argument("thermal_cone: Bloch vector outside the ball");
  const auto [gl, gr, gp] = grid;
  if (gl < 2 || gr < 2 || gp < 1)
    throw std::invalid_argument("thermal_cone: grid too coarse");
  const double x = bloch(0), y = bloch(1), z = bloch(2);
  auto image = [&](double lambda, double r, double phi) {
    const Complex coh = r * std::exp(Complex(0.0, phi)) * Complex(x, -y);
    const double zz = lambda * (1.0 - q) + z * (1.0 - lambda * (1.0 + q));
    return Eigen::Vector3d(coh.real(), -coh.imag(), zz);
  };
  ThermalCone cone;
  cone.points.reserve(static_cast<std::size_t>(gl) * gr * gp + 2);
  for (int i = 0; i < gl; ++i) {
    const double lambda = static_cast<double>(i) / (gl - 1);
    const double bound = ento_r_bound(lambda, q);
    for (int j = 0; j < gr; ++j) {
      const double r = bound * static_cast<double>(j) / (gr - 1);
      for (int k = 0; k < gp; ++k) {
        const double phi = -kPi + 2.0 * kPi * static_cast<double>(k) / gp;
        cone.points.push_back(image(lambda, r, phi));
      }
    }
    for (int k = 0; k < gp; ++k) {
      const double phi = -kPi + 2.0 * kPi * static_cast<double>(k) / gp;
      cone.boundary.push_back(image(lambda, bound, phi));
    }
  }
  cone.gibbs_point = Eigen::Vector3d(0.0, 0.0, (1.0 - q) / (1.0 + q));
  cone.input_point = bloch;
  cone.points.push_back(cone.gibbs_point);
  cone.points.push_back(cone.input_point);
  return cone;
}

}  // namespace thermops
