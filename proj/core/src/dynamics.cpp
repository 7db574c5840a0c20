#include "cascade/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cascade/qmath.hpp"

namespace cascade {

void validate_params(const SystemParams& p) {
  const double v[6] = {p.omega1, p.omega2, p.delta1, p.delta2, p.gamma2, p.gamma3};
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument("SystemParams: non-finite entry");
  if (p.gamma2 < 0.0 || p.gamma3 < 0.0)
    throw std::invalid_argument("SystemParams: decay rates must be non-negative");
}

Eigen::Matrix3cd build_hamiltonian(const SystemParams& p) {
  validate_params(p);
  Eigen::Matrix3cd H = Eigen::Matrix3cd::Zero();
  H(1, 1) = -p.delta1;
  H(2, 2) = -(p.delta1 + p.delta2);
  H(0, 1) = H(1, 0) = p.omega1;
  H(1, 2) = H(2, 1) = p.omega2;
  return H;
}

namespace {

// Dissipators written out for the cascade jump operators |1><2| and |2><3|:
// gamma2 D[|1><2|] feeds rho22 into rho11 and damps the |2> coherences;
// gamma3 D[|2><3|] feeds rho33 into rho22 and damps the |3> coherences.
inline Eigen::Matrix3cd rhs_impl(const Eigen::Matrix3cd& H, double g2, double g3,
                                 const Eigen::Matrix3cd& rho) {
  const std::complex<double> I(0.0, 1.0);
  Eigen::Matrix3cd out = -I * (H * rho - rho * H);
  out(0, 0) += g2 * rho(1, 1);
  out(1, 1) += g3 * rho(2, 2) - g2 * rho(1, 1);
  out(2, 2) -= g3 * rho(2, 2);
  const double h2 = 0.5 * g2, h3 = 0.5 * g3;
  out(0, 1) -= h2 * rho(0, 1);
  out(1, 0) -= h2 * rho(1, 0);
  out(1, 2) -= (h2 + h3) * rho(1, 2);
  out(2, 1) -= (h2 + h3) * rho(2, 1);
  out(0, 2) -= h3 * rho(0, 2);
  out(2, 0) -= h3 * rho(2, 0);
  return out;
}

inline void rk4_step(const Eigen::Matrix3cd& H, double g2, double g3, double dt,
                     Eigen::Matrix3cd& rho) {
  Eigen::Matrix3cd k1 = rhs_impl(H, g2, g3, rho);
  Eigen::Matrix3cd k2 = rhs_impl(H, g2, g3, rho + 0.5 * dt * k1);
  Eigen::Matrix3cd k3 = rhs_impl(H, g2, g3, rho + 0.5 * dt * k2);
  Eigen::Matrix3cd k4 = rhs_impl(H, g2, g3, rho + dt * k3);
  rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
}

inline double min_eigenvalue(const Eigen::Matrix3cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es;
  es.computeDirect(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

} // namespace

Eigen::Matrix3cd lindblad_rhs(const SystemParams& p, const Eigen::Matrix3cd& rho) {
  return rhs_impl(build_hamiltonian(p), p.gamma2, p.gamma3, rho);
}

std::vector<TracePoint> evolve(const SystemParams& p, const Eigen::Matrix3cd& rho0,
                               const EvolveOptions& opts) {
  validate_params(p);
  if (!(opts.dt > 0.0) || !(opts.t_max > 0.0) || opts.sample_every < 1)
    throw std::invalid_argument("evolve: require dt > 0, t_max > 0, sample_every >= 1");
  validate_density(rho0, "evolve initial state");

  const Eigen::Matrix3cd H = build_hamiltonian(p);
  Eigen::Matrix3cd rho = 0.5 * (rho0 + rho0.adjoint());
  rho /= rho.trace().real();

  const long n_steps = static_cast<long>(std::ceil(opts.t_max / opts.dt - 1e-9));
  std::vector<TracePoint> trace;
  trace.reserve(static_cast<size_t>(n_steps / opts.sample_every) + 2);

  auto sample = [&](double t) {
    if (min_eigenvalue(rho) < -1e-6) {
      std::ostringstream os;
      os << "evolve: state lost positivity at t = " << t;
      throw std::runtime_error(os.str());
    }
    trace.push_back({t, rho});
  };

  sample(0.0);
  for (long s = 1; s <= n_steps; ++s) {
    double t0 = (s - 1) * opts.dt;
    double dt = (s == n_steps) ? opts.t_max - t0 : opts.dt;
    rk4_step(H, p.gamma2, p.gamma3, dt, rho);
    double t = (s == n_steps) ? opts.t_max : t0 + dt;
    if (s == n_steps || s % opts.sample_every == 0) sample(t);
  }
  return trace;
}

Eigen::MatrixXcd liouvillian(const SystemParams& p) {
  validate_params(p);
  const std::complex<double> I(0.0, 1.0);
  const Eigen::Matrix3cd H = build_hamiltonian(p);
  Eigen::Matrix3cd J2 = Eigen::Matrix3cd::Zero(); J2(0, 1) = 1.0; // |1><2|
  Eigen::Matrix3cd J3 = Eigen::Matrix3cd::Zero(); J3(1, 2) = 1.0; // |2><3|

  // vec is column-major: rho(i,j) -> vec index i + 3j, so
  // vec(A rho B) = (B^T kron A) vec(rho).
  auto idx = [](int i, int j) { return i + 3 * j; };
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(9, 9);
  auto add_left = [&](const Eigen::Matrix3cd& A, std::complex<double> c) {
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          L(idx(i, j), idx(k, j)) += c * A(i, k);
  };
  auto add_right = [&](const Eigen::Matrix3cd& B, std::complex<double> c) {
    for (int l = 0; l < 3; ++l)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          L(idx(i, j), idx(i, l)) += c * B(l, j);
  };
  auto add_both = [&](const Eigen::Matrix3cd& A, const Eigen::Matrix3cd& B,
                      std::complex<double> c) {
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int j = 0; j < 3; ++j)
            L(idx(i, j), idx(k, l)) += c * A(i, k) * B(l, j);
  };

  add_left(H, -I);
  add_right(H, I);
  const struct { const Eigen::Matrix3cd* J; double g; } ch[2] = {{&J2, p.gamma2}, {&J3, p.gamma3}};
  for (auto& c : ch) {
    Eigen::Matrix3cd JdJ = c.J->adjoint() * (*c.J);
    add_both(*c.J, c.J->adjoint(), c.g);
    add_left(JdJ, -0.5 * c.g);
    add_right(JdJ, -0.5 * c.g);
  }
  return L;
}

Eigen::Matrix3cd steady_state_nullspace(const SystemParams& p) {
  Eigen::MatrixXcd L = liouvillian(p);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(L, Eigen::ComputeFullV);
  Eigen::VectorXcd v = svd.matrixV().col(8);
  Eigen::Matrix3cd rho;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      rho(i, j) = v(i + 3 * j);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  double tr = rho.trace().real();
  if (std::abs(tr) < 1e-12)
    throw std::runtime_error("steady_state_nullspace: null vector has vanishing trace");
  return rho / tr;
}

SteadyResult steady_state(const SystemParams& p, double tol, double t_cap, double dt) {
  validate_params(p);
  if (!(tol > 0.0) || !(t_cap > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("steady_state: require tol, t_cap, dt > 0");

  const Eigen::Matrix3cd H = build_hamiltonian(p);
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  rho(0, 0) = 1.0;

  SteadyResult out{};
  bool converged = false;
  double t = 0.0;
  while (t < t_cap + 0.5 * dt) {
    Eigen::Matrix3cd k1 = rhs_impl(H, p.gamma2, p.gamma3, rho);
    double res = k1.cwiseAbs().maxCoeff();
    if (res < tol) {
      out.residual = res;
      out.t_converged = t;
      converged = true;
      break;
    }
    rk4_step(H, p.gamma2, p.gamma3, dt, rho);
    t += dt;
  }
  if (!converged)
    throw std::runtime_error("steady_state: no convergence before t_cap");
  out.rho = rho;

  // Cross-check against the Liouvillian null space. A (near-)degenerate null
  // space makes the SVD vector ambiguous; fall back to the generator residual.
  Eigen::MatrixXcd L = liouvillian(p);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(L, Eigen::ComputeFullV);
  out.nullspace_degenerate = svd.singularValues()(7) < 1e-9;
  if (out.nullspace_degenerate) {
    Eigen::VectorXcd vec(9);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        vec(i + 3 * j) = rho(i, j);
    out.nullspace_residual = (L * vec).cwiseAbs().maxCoeff();
  } else {
    Eigen::VectorXcd v = svd.matrixV().col(8);
    Eigen::Matrix3cd ns;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        ns(i, j) = v(i + 3 * j);
    ns = 0.5 * (ns + ns.adjoint()).eval();
    ns /= ns.trace().real();
    out.nullspace_residual = (rho - ns).cwiseAbs().maxCoeff();
  }
  if (out.nullspace_residual > 10.0 * tol) {
    std::ostringstream os;
    os << "steady_state: null-space verification failed, residual = "
       << out.nullspace_residual;
    throw std::runtime_error(os.str());
  }
  return out;
}

} // namespace cascade
