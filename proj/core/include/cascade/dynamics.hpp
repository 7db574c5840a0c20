// Driven three-level cascade atom |1>,|2>,|3> in the rotating frame.
//   H = -delta1 |2><2| - (delta1+delta2) |3><3|
//       + omega1 (|1><2| + |2><1|) + omega2 (|2><3| + |3><2|)
// with trace-preserving Lindblad decay at rate gamma2 on |1><2| and gamma3
// on |2><3|. All rates and frequencies are in units of the scaling lifetime.
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cascade {

struct SystemParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double gamma2 = 6.0;
  double gamma3 = 1.0;
};

// Throws std::invalid_argument on non-finite entries or negative decay rates.
void validate_params(const SystemParams& p);

Eigen::Matrix3cd build_hamiltonian(const SystemParams& p);

// Right-hand side of the master equation: -i[H,rho] + sum_k gamma_k D[L_k]rho
// with D[L]rho = L rho L+ - (L+L rho + rho L+L)/2. Trace-free by construction.
Eigen::Matrix3cd lindblad_rhs(const SystemParams& p, const Eigen::Matrix3cd& rho);

struct TracePoint {
  double t;
  Eigen::Matrix3cd rho;
};

struct EvolveOptions {
  double t_max = 20.0;
  double dt = 1e-3;
  int sample_every = 10; // steps between samples; the final state at t_max is always sampled
};

// Fixed-step fourth-order Runge-Kutta. Each step re-symmetrizes and
// renormalizes the trace; sampled states are positivity-checked and the run
// aborts (std::runtime_error) if a sample's min eigenvalue drops below -1e-6.
std::vector<TracePoint> evolve(const SystemParams& p, const Eigen::Matrix3cd& rho0,
                               const EvolveOptions& opts);

// 9x9 generator L acting on the column-major vectorization of rho:
// vec(rhs) = L vec(rho).
Eigen::MatrixXcd liouvillian(const SystemParams& p);

// Steady state from the SVD null space of the 9x9 Liouvillian, Hermitized
// and trace-normalized.
Eigen::Matrix3cd steady_state_nullspace(const SystemParams& p);

struct SteadyResult {
  Eigen::Matrix3cd rho;     // integrated steady state
  double residual;          // max |lindblad_rhs| at convergence
  double t_converged;       // integration time at convergence
  double nullspace_residual; // elementwise distance to the null-space solution
                             // (or |L vec(rho)| when the null space is degenerate)
  bool nullspace_degenerate;
};

// Integrates from the ground state |1><1| with fixed dt until
// max |lindblad_rhs| < tol, then cross-checks against the Liouvillian null
// space (residual must stay below 10*tol). Throws std::runtime_error on
// non-convergence before t_cap or on a failed null-space check.
SteadyResult steady_state(const SystemParams& p, double tol = 1e-9,
                          double t_cap = 50.0, double dt = 1e-3);

} // namespace cascade
