// Nested-projector decomposition, invariant parameters, and the analytic
// probability density of pure-state concurrence under the Haar measure on
// nested eigensubspaces, with a Monte-Carlo sampling oracle.
//
// Rank-2 subspaces are characterized by invariants (x, y, z), x^2+y^2+z^2=1:
// a Haar state in the span has concurrence E distributed per
//   P(E) = (E/pi) Integral sin(theta) dtheta / sqrt((E^2-L^2)(U^2-E^2))
// over {theta in [0,pi] : L(theta) < E < U(theta)}, with
//   U(theta) = |z sin(theta) + (1-cos(theta)) x y|,
//   L(theta) = |z sin(theta) - (1-cos(theta)) x y|.
// The support edge is e_max = xy + sqrt(z^2 + x^2 y^2) = sup U and the
// interior cusp sits at e_cusp = z^2 / e_max, the stationary maximum of the
// smooth branch of L.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace cascade {

struct EntanglementInvariants {
  double w1 = 0, w2 = 0, w3 = 0, w4 = 0; // nested-subspace weights, sum 1
  double e1 = 0;                         // concurrence of the top eigenvector
  double x = 0, y = 0, z = 0;            // rank-2 plane invariants
  double e_cusp = 0, e_max = 0;          // cusp location / support edge
  double e_perp = 0;                     // concurrence orthogonal to the rank-3 support
};

// w_d = d * (lambda_d - lambda_{d+1}) with lambda_5 = 0; telescopes so that
// sum_d w_d P_d / d reproduces rho exactly. Input must be non-increasing,
// non-negative within 1e-9 (tiny negatives are clamped), and sum to 1.
std::array<double, 4> nested_weights(const std::array<double, 4>& eigenvalues);

EntanglementInvariants invariants_from_state(const Eigen::Matrix4cd& rhoG);

struct PdfCurve {
  std::vector<std::pair<double, double>> deltas; // (location, weight), kept symbolic
  std::vector<double> grid;                      // uniform on [0,1], n_bins points
  std::vector<double> density;                   // continuous part only
  double defect = 0.0; // |mass - 1| of the continuous part before renormalization
};

struct CdfCurve {
  std::vector<double> grid;
  std::vector<double> values; // non-decreasing, final value 1 within 1e-6
};

// Unit-mass continuous density for a Haar state in a rank-2 plane with
// invariants (x, y, z). Inverse-square-root endpoint singularities are
// handled per window with Chebyshev-Gauss nodes; samples within a few cells
// of an analytic feature point are emitted as cell averages so the trapezoid
// mass stays exact. A fully separable plane (e_max = 0) is returned as a
// delta at 0. Requires n_bins >= 16.
PdfCurve pdf_rho2(double x, double y, double z, int n_bins);

// Unit-mass density P(E) = 2E / sqrt(1 - e_perp^2) * acosh(1 / max(E, e_perp))
// for a Haar state in a rank-3 subspace whose orthogonal state has
// concurrence e_perp. Throws for e_perp = 1 (degenerate normalization).
PdfCurve pdf_rho3(double e_perp, int n_bins);

// Full mixture: delta (e1, w1), the rank-2 and rank-3 continuous parts scaled
// by w2 and w3 (a separable rank-2 plane contributes a delta at 0 instead).
// Throws "four-dimensional component unsupported" when w4 >= 1e-6.
PdfCurve assemble_pdf(const EntanglementInvariants& inv, int n_bins);

// Running trapezoid integral plus step contributions at each delta.
CdfCurve cdf(const PdfCurve& pdf);

// Haar-uniform concurrence histogram over the span of an orthonormal basis
// (2 or 3 states): standard complex-normal coefficients, normalized.
// Deterministic for a fixed seed. Requires n_samples >= 10^4.
PdfCurve mc_pdf_oracle(const std::vector<Eigen::Vector4cd>& basis, long n_samples,
                       std::uint64_t seed, int n_bins);

} // namespace cascade
