#include "cascade/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cascade/qmath.hpp"

namespace cascade {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kWindowNodes = 96; // Chebyshev-Gauss nodes per theta window
constexpr int kCellNodes = 24;   // nodes per piece when cell-averaging
constexpr int kHalo = 4;         // cells around a feature that get averaged

// Closed forms for the concurrence band of a rank-2 plane: with p = xy,
// r = sqrt(z^2 + p^2), phi = atan2(p, z),
//   U(theta) = p + r sin(theta - phi),
//   L(theta) = |g(theta)|, g(theta) = r sin(theta + phi) - p,
// so sup U = r + p = e_max and the stationary maximum of g is r - p =
// z^2/e_max (the cusp). g also vanishes at theta = 0 and pi - 2 phi.
struct Plane {
  double p, r, phi;
  Plane(double x, double y, double z)
      : p(x * y), r(std::hypot(z, x * y)), phi(std::atan2(x * y, z)) {}
  double U(double t) const { return p + r * std::sin(t - phi); }
  double L(double t) const { return std::abs(r * std::sin(t + phi) - p); }
};

// Theta intervals where L < E < U. Both bound functions are monotone between
// consecutive critical angles, so every crossing is found by bisection.
void window_set(double E, const Plane& c,
                std::vector<std::pair<double, double>>& out) {
  out.clear();
  double crit[5];
  int nc = 0;
  crit[nc++] = 0.0;
  const double cand[3] = {0.5 * kPi - c.phi, kPi - 2.0 * c.phi, 0.5 * kPi + c.phi};
  for (double t : cand)
    if (t > 1e-15 && t < kPi - 1e-15) crit[nc++] = t;
  crit[nc++] = kPi;
  std::sort(crit, crit + nc);

  double pts[16];
  int np = 0;
  pts[np++] = 0.0;
  pts[np++] = kPi;
  for (int which = 0; which < 2; ++which) {
    auto f = [&](double t) {
      return which == 0 ? c.U(t) - E : c.L(t) - E;
    };
    for (int s = 0; s + 1 < nc; ++s) {
      double a = crit[s], b = crit[s + 1];
      double fa = f(a), fb = f(b);
      if ((fa < 0.0) == (fb < 0.0)) continue;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      pts[np++] = 0.5 * (a + b);
    }
  }
  std::sort(pts, pts + np);
  for (int i = 0; i + 1 < np; ++i) {
    double a = pts[i], b = pts[i + 1];
    if (b - a < 1e-14) continue;
    double m = 0.5 * (a + b);
    if (c.L(m) < E && E < c.U(m)) out.emplace_back(a, b);
  }
}

// Pointwise density: per window, Chebyshev-Gauss nodes absorb the
// inverse-square-root behavior at both endpoints.
double pdf2_point(double E, const Plane& c) {
  if (E <= 0.0 || E >= 1.0) return 0.0;
  static thread_local std::vector<std::pair<double, double>> wins;
  window_set(E, c, wins);
  double total = 0.0;
  for (auto [a, b] : wins) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int j = 1; j <= kWindowNodes; ++j) {
      double u = std::cos((2 * j - 1) * kPi / (2 * kWindowNodes));
      double t = mid + half * u;
      double Ut = c.U(t), Lt = c.L(t);
      double g = (E * E - Lt * Lt) * (Ut * Ut - E * E);
      acc += std::sqrt(1.0 - u * u) * std::sin(t) / std::sqrt(std::max(g, 1e-300));
    }
    total += (kPi / kWindowNodes) * half * acc;
  }
  return E / kPi * total;
}

// Mean of f over [a, b], splitting at interior feature points; Chebyshev-type
// nodes again absorb integrable inverse-square-root edges.
double cell_average(const std::function<double(double)>& f, double a, double b,
                    const std::vector<double>& feats) {
  std::vector<double> cuts{a};
  for (double F : feats)
    if (F > a && F < b) cuts.push_back(F);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double mid = 0.5 * (cuts[i] + cuts[i + 1]), half = 0.5 * (cuts[i + 1] - cuts[i]);
    if (half <= 0.0) continue;
    double piece = 0.0;
    for (int j = 1; j <= kCellNodes; ++j) {
      double u = std::cos((2 * j - 1) * kPi / (2 * kCellNodes));
      piece += std::sqrt(1.0 - u * u) * f(mid + half * u);
    }
    acc += (kPi / kCellNodes) * half * piece;
  }
  return acc / (b - a);
}

// Uniform grid sampling: pointwise everywhere except within kHalo cells of a
// feature, where the sample is the cell average; the trapezoid rule over such
// samples telescopes to the exact mass across the feature.
void sample_curve(const std::function<double(double)>& f,
                  const std::vector<double>& feats, int n_bins, PdfCurve& out) {
  const double h = 1.0 / (n_bins - 1);
  out.grid.resize(n_bins);
  out.density.assign(n_bins, 0.0);
  for (int k = 0; k < n_bins; ++k) {
    double E = k * h;
    out.grid[k] = E;
    bool near = false;
    for (double F : feats)
      if (std::abs(E - F) <= kHalo * h) { near = true; break; }
    if (near) {
      double a = std::max(0.0, E - 0.5 * h), b = std::min(1.0, E + 0.5 * h);
      out.density[k] = cell_average(f, a, b, feats);
    } else {
      out.density[k] = f(E);
    }
  }
}

double trapezoid(const std::vector<double>& grid, const std::vector<double>& dens) {
  double m = 0.0;
  for (size_t k = 0; k + 1 < grid.size(); ++k)
    m += 0.5 * (dens[k] + dens[k + 1]) * (grid[k + 1] - grid[k]);
  return m;
}

void normalize_curve(PdfCurve& out) {
  double mass = trapezoid(out.grid, out.density);
  out.defect = std::abs(mass - 1.0);
  if (mass > 0.0)
    for (double& d : out.density) d /= mass;
}

void require_bins(int n_bins) {
  if (n_bins < 16) throw std::invalid_argument("n_bins must be at least 16");
}

} // namespace

std::array<double, 4> nested_weights(const std::array<double, 4>& eigenvalues) {
  double lam[5] = {0, 0, 0, 0, 0};
  double sum = 0.0;
  for (int d = 0; d < 4; ++d) {
    if (eigenvalues[d] < -1e-9)
      throw std::invalid_argument("nested_weights: eigenvalue below -1e-9");
    if (d > 0 && eigenvalues[d] > eigenvalues[d - 1] + 1e-12)
      throw std::invalid_argument("nested_weights: eigenvalues must be non-increasing");
    lam[d] = std::max(eigenvalues[d], 0.0);
    sum += lam[d];
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw std::invalid_argument("nested_weights: eigenvalues must sum to 1");
  std::array<double, 4> w{};
  for (int d = 0; d < 4; ++d)
    w[d] = (d + 1) * std::max(lam[d] - lam[d + 1], 0.0);
  return w;
}

EntanglementInvariants invariants_from_state(const Eigen::Matrix4cd& rhoG) {
  validate_density(rhoG, "invariants_from_state input");
  HermitianSpectrum spec = hermitian_eig(rhoG);

  std::array<double, 4> lam;
  for (int d = 0; d < 4; ++d) lam[d] = spec.eigenvalues(d);
  auto w = nested_weights(lam);

  EntanglementInvariants inv;
  inv.w1 = w[0]; inv.w2 = w[1]; inv.w3 = w[2]; inv.w4 = w[3];
  inv.e1 = concurrence_pure(Eigen::Vector4cd(spec.eigenvectors.col(0)));
  inv.e_perp = concurrence_pure(Eigen::Vector4cd(spec.eigenvectors.col(3)));

  Eigen::Vector4cd v1 = spec.eigenvectors.col(0), v2 = spec.eigenvectors.col(1);
  Eigen::Matrix4cd rho2 = 0.5 * (v1 * v1.adjoint() + v2 * v2.adjoint());
  double PA2 = 1.0 - 4.0 * partial_trace(rho2, Subsystem::A).determinant().real();
  double PB2 = 1.0 - 4.0 * partial_trace(rho2, Subsystem::B).determinant().real();
  PA2 = std::clamp(PA2, 0.0, 1.0);
  PB2 = std::clamp(PB2, 0.0, 1.0);

  // Exact inversion of the polarizations of the canonical rank-2 plane
  // {|00>, x|01> + y|10> + z|11>}: P_A^2 = x^2 (1 - y^2), P_B^2 = y^2 (1 - x^2).
  // The discriminant equals z^4, so it is clamped only against round-off.
  const double D = PA2 - PB2;
  const double S = 1.0 - D;
  const double disc = std::max(S * S - 4.0 * PB2, 0.0);
  const double y2 = std::max(0.5 * (S - std::sqrt(disc)), 0.0);
  const double x2 = std::max(y2 + D, 0.0);
  const double z2 = std::max(1.0 - x2 - y2, 0.0);
  inv.x = std::sqrt(x2);
  inv.y = std::sqrt(y2);
  inv.z = std::sqrt(z2);
  const double p = inv.x * inv.y;
  inv.e_max = p + std::hypot(inv.z, p);
  inv.e_cusp = inv.e_max > 0.0 ? z2 / inv.e_max : 0.0;
  return inv;
}

PdfCurve pdf_rho2(double x, double y, double z, int n_bins) {
  require_bins(n_bins);
  if (x < 0.0 || y < 0.0 || z < 0.0)
    throw std::invalid_argument("pdf_rho2: invariants must be non-negative");
  if (std::abs(x * x + y * y + z * z - 1.0) > 1e-9)
    throw std::invalid_argument("pdf_rho2: invariants must satisfy x^2+y^2+z^2 = 1");

  PdfCurve out;
  const double p = x * y;
  if (p < 1e-12 && z < 1e-12) {
    // Fully separable plane: every superposition is a product state.
    const double h = 1.0 / (n_bins - 1);
    out.grid.resize(n_bins);
    for (int k = 0; k < n_bins; ++k) out.grid[k] = k * h;
    out.density.assign(n_bins, 0.0);
    out.deltas.emplace_back(0.0, 1.0);
    return out;
  }

  std::function<double(double)> f;
  std::vector<double> feats;
  if (p < 1e-12) {
    // Concurrence reduces to 2 z |c1 c2|: density E / (z sqrt(z^2 - E^2)).
    f = [z](double E) {
      return (E > 0.0 && E < z) ? E / (z * std::sqrt(z * z - E * E)) : 0.0;
    };
    feats = {z};
  } else if (z < 1e-12) {
    // Uniform on [0, 2xy]; the value at E = 0 is the one-sided limit.
    f = [p](double E) { return E < 2.0 * p ? 0.5 / p : 0.0; };
    feats = {2.0 * p};
  } else {
    Plane plane(x, y, z);
    f = [plane](double E) { return pdf2_point(E, plane); };
    const double e_max = plane.p + plane.r;
    feats = {e_max, z * z / e_max, 2.0 * p};
    std::sort(feats.begin(), feats.end());
  }
  sample_curve(f, feats, n_bins, out);
  normalize_curve(out);
  return out;
}

PdfCurve pdf_rho3(double e_perp, int n_bins) {
  require_bins(n_bins);
  if (e_perp < 0.0 || e_perp > 1.0)
    throw std::invalid_argument("pdf_rho3: e_perp must lie in [0, 1]");
  const double s2 = (1.0 - e_perp) * (1.0 + e_perp);
  if (s2 <= 0.0)
    throw std::invalid_argument("pdf_rho3: e_perp = 1 has degenerate normalization");
  const double s = std::sqrt(s2);
  const double c = e_perp;
  std::function<double(double)> f = [s, c](double E) {
    if (E <= 0.0 || E > 1.0) return 0.0;
    double Eg = std::max(E, c);
    if (Eg >= 1.0) return 0.0;
    return 2.0 * E / s * std::acosh(1.0 / Eg);
  };
  std::vector<double> feats = c > 0.0 ? std::vector<double>{c, 1.0}
                                      : std::vector<double>{1.0};
  PdfCurve out;
  sample_curve(f, feats, n_bins, out);
  normalize_curve(out);
  return out;
}

PdfCurve assemble_pdf(const EntanglementInvariants& inv, int n_bins) {
  require_bins(n_bins);
  if (inv.w4 >= 1e-6)
    throw std::invalid_argument("four-dimensional component unsupported");

  PdfCurve out;
  const double h = 1.0 / (n_bins - 1);
  out.grid.resize(n_bins);
  for (int k = 0; k < n_bins; ++k) out.grid[k] = k * h;
  out.density.assign(n_bins, 0.0);
  out.deltas.emplace_back(inv.e1, inv.w1);

  if (inv.w2 > 1e-14) {
    PdfCurve d2 = pdf_rho2(inv.x, inv.y, inv.z, n_bins);
    if (!d2.deltas.empty()) {
      // Separable rank-2 plane: all of w2 sits at E = 0.
      out.deltas.emplace_back(0.0, inv.w2);
    } else {
      for (int k = 0; k < n_bins; ++k) out.density[k] += inv.w2 * d2.density[k];
      out.defect += inv.w2 * d2.defect;
    }
  }
  if (inv.w3 > 1e-14) {
    PdfCurve d3 = pdf_rho3(inv.e_perp, n_bins);
    for (int k = 0; k < n_bins; ++k) out.density[k] += inv.w3 * d3.density[k];
    out.defect += inv.w3 * d3.defect;
  }
  return out;
}

CdfCurve cdf(const PdfCurve& pdf) {
  CdfCurve out;
  out.grid = pdf.grid;
  out.values.assign(pdf.grid.size(), 0.0);
  double run = 0.0;
  for (size_t k = 0; k < pdf.grid.size(); ++k) {
    if (k > 0)
      run += 0.5 * (pdf.density[k - 1] + pdf.density[k]) * (pdf.grid[k] - pdf.grid[k - 1]);
    double steps = 0.0;
    for (auto [loc, wgt] : pdf.deltas)
      if (pdf.grid[k] >= loc) steps += wgt;
    out.values[k] = run + steps;
  }
  return out;
}

PdfCurve mc_pdf_oracle(const std::vector<Eigen::Vector4cd>& basis, long n_samples,
                       std::uint64_t seed, int n_bins) {
  require_bins(n_bins);
  const int d = static_cast<int>(basis.size());
  if (d != 2 && d != 3)
    throw std::invalid_argument("mc_pdf_oracle: basis must hold 2 or 3 states");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      double expect = i == j ? 1.0 : 0.0;
      if (std::abs(basis[i].dot(basis[j]) - Complex(expect, 0.0)) > 1e-10)
        throw std::invalid_argument("mc_pdf_oracle: basis not orthonormal within 1e-10");
    }
  if (n_samples < 10000)
    throw std::invalid_argument("mc_pdf_oracle: need at least 10^4 samples");

  const double h = 1.0 / (n_bins - 1);
  std::vector<long> counts(n_bins, 0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Complex coeff[3];
  for (long s = 0; s < n_samples; ++s) {
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      coeff[i] = Complex(gauss(rng), gauss(rng));
      norm2 += std::norm(coeff[i]);
    }
    const double inv_norm = 1.0 / std::sqrt(norm2);
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    for (int i = 0; i < d; ++i) psi += (coeff[i] * inv_norm) * basis[i];
    double E = 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
    int k = static_cast<int>(std::floor(E / h + 0.5));
    counts[std::clamp(k, 0, n_bins - 1)]++;
  }
  PdfCurve out;
  out.grid.resize(n_bins);
  out.density.resize(n_bins);
  for (int k = 0; k < n_bins; ++k) {
    out.grid[k] = k * h;
    double width = (k == 0 || k == n_bins - 1) ? 0.5 * h : h;
    out.density[k] = static_cast<double>(counts[k]) / (n_samples * width);
  }
  return out;
}

} // namespace cascade
