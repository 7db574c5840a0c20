// Acceptance suite: exercises every numbered criterion end to end, printing
// one PASS/FAIL line per criterion plus the measured values behind it.
// Exit code 0 only when every criterion passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cascade/dynamics.hpp"
#include "cascade/entanglement.hpp"
#include "cascade/qmath.hpp"
#include "cascade/tomography.hpp"
#include "test_util.hpp"

using namespace cascade;
using Eigen::Matrix3cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct Report {
  std::vector<std::string> lines;
  bool ok = true;
  void sub(bool pass, const std::string& text) {
    lines.push_back(text + (pass ? "  [pass]" : "  [FAIL]"));
    ok &= pass;
  }
  bool flush(int idx, const char* name) {
    std::printf("[%d] %s: %s\n", idx, name, ok ? "PASS" : "FAIL");
    for (const auto& l : lines) std::printf("    %s\n", l.c_str());
    return ok;
  }
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}
std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

Matrix3cd ground() {
  Matrix3cd rho = Matrix3cd::Zero();
  rho(0, 0) = 1.0;
  return rho;
}

struct Preset {
  const char* name;
  SystemParams p;
};
const Preset kPresets[3] = {{"pure", {3.0, 6.0, 0.0, 0.0, 6.0, 1.0}},
                            {"bell", {6.0, 6.0, 0.0, 0.0, 6.0, 1.0}},
                            {"mixed", {6.0, 3.0, 0.0, 0.0, 6.0, 1.0}}};

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.omega1 = 10.0 * u(rng);
  p.omega2 = 10.0 * u(rng);
  p.delta1 = -5.0 + 10.0 * u(rng);
  p.delta2 = -5.0 + 10.0 * u(rng);
  p.gamma2 = 0.5 + 9.5 * u(rng);
  p.gamma3 = 0.5 + 9.5 * u(rng);
  return p;
}

bool criterion1() {
  Timer tm;
  Report r;
  double worst_tr = 0.0, worst_herm = 0.0, worst_eig = 0.0;
  long samples = 0;
  auto scan = [&](const SystemParams& p) {
    EvolveOptions opts; // t_max 20, dt 1e-3, sample every 10 steps
    for (const TracePoint& pt : evolve(p, ground(), opts)) {
      ++samples;
      worst_tr = std::max(worst_tr, std::abs(pt.rho.trace().real() - 1.0));
      worst_herm = std::max(worst_herm,
                            (pt.rho - pt.rho.adjoint()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Matrix3cd> es;
      es.computeDirect(pt.rho, Eigen::EigenvaluesOnly);
      worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
    }
  };
  for (const Preset& pr : kPresets) scan(pr.p);
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 200; ++k) scan(random_params(rng));

  r.sub(samples == 203 * 2001, fmt("samples checked %.0f", double(samples)));
  r.sub(worst_tr < 1e-9, fmt("max |Tr rho - 1| = %.3g (need < 1e-9)", worst_tr));
  r.sub(worst_herm < 1e-10,
        fmt("max Hermiticity residual = %.3g (need < 1e-10)", worst_herm));
  r.sub(worst_eig > -1e-7,
        fmt("min eigenvalue = %.3g (need > -1e-7)", worst_eig));
  r.sub(tm.s() < 60.0, fmt("runtime %.1f s (need < 60 s)", tm.s()));
  return r.flush(1, "physicality suite");
}

bool criterion2() {
  Report r;
  for (const Preset& pr : kPresets) {
    SteadyResult sr = steady_state(pr.p);
    double diff = (sr.rho - steady_state_nullspace(pr.p)).cwiseAbs().maxCoeff();
    r.sub(diff < 1e-7, fmt((std::string(pr.name) +
                            ": |integrated - null space| = %.3g (need < 1e-7)").c_str(),
                           diff));
  }
  struct TwoLevel {
    double omega1, delta1, gamma2;
  };
  for (const TwoLevel& c :
       {TwoLevel{3.0, 0.0, 6.0}, TwoLevel{1.0, 2.0, 4.0}, TwoLevel{8.0, -3.0, 0.7}}) {
    SystemParams p{c.omega1, 0.0, c.delta1, 0.0, c.gamma2, 1.0};
    double expect = c.omega1 * c.omega1 /
                    (0.25 * c.gamma2 * c.gamma2 + c.delta1 * c.delta1 +
                     2.0 * c.omega1 * c.omega1);
    double got = steady_state(p).rho(1, 1).real();
    r.sub(std::abs(got - expect) < 1e-6,
          fmt2("two-level population %.9f vs closed form %.9f (need |diff| < 1e-6)",
               got, expect));
  }
  return r.flush(2, "steady-state oracle");
}

bool criterion3() {
  Timer tm;
  Report r;
  double purity_of[3];
  Matrix4cd photon[3];
  for (int i = 0; i < 3; ++i) {
    Matrix3cd rho = steady_state(kPresets[i].p).rho;
    purity_of[i] = purity(rho);
    photon[i] = atomic_to_photon(rho);
  }
  r.sub(purity_of[0] > 0.9,
        fmt("pure: steady purity = %.6f (need > 0.9)", purity_of[0]));
  r.sub(photon[0](1, 1).real() < 0.05,
        fmt("pure: photon p01 = %.6f (need < 0.05)", photon[0](1, 1).real()));
  double gap = std::abs(photon[1](0, 0).real() - photon[1](3, 3).real());
  r.sub(gap < 0.05, fmt("bell: |p00 - p11| = %.6f (need < 0.05)", gap));
  double corr = std::abs(photon[1](0, 3));
  r.sub(corr > 0.2, fmt("bell: |<00|rho|11>| = %.6f (need > 0.2)", corr));
  r.sub(purity_of[2] < purity_of[0] - 0.1,
        fmt2("mixed: purity = %.6f (need < pure purity %.6f - 0.1)", purity_of[2],
             purity_of[0]));
  r.sub(tm.s() < 10.0, fmt("runtime %.1f s (need < 10 s)", tm.s()));
  return r.flush(3, "regime reproduction");
}

bool criterion4() {
  Report r;
  EntanglementInvariants inv[3];
  for (int i = 0; i < 3; ++i)
    inv[i] = invariants_from_state(atomic_to_photon(steady_state(kPresets[i].p).rho));
  r.sub(inv[0].w1 >= 0.90 && inv[0].w1 <= 1.00,
        fmt("pure: w1 = %.6f (need within [0.90, 1.00])", inv[0].w1));
  r.sub(inv[0].e1 >= 0.60 && inv[0].e1 <= 0.80,
        fmt("pure: e1 = %.6f (need within [0.60, 0.80])", inv[0].e1));
  r.sub(inv[1].w1 >= 0.75 && inv[1].w1 <= 0.85,
        fmt("bell: w1 = %.6f (need within [0.75, 0.85])", inv[1].w1));
  r.sub(inv[1].e1 > 0.9, fmt("bell: e1 = %.6f (need > 0.9)", inv[1].e1));
  r.sub(inv[2].w1 < 0.5, fmt("mixed: w1 = %.6f (need < 0.5)", inv[2].w1));
  r.sub(inv[2].e1 >= 0.55 && inv[2].e1 <= 0.75,
        fmt("mixed: e1 = %.6f (need within [0.55, 0.75])", inv[2].e1));
  double w4max = std::max({inv[0].w4, inv[1].w4, inv[2].w4});
  double epmax = std::max({inv[0].e_perp, inv[1].e_perp, inv[2].e_perp});
  r.sub(w4max < 1e-6, fmt("max w4 over presets = %.3g (need < 1e-6)", w4max));
  r.sub(epmax < 1e-8, fmt("max e_perp over presets = %.3g (need < 1e-8)", epmax));
  return r.flush(4, "invariant reproduction");
}

bool criterion5() {
  Report r;
  std::mt19937_64 rng(1005);
  double worst_recon = 0.0, worst_g2 = 0.0, worst_anom = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Matrix3cd a = testutil::ginibre_density<3>(rng);
    Matrix4cd photon = atomic_to_photon(a);
    ObservableSet obs = atomic_observables(a);
    worst_recon = std::max(worst_recon,
                           (reconstruct(obs) - photon).cwiseAbs().maxCoeff());
    FieldObservableSet f = field_observables(photon);
    worst_g2 = std::max(worst_g2, std::abs(f.g2 - f.n2));
    worst_anom = std::max(worst_anom, std::abs(f.anom - std::conj(obs.c13)));
  }
  r.sub(worst_recon <= 1e-12,
        fmt("max round-trip error over 1000 states = %.3g (need <= 1e-12)",
            worst_recon));
  r.sub(worst_g2 <= 1e-12, fmt("max |g2 - n2| = %.3g (need <= 1e-12)", worst_g2));
  r.sub(worst_anom <= 1e-12,
        fmt("max |anom - conj(c13)| = %.3g (need <= 1e-12)", worst_anom));
  return r.flush(5, "tomography round trip");
}

bool criterion6() {
  Timer tm;
  Report r;
  std::mt19937_64 rng(1006);

  double worst_ks2 = 0.0, worst_emax = 0.0, worst_ecusp = 0.0;
  for (int k = 0; k < 20; ++k) {
    double x, y, z;
    testutil::random_triple(rng, x, y, z);
    PdfCurve ana = pdf_rho2(x, y, z, 8001);
    PdfCurve mc =
        mc_pdf_oracle(testutil::plane_basis(x, y, z), 1000000, 7000 + k, 8001);
    worst_ks2 = std::max(worst_ks2, testutil::ks_histogram(ana, mc));

    EntanglementInvariants inv = invariants_from_state(
        0.6 * (testutil::basis_ket(0) * testutil::basis_ket(0).adjoint()) +
        0.4 * (testutil::plane_basis(x, y, z)[1] *
               testutil::plane_basis(x, y, z)[1].adjoint()));
    double supU = testutil::golden_max(
        [&](double t) { return testutil::bound_upper(x, y, z, t); }, 0.0, kPi);
    double supL = testutil::golden_max(
        [&](double t) { return testutil::bound_lower_smooth(x, y, z, t); }, 0.0, kPi);
    worst_emax = std::max(worst_emax, std::abs(inv.e_max - supU));
    worst_ecusp = std::max(worst_ecusp, std::abs(inv.e_cusp - supL));
  }
  r.sub(worst_ks2 < 0.01,
        fmt("rank-2: worst KS over 20 triples at 1e6 samples = %.4f (need < 0.01)",
            worst_ks2));

  std::uniform_real_distribution<double> u(0.0, 0.97);
  double worst_ks3 = 0.0;
  for (int k = 0; k < 10; ++k) {
    double c = u(rng);
    PdfCurve ana = pdf_rho3(c, 2001);
    PdfCurve mc = mc_pdf_oracle(testutil::rank3_basis(c), 1000000, 7900 + k, 2001);
    worst_ks3 = std::max(worst_ks3, testutil::ks_histogram(ana, mc));
  }
  r.sub(worst_ks3 < 0.01,
        fmt("rank-3: worst KS over 10 draws at 1e6 samples = %.4f (need < 0.01)",
            worst_ks3));

  double defect0 = pdf_rho3(0.0, 2001).defect;
  r.sub(defect0 < 1e-6,
        fmt("rank-3 mass defect at e_perp = 0: %.3g (need < 1e-6)", defect0));
  r.sub(worst_emax < 1e-9,
        fmt("max |e_max - sup U| = %.3g (need < 1e-9)", worst_emax));
  r.sub(worst_ecusp < 1e-9,
        fmt("max |e_cusp - sup L| = %.3g (need < 1e-9)", worst_ecusp));
  r.sub(tm.s() < 300.0, fmt("runtime %.1f s (need < 300 s)", tm.s()));
  return r.flush(6, "distribution oracle");
}

bool criterion7() {
  Report r;
  std::mt19937_64 rng(1007);
  double worst_recon = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Matrix4cd rho = testutil::ginibre_density<4>(rng);
    HermitianSpectrum s = hermitian_eig(rho);
    auto w = nested_weights({s.eigenvalues(0), s.eigenvalues(1), s.eigenvalues(2),
                             s.eigenvalues(3)});
    Matrix4cd acc = Matrix4cd::Zero(), proj = Matrix4cd::Zero();
    for (int d = 0; d < 4; ++d) {
      proj += s.eigenvectors.col(d) * s.eigenvectors.col(d).adjoint();
      acc += w[d] / (d + 1) * proj;
    }
    worst_recon = std::max(worst_recon, (acc - rho).cwiseAbs().maxCoeff());
  }
  r.sub(worst_recon < 1e-10,
        fmt("max decomposition residual over 1000 states = %.3g (need < 1e-10)",
            worst_recon));

  double worst_inv = 0.0;
  for (int k = 0; k < 200; ++k) {
    Matrix4cd rho = (k % 2 == 0)
                        ? atomic_to_photon(testutil::ginibre_density<3>(rng))
                        : testutil::ginibre_density<4>(rng);
    EntanglementInvariants a = invariants_from_state(rho);
    Eigen::Matrix2cd ua = testutil::haar_unitary<2>(rng);
    Eigen::Matrix2cd ub = testutil::haar_unitary<2>(rng);
    Matrix4cd U = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) U.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
    Matrix4cd rot = U * rho * U.adjoint();
    rot = (0.5 * (rot + rot.adjoint())).eval();
    EntanglementInvariants b = invariants_from_state(rot);
    for (double d : {a.w1 - b.w1, a.w2 - b.w2, a.w3 - b.w3, a.w4 - b.w4,
                     a.e1 - b.e1, a.x - b.x, a.y - b.y, a.z - b.z,
                     a.e_cusp - b.e_cusp, a.e_max - b.e_max, a.e_perp - b.e_perp})
      worst_inv = std::max(worst_inv, std::abs(d));
  }
  r.sub(worst_inv < 1e-8,
        fmt("max invariant shift under 200 local unitaries = %.3g (need < 1e-8)",
            worst_inv));
  return r.flush(7, "weight resolution");
}

bool criterion8() {
  Report r;
  auto final_state = [](double dt) {
    EvolveOptions opts;
    opts.t_max = 2.0;
    opts.dt = dt;
    opts.sample_every = 1 << 28;
    return evolve(kPresets[0].p, ground(), opts).back().rho;
  };
  const double h = 2e-3;
  Matrix3cd ref = final_state(h / 8.0);
  double e1 = (final_state(h) - ref).cwiseAbs().maxCoeff();
  double e2 = (final_state(h / 2.0) - ref).cwiseAbs().maxCoeff();
  double order = std::log2(e1 / e2);
  r.sub(order >= 3.7, fmt("observed convergence order = %.3f (need >= 3.7)", order));
  return r.flush(8, "integrator order");
}

} // namespace

int main() {
  int passed = 0;
  bool results[8] = {criterion1(), criterion2(), criterion3(), criterion4(),
                     criterion5(), criterion6(), criterion7(), criterion8()};
  for (bool b : results) passed += b ? 1 : 0;
  std::printf("%d of 8 criteria passed\n", passed);
  return passed == 8 ? 0 : 1;
}
