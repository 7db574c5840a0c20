#include "cascade/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cascade {

namespace {

// Lexicographic order on (Re c0, Im c0, Re c1, Im c1, ...); used only to
// tie-break degenerate eigenvectors, where any fixed order is valid.
bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index k = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double m = std::abs(v(i));
    if (m > best + 1e-15) { best = m; k = i; }
  }
  if (best > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
}

} // namespace

HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& M) {
  const Eigen::Index n = M.rows();
  if (n != M.cols() || n < 1 || n > 4)
    throw std::invalid_argument("hermitian_eig: expected a square matrix of dimension <= 4");
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double d = std::abs(M(i, j) - std::conj(M(j, i)));
      if (d > worst) { worst = d; wi = i; wj = j; }
    }
  if (worst > kHermTol) {
    std::ostringstream os;
    os << "hermitian_eig: matrix not Hermitian at entry (" << wi << "," << wj
       << "), |M(i,j) - conj(M(j,i))| = " << worst;
    throw std::invalid_argument(os.str());
  }
  Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigendecomposition failed");

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) { // reverse: ascending -> non-increasing
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    fix_phase(out.eigenvectors.col(i));
  }
  // Deterministic order inside degenerate blocks.
  Eigen::Index b = 0;
  while (b < n) {
    Eigen::Index e = b + 1;
    while (e < n && out.eigenvalues(b) - out.eigenvalues(e) < 1e-12) ++e;
    if (e - b > 1) {
      std::vector<Eigen::VectorXcd> cols;
      for (Eigen::Index i = b; i < e; ++i) cols.push_back(out.eigenvectors.col(i));
      std::sort(cols.begin(), cols.end(), lex_less);
      for (Eigen::Index i = b; i < e; ++i) out.eigenvectors.col(i) = cols[i - b];
    }
    b = e;
  }
  return out;
}

void validate_density(const Eigen::MatrixXcd& rho, const char* what) {
  const Eigen::Index n = rho.rows();
  if (n != rho.cols())
    throw std::invalid_argument(std::string(what) + ": not square");
  double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream os;
    os << what << ": Hermiticity residual " << herm << " exceeds " << kHermTol;
    throw std::invalid_argument(os.str());
  }
  double tr = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr > kTraceTol) {
    std::ostringstream os;
    os << what << ": |trace - 1| = " << tr << " exceeds " << kTraceTol;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  double mineig = es.eigenvalues().minCoeff();
  if (mineig < kEigFloor) {
    std::ostringstream os;
    os << what << ": min eigenvalue " << mineig << " below " << kEigFloor;
    throw std::invalid_argument(os.str());
  }
}

namespace {

void require_unit_hermitian(const Eigen::MatrixXcd& rho, const char* what) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument(std::string(what) + ": input not Hermitian within 1e-10");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kTraceTol)
    throw std::invalid_argument(std::string(what) + ": input trace differs from 1 beyond 1e-10");
}

} // namespace

Eigen::Matrix2cd partial_trace(const Eigen::Matrix4cd& rho, Subsystem keep) {
  require_unit_hermitian(rho, "partial_trace");
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  if (keep == Subsystem::A) {
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b)
          r(a, ap) += rho(2 * a + b, 2 * ap + b);
  } else {
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        for (int a = 0; a < 2; ++a)
          r(b, bp) += rho(2 * a + b, 2 * a + bp);
  }
  return r;
}

double purity(const Eigen::MatrixXcd& rho) {
  require_unit_hermitian(rho, "purity");
  return (rho * rho).trace().real();
}

double concurrence_pure(const Eigen::Vector4cd& psi) {
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > kHermTol)
    throw std::invalid_argument("concurrence_pure: state not normalized within 1e-10");
  return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

double concurrence_wootters(const Eigen::Matrix4cd& rho) {
  validate_density(rho, "concurrence_wootters");
  // sy x sy is real: antidiagonal (-1, 1, 1, -1).
  Eigen::Matrix4d Y = Eigen::Matrix4d::Zero();
  Y(0, 3) = -1; Y(1, 2) = 1; Y(2, 1) = 1; Y(3, 0) = -1;
  // sqrt(rho) (rho~) sqrt(rho) is Hermitian PSD and shares its spectrum with
  // rho rho~, so the mu_i come from a self-adjoint solve instead of a
  // general eigenproblem with a degenerate zero cluster.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rs(rho);
  Eigen::Vector4d sq = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::Matrix4cd root = rs.eigenvectors() * sq.asDiagonal() *
                          rs.eigenvectors().adjoint();
  Eigen::Matrix4cd K = root * Y * rho.conjugate() * Y * root;
  K = (0.5 * (K + K.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(K, Eigen::EigenvaluesOnly);
  Eigen::Vector4d mu;
  for (int i = 0; i < 4; ++i) {
    double v = es.eigenvalues()(i);
    if (v < -1e-9)
      throw std::runtime_error("concurrence_wootters: spin-flip spectrum has an eigenvalue below -1e-9");
    mu(i) = std::sqrt(std::max(v, 0.0));
  }
  std::sort(mu.data(), mu.data() + 4, std::greater<double>());
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double negativity(const Eigen::Matrix4cd& rho) {
  validate_density(rho, "negativity");
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) < 0.0) s -= es.eigenvalues()(i);
  return s;
}

} // namespace cascade
