// Dense complex linear-algebra primitives and two-qubit entanglement scalars.
// Conventions used throughout:
//   - two-qubit basis order {|00>, |01>, |10>, |11>}; subsystem A is the
//     first ket character, B the second;
//   - eigenvalues sorted non-increasing with a deterministic eigenvector
//     phase (largest-magnitude component made real positive).
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cascade {

using Complex = std::complex<double>;

// Density-matrix tolerance suite shared by every module: Hermiticity residual
// < 1e-10, |trace - 1| < 1e-10, min eigenvalue > -1e-9.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigFloor = -1e-9;

enum class Subsystem { A, B };

struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;   // non-increasing
  Eigen::MatrixXcd eigenvectors; // orthonormal columns matching the order
};

// Throws std::invalid_argument naming the offending entry when M is not
// Hermitian within 1e-10. Input is symmetrized before decomposition.
// Degenerate eigenvalues (gap < 1e-12) are ordered lexicographically by
// eigenvector components so the output is deterministic.
HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& M);

// Throws std::invalid_argument when rho violates the density-matrix suite.
// `what` names the offending matrix in the error message.
void validate_density(const Eigen::MatrixXcd& rho, const char* what);

// Reduced state of a two-qubit density matrix. Requires Hermiticity and unit
// trace within 1e-10.
Eigen::Matrix2cd partial_trace(const Eigen::Matrix4cd& rho, Subsystem keep);

// Tr(rho^2) for a Hermitian unit-trace matrix.
double purity(const Eigen::MatrixXcd& rho);

// E = 2|psi00 psi11 - psi01 psi10| for a normalized two-qubit pure state.
double concurrence_pure(const Eigen::Vector4cd& psi);

// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4) with mu_i the square
// roots of the non-increasing eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence_wootters(const Eigen::Matrix4cd& rho);

// Sum of |negative eigenvalues| of the partial transpose over subsystem B.
double negativity(const Eigen::Matrix4cd& rho);

} // namespace cascade
