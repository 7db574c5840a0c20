#include "cascade/tomography.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cascade {

namespace {
constexpr int kMap[3] = {0, 1, 3}; // atomic index -> photon basis index
}

Eigen::Matrix4cd atomic_to_photon(const Eigen::Matrix3cd& rhoA) {
  validate_density(rhoA, "atomic_to_photon input");
  Eigen::Matrix4cd rhoG = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rhoG(kMap[i], kMap[j]) = rhoA(i, j);
  return rhoG;
}

Eigen::Matrix3cd photon_to_atomic(const Eigen::Matrix4cd& rhoG) {
  validate_density(rhoG, "photon_to_atomic input");
  double leak = 0.0;
  for (int k = 0; k < 4; ++k)
    leak = std::max(leak, std::max(std::abs(rhoG(2, k)), std::abs(rhoG(k, 2))));
  if (leak > 1e-10) {
    std::ostringstream os;
    os << "photon_to_atomic: |10> sector carries weight " << leak;
    throw std::invalid_argument(os.str());
  }
  Eigen::Matrix3cd rhoA;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rhoA(i, j) = rhoG(kMap[i], kMap[j]);
  return rhoA;
}

ObservableSet atomic_observables(const Eigen::Matrix3cd& rhoA) {
  validate_density(rhoA, "atomic_observables input");
  ObservableSet obs;
  obs.p2 = rhoA(1, 1).real();
  obs.p3 = rhoA(2, 2).real();
  obs.s1 = rhoA(1, 0);
  obs.s2 = rhoA(2, 1);
  obs.c13 = rhoA(0, 2);
  return obs;
}

FieldObservableSet field_observables(const Eigen::Matrix4cd& rhoG) {
  validate_density(rhoG, "field_observables input");
  FieldObservableSet f;
  f.a1 = rhoG(1, 0);
  f.n1 = rhoG(1, 1).real() + rhoG(3, 3).real();
  f.n2 = rhoG(2, 2).real() + rhoG(3, 3).real();
  f.anom = rhoG(3, 0);
  f.g2 = rhoG(3, 3).real();
  return f;
}

void validate_observables(const ObservableSet& obs) {
  if (obs.p2 < 0.0 || obs.p3 < 0.0)
    throw std::invalid_argument("observables: populations must be non-negative");
  const double p1 = 1.0 - obs.p2 - obs.p3;
  if (p1 < -kTraceTol)
    throw std::invalid_argument("observables: p2 + p3 exceeds 1");
  const double tol = 1e-12;
  if (std::norm(obs.s1) > p1 * obs.p2 + tol)
    throw std::invalid_argument("observables: |s1|^2 exceeds (1-p2-p3)*p2");
  if (std::norm(obs.s2) > obs.p2 * obs.p3 + tol)
    throw std::invalid_argument("observables: |s2|^2 exceeds p2*p3");
  if (std::norm(obs.c13) > p1 * obs.p3 + tol)
    throw std::invalid_argument("observables: |c13|^2 exceeds (1-p2-p3)*p3");
}

Eigen::Matrix4cd reconstruct(const ObservableSet& obs) {
  validate_observables(obs);
  Eigen::Matrix3cd rhoA;
  const double p1 = 1.0 - obs.p2 - obs.p3;
  rhoA(0, 0) = p1;
  rhoA(1, 1) = obs.p2;
  rhoA(2, 2) = obs.p3;
  rhoA(1, 0) = obs.s1;
  rhoA(0, 1) = std::conj(obs.s1);
  rhoA(2, 1) = obs.s2;
  rhoA(1, 2) = std::conj(obs.s2);
  rhoA(0, 2) = obs.c13;
  rhoA(2, 0) = std::conj(obs.c13);
  Eigen::Matrix4cd rhoG = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rhoG(kMap[i], kMap[j]) = rhoA(i, j);
  return rhoG;
}

} // namespace cascade
