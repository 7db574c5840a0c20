// Atomic <-> photon density-matrix equivalence and reduced-observable
// tomography. The emitted two-mode state lives in {|00>, |01>, |10>, |11>}
// (labels |g2 g1>, index 2*g2 + g1); the atomic levels map onto
// |1> -> |00>, |2> -> |01>, |3> -> |11>, so the |10> row and column of any
// system-generated photon matrix vanish identically (rank <= 3).
#pragma once

#include <Eigen/Dense>

#include "cascade/qmath.hpp"

namespace cascade {

struct ObservableSet {
  double p2 = 0.0;  // population of |2>
  double p3 = 0.0;  // population of |3>
  Complex s1;       // rho21
  Complex s2;       // rho32
  Complex c13;      // rho13 (two-photon coherence)
};

struct FieldObservableSet {
  Complex a1;        // <a1>
  double n1 = 0.0;   // <a1+ a1>
  double n2 = 0.0;   // <a2+ a2>
  Complex anom;      // anomalous coherence, stored as <11|rho|00>
  double g2 = 0.0;   // <a2+ a1+ a1 a2>
};

// Elementwise embedding of the 3x3 atomic state into the photon basis.
Eigen::Matrix4cd atomic_to_photon(const Eigen::Matrix3cd& rhoA);

// Exact inverse; throws std::invalid_argument when the |10> row or column
// carries weight above 1e-10.
Eigen::Matrix3cd photon_to_atomic(const Eigen::Matrix4cd& rhoG);

ObservableSet atomic_observables(const Eigen::Matrix3cd& rhoA);

FieldObservableSet field_observables(const Eigen::Matrix4cd& rhoG);

// Throws std::invalid_argument naming the violated Cauchy-Schwarz bound when
// the set cannot come from a physical state.
void validate_observables(const ObservableSet& obs);

// Unique rank-<=3 photon state reproducing the 8 observables.
Eigen::Matrix4cd reconstruct(const ObservableSet& obs);

} // namespace cascade
