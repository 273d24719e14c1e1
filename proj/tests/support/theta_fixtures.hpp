#pragma once

#include "schottky/theta_classical.hpp"

namespace schottky::testing {

// Riemann matrix of the plane curve y^5 + x^3 = 1, printed to five decimals.
inline CMatrix plane_curve_tau() {
  using C = Complex;
  CMatrix t(4, 4);
  t << C(0.16913, 1.41714), C(-0.81736, -0.25138), C(-0.05626, -0.44830), C(0.24724, 0.36327),
      C(-0.81736, -0.25138), C(-0.31319, 0.67096), C(-0.02813, -0.57155), C(0.34132, 0.40334),
      C(-0.05626, -0.44830), C(-0.02813, -0.57155), C(0.32393, 1.44947), C(-0.96494, -0.63753),
      C(0.24724, 0.36327), C(0.34132, 0.40334), C(-0.96494, -0.63753), C(0.62362, 0.73694);
  return t;
}

inline const Complex kPrintedSumOfSquares(-5.13472888270289, 6.13887870578982);
inline const Complex kPrintedTwiceProducts(-5.13472882638710, 6.13887931435788);

}  // namespace schottky::testing
