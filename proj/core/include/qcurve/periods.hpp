#pragma once

#include "qcurve/curve.hpp"
#include "qcurve/real.hpp"

namespace qcurve {

// periods of dx/(2y + a1 x + a3)
struct PeriodData {
  bool real_field = true;
  Real w1, w1nu;  // real K: least positive real periods at sqrt d -> +sqrt d, -sqrt d
  Cx omega1, omega2;  // imaginary K: lattice basis, Im(omega2/omega1) > 0
  unsigned digits = 0;
};

PeriodData periods(const Curve& E, unsigned digits);

// lattice basis of y^2 = x^3 + A x + B with A, B complex, checked against g2, g3
void lattice(const Cx& A, const Cx& B, Cx& w1, Cx& w2);

// least positive real period of y^2 = x^3 + A x + B, A, B real
Real real_period(const Real& A, const Real& B);

struct OmegaE {
  Real value;
  mpq_class delta_norm;  // N(delta), delta the ideal comparing omega with local minimal differentials
};

// N(delta) = prod N(P)^(-(v_P(disc) - v_P(disc_min))/12); throws NonIntegralTwelfth
mpq_class delta_norm(const GlobalData& G);
OmegaE omega_E(const Curve& E, const GlobalData& G, unsigned digits);

}  // namespace qcurve
