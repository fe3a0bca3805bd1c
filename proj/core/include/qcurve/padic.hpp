#pragma once

#include <vector>

#include "qcurve/kpoly.hpp"

namespace qcurve {

// roots in K of a polynomial with coefficients in O_K, found by lifting
// simple roots modulo an inert prime and checked exactly
std::vector<FieldElement> roots_in_K(const OKRing& R, const OKPoly& f);
std::vector<FieldElement> roots_in_K(const KPoly& f);

// square root in K if there is one
bool sqrt_in_K(const FieldElement& z, FieldElement& out);

}  // namespace qcurve
