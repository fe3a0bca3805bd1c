#include "qcurve/periods.hpp"

#include <algorithm>

#include "qcurve/error.hpp"

namespace qcurve {

namespace {

Real eps_of(const Real& x) {
  Real e = pow(Real(10), -(int)Real::default_precision() + 4);
  return e * (abs(x) + 1);
}

// roots of x^3 + c2 x^2 + c1 x + c0 by Durand-Kerner
std::array<Cx, 3> cubic_roots(const Cx& c2, const Cx& c1, const Cx& c0) {
  auto f = [&](const Cx& x) { return ((x + c2) * x + c1) * x + c0; };
  Real R = 1 + std::max({c2.abs(), sqrt(c1.abs()), cbrt(c0.abs())}) * 2;
  Cx seed(Real("0.4"), Real("0.9"));
  std::array<Cx, 3> z{R * seed, R * (seed * seed), R * (seed * seed * seed)};
  for (int it = 0; it < 2000; ++it) {
    Real move = 0;
    for (int i = 0; i < 3; ++i) {
      Cx den(1);
      for (int j = 0; j < 3; ++j)
        if (j != i) den = den * (z[i] - z[j]);
      Cx step = f(z[i]) / den;
      z[i] = z[i] - step;
      move = std::max(move, Real(step.abs() / (z[i].abs() + 1)));
    }
    if (move < pow(Real(10), -(int)Real::default_precision())) break;
  }
  return z;
}

Cx agm(Cx a, Cx b) {
  for (int it = 0; it < 1000; ++it) {
    Cx a1 = Real("0.5") * (a + b);
    Cx b1 = csqrt(a * b);
    if ((a1 - b1).abs() > (a1 + b1).abs()) b1 = -b1;
    a = a1;
    b = b1;
    if ((a - b).abs() < eps_of(a.abs())) return a;
  }
  throw Error(ErrorCode::PrecisionExhausted, "agm did not converge");
}

Real ragm(Real a, Real b) {
  for (int it = 0; it < 1000; ++it) {
    Real a1 = (a + b) / 2;
    b = sqrt(a * b);
    a = a1;
    if (abs(a - b) < eps_of(a)) return a;
  }
  throw Error(ErrorCode::PrecisionExhausted, "agm did not converge");
}

// E4, E6 at tau in the upper half plane
void eisenstein(const Cx& tau, Cx& E4, Cx& E6) {
  Real tp = 2 * pi();
  Cx q = cexp(Cx(-tp * tau.im, tp * tau.re));
  Cx s3, s5, qn(1);
  Real tol = pow(Real(10), -(int)Real::default_precision());
  for (long n = 1; n < 100000; ++n) {
    qn = qn * q;
    Cx t = qn / (Cx(1) - qn);
    Real n3 = Real(n) * n * n;
    s3 += n3 * t;
    s5 += (n3 * n * n) * t;
    if ((n3 * n * n) * t.abs() < tol) break;
  }
  E4 = Cx(1) + Real(240) * s3;
  E6 = Cx(1) - Real(504) * s5;
}

bool lattice_matches(const Cx& A, const Cx& B, Cx w1, Cx w2, Cx& r1, Cx& r2) {
  Cx tau = w2 / w1;
  if (abs(tau.im) < eps_of(tau.abs())) return false;
  if (tau.im < 0) w2 = -w2;
  for (int it = 0; it < 200; ++it) {
    tau = w2 / w1;
    Real n = round(tau.re);
    if (n != 0) w2 = w2 - n * w1;
    tau = w2 / w1;
    if (tau.norm2() < Real("0.999999")) {
      Cx t = w1;
      w1 = w2;
      w2 = -t;
    } else {
      break;
    }
  }
  tau = w2 / w1;
  Cx E4, E6;
  eisenstein(tau, E4, E6);
  Real p = pi();
  Cx u = Cx(p) / w1;
  Cx u2 = u * u, u4 = u2 * u2, u6 = u4 * u2;
  Cx g2 = (Real(4) / 3) * (u4 * E4);
  Cx g3 = (Real(8) / 27) * (u6 * E6);
  Cx G2 = Real(-4) * A, G3 = Real(-4) * B;
  Real tol = pow(Real(10), -(int)Real::default_precision() / 2);
  if ((g2 - G2).abs() > tol * (G2.abs() + g2.abs() + 1)) return false;
  if ((g3 - G3).abs() > tol * (G3.abs() + g3.abs() + 1)) return false;
  r1 = w1;
  r2 = w2;
  return true;
}

}  // namespace

void lattice(const Cx& A, const Cx& B, Cx& w1, Cx& w2) {
  auto e = cubic_roots(Cx(), A, B);
  std::vector<Cx> s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) s.push_back(csqrt(e[i] - e[j]));
  // candidate periods pi/M(x, y) over pairs of root differences
  Real p = pi();
  std::vector<Cx> cand;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      if ((s[i] - s[j]).abs() < eps_of(s[i].abs()) || (s[i] + s[j]).abs() < eps_of(s[i].abs())) continue;
      Cx w = Cx(p) / agm(s[i], s[j]);
      cand.push_back(w);
      cand.push_back(Cx(-w.im, w.re));
    }
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = i + 1; j < cand.size(); ++j)
      if (lattice_matches(A, B, cand[i], cand[j], w1, w2)) return;
  throw Error(ErrorCode::PrecisionExhausted, "no period lattice matched g2, g3");
}

Real real_period(const Real& A, const Real& B) {
  auto e = cubic_roots(Cx(), Cx(A), Cx(B));
  Real disc = -4 * A * A * A - 27 * B * B;
  if (disc > 0) {
    std::vector<Real> r{e[0].re, e[1].re, e[2].re};
    std::sort(r.rbegin(), r.rend());
    return pi() / ragm(sqrt(r[0] - r[2]), sqrt(r[0] - r[1]));
  }
  // one real root
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(e[i].im) < abs(e[k].im)) k = i;
  Real e1 = e[k].re;
  const Cx& z = e[(k + 1) % 3];
  Real a = (Cx(e1) - z).abs();
  return 2 * pi() / ragm(2 * sqrt(a), sqrt(2 * a + 2 * (e1 - z.re)));
}

PeriodData periods(const Curve& E, unsigned digits) {
  Precision prec(digits + 20);
  PeriodData out;
  out.digits = digits;
  out.real_field = E.d() > 0;
  FieldElement A = mpq_class(-1, 48) * E.c4(), B = mpq_class(-1, 864) * E.c6();
  if (out.real_field) {
    out.w1 = real_period(embed(A).re, embed(B).re);
    out.w1nu = real_period(embed(A, true).re, embed(B, true).re);
  } else {
    lattice(embed(A), embed(B), out.omega1, out.omega2);
  }
  return out;
}

mpq_class delta_norm(const GlobalData& G) {
  mpq_class r = 1;
  for (const auto& L : G.local) {
    int dv = L.v_disc_model - L.v_disc_min;
    if (dv % 12 != 0)
      throw Error(ErrorCode::NonIntegralTwelfth, "discriminant valuation change " + std::to_string(dv) + " at " + L.P.str());
    mpz_class q = mpz_class((unsigned long)L.P.norm());
    mpz_class f;
    int e = dv / 12;
    mpz_pow_ui(f.get_mpz_t(), q.get_mpz_t(), (unsigned long)std::abs(e));
    if (e > 0)
      r /= f;
    else
      r *= f;
  }
  r.canonicalize();
  return r;
}

OmegaE omega_E(const Curve& E, const GlobalData& G, unsigned digits) {
  Precision prec(digits + 20);
  OmegaE out;
  out.delta_norm = delta_norm(G);
  PeriodData P = periods(E, digits);
  Real nd = to_real(out.delta_norm);
  if (P.real_field)
    out.value = abs(P.w1 * P.w1nu) / nd;
  else
    out.value = 2 * abs((P.omega1 * P.omega2.conj()).im) / nd;
  return out;
}

}  // namespace qcurve
