#include "qcurve/isogeny.hpp"

#include "qcurve/error.hpp"

namespace qcurve {

namespace {

KRat constant(const FieldElement& c, long d) {
  return {pconst(c), {FieldElement(d, 1)}};
}

KRat normalise(const KRat& f, long d) {
  if (f.den.empty()) throw Error(ErrorCode::NotAnIsogeny, "zero denominator in a map");
  if (f.num.empty()) return {{}, {FieldElement(d, 1)}};
  return rreduce(f);
}

KRat compose_linear(const KRat& f, const KPoly& L) { return {pcompose(f.num, L), pcompose(f.den, L)}; }

}  // namespace

IsogenyMap IsogenyMap::conj() const {
  return {source.conj(), target.conj(), {pconj(g.num), pconj(g.den)}, {pconj(h.num), pconj(h.den)},
          {pconj(k.num), pconj(k.den)}};
}

SignedDegree verify_isogeny(const IsogenyMap& mu) {
  long d = mu.source.d();
  KRat g = normalise(mu.g, d), h = normalise(mu.h, d), k = normalise(mu.k, d);
  if (h.num.empty()) throw Error(ErrorCode::NotAnIsogeny, "y-map is constant in y");
  int dn = degree(g.num), dd = degree(g.den);
  if (dn != dd + 1) throw Error(ErrorCode::NotAnIsogeny, "x-map does not send O to O");
  const Curve &E = mu.source, &T = mu.target;
  KRat one = constant(FieldElement(d, 1), d);
  KRat x{px(d), {FieldElement(d, 1)}};
  KRat a1x3{{E.a3(), E.a1()}, {FieldElement(d, 1)}};
  trim(a1x3.num);
  KRat f{{E.a6(), E.a4(), E.a2(), FieldElement(d, 1)}, {FieldElement(d, 1)}};
  trim(f.num);
  auto c = [&](const FieldElement& a) { return constant(a, d); };

  // y-part: 2k + a1' g + a3' - h (a1 x + a3) = 0
  KRat ypart = rsub(radd(radd(rmul(c(FieldElement(d, 2)), k), rmul(c(T.a1()), g)), c(T.a3())), rmul(h, a1x3));
  if (!ris_zero(ypart)) throw Error(ErrorCode::NotAnIsogeny, "maps do not respect the curve equations (y-part)");
  // constant part: h^2 f + k^2 + a1' g k + a3' k - (g^3 + a2' g^2 + a4' g + a6') = 0
  KRat g2 = rmul(g, g);
  KRat lhs = radd(radd(radd(rmul(rmul(h, h), f), rmul(k, k)), rmul(rmul(c(T.a1()), g), k)), rmul(c(T.a3()), k));
  KRat rhs = radd(radd(radd(rmul(g2, g), rmul(c(T.a2()), g2)), rmul(c(T.a4()), g)), c(T.a6()));
  if (!ris_zero(rsub(lhs, rhs))) throw Error(ErrorCode::NotAnIsogeny, "maps do not respect the curve equations");

  KRat gp = rderiv(g);
  KRat ratio = rreduce({pmul(gp.num, h.den), pmul(gp.den, h.num)});
  if (degree(ratio.num) != 0 || degree(ratio.den) != 0) throw Error(ErrorCode::NonConstantRatio, "g'/h is not constant");
  SignedDegree out;
  out.alpha = ratio.num[0] / ratio.den[0];
  out.degree = (u64)dn;
  mpq_class n = out.alpha.norm();
  if (n.get_den() != 1 || abs(n.get_num()) != dn)
    throw Error(ErrorCode::DegreeMismatch,
                "norm(alpha) = " + n.get_str() + " but deg = " + std::to_string(dn));
  out.m = n.get_num().get_si();
  if (d < 0 && out.m < 0) throw Error(ErrorCode::DegreeMismatch, "m < 0 over an imaginary quadratic field");
  (void)one;
  (void)x;
  return out;
}

FieldElement pullback_scalar(const IsogenyMap& mu) {
  SignedDegree sd = verify_isogeny(mu);
  if (sd.alpha.is_rational() || is_square(mpz_class(sd.m)))
    throw Error(ErrorCode::SquareDegreeCase,
                "m = " + std::to_string(sd.m) +
                    " is a square: E is isogenous to a curve over Q; use L(E/K,s) = L(E0,s) L(E0^(d),s)");
  return sd.alpha;
}

IsogenyMap transport(const IsogenyMap& mu, const Urst& ws, const Urst& wt) {
  long d = mu.source.d();
  KPoly L = {ws.r, ws.u * ws.u};
  FieldElement ub = wt.u, ub2 = ub * ub, ub3 = ub2 * ub, u3 = ws.u * ws.u * ws.u;
  KRat g = compose_linear(mu.g, L), h = compose_linear(mu.h, L), k = compose_linear(mu.k, L);
  IsogenyMap out;
  out.source = mu.source.transform(ws);
  out.target = mu.target.transform(wt);
  KRat gm = rsub(g, constant(wt.r, d));
  out.g = {gm.num, pscale(gm.den, ub2)};
  out.h = {pscale(h.num, u3), pscale(h.den, ub3)};
  KRat lin{{ws.t, ws.s * ws.u * ws.u}, {FieldElement(d, 1)}};
  trim(lin.num);
  KRat kk = rsub(rsub(radd(rmul(lin, h), k), rmul(constant(wt.s, d), gm)), constant(wt.t, d));
  out.k = {kk.num, pscale(kk.den, ub3)};
  out.g = normalise(out.g, d);
  out.h = normalise(out.h, d);
  out.k = normalise(out.k, d);
  return out;
}

namespace {

FqRat reduce_rat(const KRat& f, const PrimeIdeal& P, const Fq& F) {
  int vmin = kInfiniteValuation;
  for (auto* poly : {&f.num, &f.den})
    for (auto& c : *poly)
      if (!c.is_zero()) vmin = std::min(vmin, valuation(c, P));
  FieldElement scale = uniformizer(P).pow(-vmin);
  FqRat r;
  for (auto& c : f.num) r.num.push_back(reduce(c * scale, P, F));
  for (auto& c : f.den) r.den.push_back(reduce(c * scale, P, F));
  fq_trim(F, r.num);
  fq_trim(F, r.den);
  if (r.den.empty()) throw Error(ErrorCode::NonIntegralMap, "denominator vanishes modulo " + P.str());
  if (!r.num.empty()) {
    FqPoly gg = fq_gcd(F, r.num, r.den);
    if (gg.size() > 1) {
      auto divide = [&](const FqPoly& a) {
        FqPoly q(a.size() - gg.size() + 1, F.zero()), rem = a;
        while (rem.size() >= gg.size()) {
          Fe c = rem.back();
          size_t sh = rem.size() - gg.size();
          q[sh] = c;
          for (size_t i = 0; i < gg.size(); ++i) rem[sh + i] = F.sub(rem[sh + i], F.mul(c, gg[i]));
          rem.pop_back();
        }
        fq_trim(F, q);
        return q;
      };
      r.num = divide(r.num);
      r.den = divide(r.den);
    }
  }
  return r;
}

}  // namespace

ReducedIsogeny reduce_isogeny(const IsogenyMap& mu, const PrimeIdeal& P) {
  ReducedIsogeny R;
  R.source = ECq::reduce(mu.source, P);
  R.target = ECq::reduce(mu.target, P);
  // both nodal is fine (torus test at multiplicative primes); one side singular means a non-minimal model
  if (R.source.is_singular() != R.target.is_singular())
    throw Error(ErrorCode::BadReduction, "only one model is singular modulo " + P.str());
  const Fq& F = R.source.field();
  long d = mu.source.d();
  R.g = reduce_rat(normalise(mu.g, d), P, F);
  R.h = reduce_rat(normalise(mu.h, d), P, F);
  R.k = reduce_rat(normalise(mu.k, d), P, F);
  // reduction can create common factors (p | deg), which would give spurious poles
  for (FqRat* r : {&R.g, &R.h, &R.k}) {
    if (r->num.empty()) continue;
    FqPoly c = fq_gcd(F, r->num, r->den);
    if (c.size() > 1) {
      r->num = fq_div(F, r->num, c);
      r->den = fq_div(F, r->den, c);
    }
  }
  return R;
}

FPoint ReducedIsogeny::operator()(const FPoint& P) const {
  if (P.inf) return P;
  const Fq& F = source.field();
  Fe gd = fq_eval(F, g.den, P.x);
  if (F.is_zero(gd)) return FPoint{};
  Fe hd = fq_eval(F, h.den, P.x), kd = fq_eval(F, k.den, P.x);
  if (F.is_zero(hd) || F.is_zero(kd)) return FPoint{};
  Fe X = F.div(fq_eval(F, g.num, P.x), gd);
  Fe Y = F.add(F.mul(P.y, F.div(fq_eval(F, h.num, P.x), hd)), F.div(fq_eval(F, k.num, P.x), kd));
  return FPoint::at(X, Y);
}

long composition_sign(const IsogenyMap& mu, int npoints, u64 seed) {
  SignedDegree sd = verify_isogeny(mu);
  QuadraticField K = QuadraticField::make(mu.source.d());
  IsogenyMap nu = mu.conj();
  auto S1 = support_primes(mu.source), S2 = support_primes(mu.target);
  std::mt19937_64 rng(seed);
  for (u64 p = 10007; p < 200000; p += 2) {
    if (!is_prime(p) || K.kronecker(p) != 1) continue;
    if (std::find(S1.begin(), S1.end(), p) != S1.end() || std::find(S2.begin(), S2.end(), p) != S2.end()) continue;
    PrimeIdeal P = primes_above(K, p)[0];
    try {
      ReducedIsogeny a = reduce_isogeny(mu, P), b = reduce_isogeny(nu, P);
      int plus = 0, minus = 0;
      for (int i = 0; i < npoints; ++i) {
        FPoint Q = a.source.random_point(rng);
        FPoint R = b(a(Q));
        FPoint M = a.source.mul(Q, (long long)sd.degree);
        if (R == M) ++plus;
        if (R == a.source.neg(M)) ++minus;
      }
      if (plus == npoints && minus < npoints) return 1;
      if (minus == npoints && plus < npoints) return -1;
      throw Error(ErrorCode::NotAnIsogeny, "conj(mu) o mu is not [+-deg]");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonIntegralMap && e.code() != ErrorCode::NotPIntegral) throw;
    }
  }
  throw Error(ErrorCode::NoSuitablePoint, "no usable split prime for the composition test");
}

namespace {

// coefficients c_1..c_n of p(z) = z^-2 + sum c_k z^(2k) for y^2 = x^3 + A x + B
std::vector<FieldElement> wp_coefficients(const FieldElement& A, const FieldElement& B, int n) {
  long d = A.d() ? A.d() : B.d();
  std::vector<FieldElement> c(n + 1, FieldElement(d, 0));
  if (n >= 1) c[1] = mpq_class(-1, 5) * A;
  if (n >= 2) c[2] = mpq_class(-1, 7) * B;
  for (int k = 3; k <= n; ++k) {
    FieldElement s(d, 0);
    for (int j = 1; j <= k - 2; ++j) s += c[j] * c[k - 1 - j];
    mpq_class w(3, (2 * k + 3) * (k - 2));
    w.canonicalize();
    c[k] = w * s;
  }
  return c;
}

using Ser = std::vector<FieldElement>;

Ser smul(const Ser& a, const Ser& b, int prec) {
  long d = a[0].d();
  Ser r(prec, FieldElement(d, 0));
  for (int i = 0; i < prec && i < (int)a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j < prec && j < (int)b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

IsogenyMap isogeny_from_alpha(const Curve& E, const FieldElement& alpha) {
  long d = E.d();
  mpq_class nm = alpha.norm();
  if (nm.get_den() != 1 || nm == 0) throw Error(ErrorCode::InvalidInput, "alpha must have integral nonzero norm");
  int l = (int)mpz_class(abs(nm.get_num())).get_si();
  if (l < 1 || l > 40) throw Error(ErrorCode::Unsupported, "isogeny degree out of range");
  Curve T = E.conj();
  FieldElement A = mpq_class(-1, 48) * E.c4(), B = mpq_class(-1, 864) * E.c6();
  FieldElement a2 = alpha * alpha, a4 = a2 * a2, a3 = a2 * alpha;
  FieldElement A2 = a4 * T.c4() * mpq_class(-1, 48), B2 = a4 * a2 * T.c6() * mpq_class(-1, 864);
  const int prec = 2 * l + 6;
  auto c = wp_coefficients(A, B, prec), c2 = wp_coefficients(A2, B2, prec);
  FieldElement zero(d, 0), one(d, 1);
  Ser S(prec, zero), S2(prec, zero);
  S[0] = one;
  S2[0] = one;
  for (int k = 1; k + 1 < prec; ++k) {
    S[k + 1] = c[k];
    S2[k + 1] = c2[k];
  }
  std::vector<Ser> Sp(l + 1);
  Sp[0] = Ser(prec, zero);
  Sp[0][0] = one;
  for (int i = 1; i <= l; ++i) Sp[i] = smul(Sp[i - 1], S, prec);
  // unknowns: d_0..d_{l-2}, n_0..n_{l-1}
  int nu = 2 * l - 1;
  std::vector<std::vector<FieldElement>> M(prec, std::vector<FieldElement>(nu + 1, zero));
  for (int i = 0; i <= l - 1; ++i) {
    Ser t = smul(S2, Sp[i], prec);
    int sh = l - 1 - i;
    for (int e = sh; e < prec; ++e) {
      if (i < l - 1)
        M[e][i] += t[e - sh];
      else
        M[e][nu] -= t[e - sh];
    }
  }
  for (int i = 0; i <= l; ++i) {
    int sh = l - i;
    for (int e = sh; e < prec; ++e) {
      if (i < l)
        M[e][l - 1 + i] -= Sp[i][e - sh];
      else
        M[e][nu] += Sp[i][e - sh];
    }
  }
  // Gaussian elimination
  int row = 0;
  std::vector<int> pivcol;
  for (int col = 0; col < nu && row < prec; ++col) {
    int piv = -1;
    for (int r = row; r < prec; ++r)
      if (!M[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[row], M[piv]);
    FieldElement inv = M[row][col].inverse();
    for (int j = col; j <= nu; ++j) M[row][j] *= inv;
    for (int r = 0; r < prec; ++r) {
      if (r == row || M[r][col].is_zero()) continue;
      FieldElement f = M[r][col];
      for (int j = col; j <= nu; ++j) M[r][j] -= f * M[row][j];
    }
    pivcol.push_back(col);
    ++row;
  }
  for (int r = row; r < prec; ++r)
    if (!M[r][nu].is_zero()) throw Error(ErrorCode::NotAnIsogeny, "no isogeny with this pullback scalar");
  if ((int)pivcol.size() != nu) throw Error(ErrorCode::NotAnIsogeny, "isogeny from alpha is not unique");
  std::vector<FieldElement> sol(nu, zero);
  for (int r = 0; r < nu; ++r) sol[pivcol[r]] = M[r][nu];
  KPoly N(l + 1, zero), D(l, zero);
  for (int i = 0; i < l - 1; ++i) D[i] = sol[i];
  D[l - 1] = one;
  for (int i = 0; i < l; ++i) N[i] = sol[l - 1 + i];
  N[l] = one;
  trim(N);
  trim(D);
  FieldElement b2 = E.b2(), b2t = T.b2();
  KPoly L = {mpq_class(1, 12) * b2, one};
  KPoly NL = pcompose(N, L), DL = pcompose(D, L);
  IsogenyMap mu;
  mu.source = E;
  mu.target = T;
  mu.g = {psub(NL, pscale(DL, a2 * b2t * mpq_class(1, 12))), pscale(DL, a2)};
  KPoly Gp = psub(pmul(pderiv(N), D), pmul(N, pderiv(D)));
  KPoly GpL = pcompose(Gp, L);
  mu.h = {GpL, pscale(pmul(DL, DL), a3)};
  KRat half_lin{{mpq_class(1, 2) * E.a3(), mpq_class(1, 2) * E.a1()}, {one}};
  trim(half_lin.num);
  KRat tg{pscale(mu.g.num, T.a1()), mu.g.den};
  KRat k1 = rmul(half_lin, mu.h);
  KRat k2 = radd(tg, KRat{pconst(T.a3()), {one}});
  mu.k = rsub(k1, rmul(KRat{{mpq_class(1, 2) * one}, {one}}, k2));
  mu.g = normalise(mu.g, d);
  mu.h = normalise(mu.h, d);
  mu.k = normalise(mu.k, d);
  SignedDegree sd = verify_isogeny(mu);
  if (sd.alpha != alpha) throw Error(ErrorCode::Internal, "reconstructed isogeny has a different pullback");
  return mu;
}

}  // namespace qcurve
