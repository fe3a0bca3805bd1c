#include "qcurve/qfield.hpp"

#include <cmath>
#include <sstream>

#include "qcurve/error.hpp"

namespace qcurve {

FieldElement::FieldElement(long d, mpq_class x, mpq_class y) : d_(d), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

long FieldElement::field(const FieldElement& o) const {
  if (d_ == o.d_ || o.d_ == 0) return d_;
  if (d_ == 0) return o.d_;
  throw Error(ErrorCode::InvalidInput, "mixing elements of different quadratic fields");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  d_ = field(o);
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  d_ = field(o);
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  d_ = field(o);
  if (y_ == 0 && o.y_ == 0) {
    x_ *= o.x_;
    return *this;
  }
  mpq_class nx = x_ * o.x_ + d_ * y_ * o.y_;
  mpq_class ny = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  if (y_ == 0) return FieldElement(d_, 1 / x_);
  mpq_class n = norm();
  return FieldElement(d_, x_ / n, -y_ / n);
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r(d_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool FieldElement::is_integral() const {
  mpz_class X, Y, D;
  omega_coords(X, Y, D);
  return D == 1;
}

void FieldElement::omega_coords(mpz_class& X, mpz_class& Y, mpz_class& D) const {
  mpq_class a = x_, b = y_;
  if (d_ != 0 && ((d_ % 4) + 4) % 4 == 1) {
    a = x_ - y_;
    b = 2 * y_;
  }
  D = lcm(a.get_den(), b.get_den());
  X = a.get_num() * (D / a.get_den());
  Y = b.get_num() * (D / b.get_den());
}

FieldElement FieldElement::from_omega(long d, const mpz_class& X, const mpz_class& Y, const mpz_class& D) {
  if (((d % 4) + 4) % 4 == 1) {
    mpq_class h(Y, 2 * D), x(X, D);
    h.canonicalize();
    x.canonicalize();
    return FieldElement(d, x + h, h);
  }
  return FieldElement(d, mpq_class(X, D), mpq_class(Y, D));
}

std::string FieldElement::str() const {
  if (y_ == 0) return x_.get_str();
  std::ostringstream os;
  if (x_ != 0) os << x_.get_str() << (y_ > 0 ? "+" : "");
  if (y_ == -1)
    os << "-";
  else if (y_ != 1)
    os << y_.get_str() << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

double FieldElement::approx(int embedding) const {
  double s = std::sqrt((double)d_);
  if (embedding) s = -s;
  return x_.get_d() + y_.get_d() * s;
}

namespace {

mpq_class parse_rational(const std::string& s) {
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  std::string t = s[0] == '+' ? s.substr(1) : s;
  mpq_class q;
  size_t dot = t.find('.');
  if (dot != std::string::npos) {
    bool neg = !t.empty() && t[0] == '-';
    std::string u = neg ? t.substr(1) : t;
    dot = u.find('.');
    std::string ip = u.substr(0, dot), fp = u.substr(dot + 1);
    mpz_class den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    mpz_class num(ip.empty() ? "0" : ip);
    if (!fp.empty()) num = num * den + mpz_class(fp);
    q = mpq_class(num, den);
    q.canonicalize();
    if (neg) q = -q;
  } else if (q.set_str(t, 10) != 0) {
    throw Error(ErrorCode::InvalidInput, "cannot parse number '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

FieldElement parse_element(long d, const std::string& in) {
  std::string s;
  for (char c : in)
    if (!std::isspace((unsigned char)c)) s += c;
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty field element");
  std::vector<std::string> terms;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (i > start && depth == 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '*' &&
        s[i - 1] != 'e' && s[i - 1] != '(') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  mpq_class x = 0, y = 0;
  for (auto& t : terms) {
    size_t k = t.find("sqrt(");
    if (k == std::string::npos) {
      x += parse_rational(t);
      continue;
    }
    size_t close = t.find(')', k);
    if (close == std::string::npos) throw Error(ErrorCode::InvalidInput, "unbalanced sqrt in '" + in + "'");
    long dd = std::stol(t.substr(k + 5, close - k - 5));
    if (dd != d) throw Error(ErrorCode::InvalidInput, "sqrt(" + std::to_string(dd) + ") in field with d=" + std::to_string(d));
    std::string coef = t.substr(0, k);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    mpq_class c = parse_rational(coef);
    std::string rest = t.substr(close + 1);
    if (!rest.empty()) {
      if (rest[0] != '/') throw Error(ErrorCode::InvalidInput, "cannot parse '" + in + "'");
      c /= parse_rational(rest.substr(1));
    }
    y += c;
  }
  return FieldElement(d, x, y);
}

QuadraticField QuadraticField::make(long d) {
  if (d == 0 || d == 1) throw Error(ErrorCode::DegenerateD, "d must not be 0 or 1");
  if (!is_squarefree(d)) throw Error(ErrorCode::NonSquarefree, std::to_string(d) + " is not squarefree");
  QuadraticField K;
  K.d_ = d;
  K.disc_ = K.one_mod_four() ? d : 4 * d;
  return K;
}

int QuadraticField::kronecker(u64 p) const {
  return mpz_kronecker_ui(mpz_class(disc_).get_mpz_t(), p);
}

FieldElement QuadraticField::omega() const {
  if (one_mod_four()) return FieldElement(d_, mpq_class(1, 2), mpq_class(1, 2));
  return FieldElement(d_, 0, 1);
}

std::string PrimeIdeal::str() const {
  std::ostringstream os;
  switch (kind) {
    case Splitting::Inert: os << "(" << p << ")"; break;
    case Splitting::Ramified: os << "P" << p; break;
    case Splitting::Split: os << "P" << p << "_" << (index + 1); break;
  }
  return os.str();
}

std::vector<PrimeIdeal> primes_above(const QuadraticField& K, u64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
  long d = K.d();
  PrimeIdeal P;
  P.d = d;
  P.p = p;
  if (p == 2) {
    long dm8 = ((d % 8) + 8) % 8;
    if (dm8 == 1) {
      // omega^2 - omega - (d-1)/4: roots 0 and 1 mod 2
      P.kind = Splitting::Split;
      PrimeIdeal Q = P;
      P.omega_image = 0;
      Q.omega_image = 1;
      Q.index = 1;
      return {P, Q};
    }
    if (dm8 == 5) return {P};
    P.kind = Splitting::Ramified;
    P.omega_image = (d % 2 == 0) ? 0 : 1;
    return {P};
  }
  long dm = ((d % (long)p) + (long)p) % (long)p;
  if (dm == 0) {
    P.kind = Splitting::Ramified;
    P.omega_image = K.one_mod_four() ? invmod(2, p) : 0;
    return {P};
  }
  if (legendre(dm, p) == -1) return {P};
  u64 r = sqrtmod(dm, p);
  u64 rs[2] = {r, p - r};
  std::vector<PrimeIdeal> out;
  for (int i = 0; i < 2; ++i) {
    PrimeIdeal Q = P;
    Q.kind = Splitting::Split;
    Q.index = i;
    Q.omega_image = K.one_mod_four() ? mulmod((1 + rs[i]) % p, invmod(2, p), p) : rs[i];
    out.push_back(Q);
  }
  return out;
}

PrimeIdeal conjugate(const PrimeIdeal& P) {
  if (P.kind != Splitting::Split) return P;
  auto v = primes_above(QuadraticField::make(P.d), P.p);
  return v[1 - P.index];
}

namespace {

// omega modulo p^k at the split prime P
mpz_class hensel_omega(const PrimeIdeal& P, unsigned k) {
  QuadraticField K = QuadraticField::make(P.d);
  mpz_class pk, pp(P.p);
  mpz_pow_ui(pk.get_mpz_t(), pp.get_mpz_t(), k);
  mpz_class r(P.omega_image), t(K.omega_t()), n0(K.omega_n0());
  for (unsigned prec = 1; prec < k; prec *= 2) {
    mpz_class f = r * r - t * r - n0, fp = 2 * r - t, inv;
    mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), pk.get_mpz_t());
    r = r - f * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
  }
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
  return r;
}

}  // namespace

int valuation(const FieldElement& z, const PrimeIdeal& P) {
  if (z.is_zero()) return kInfiniteValuation;
  mpz_class X, Y, D;
  z.omega_coords(X, Y, D);
  int vd = valuation(D, P.p);
  if (P.kind == Splitting::Ramified) {
    mpq_class n = z.norm();
    return valuation(n.get_num(), P.p) - valuation(n.get_den(), P.p);
  }
  int vx = valuation(X, P.p), vy = valuation(Y, P.p);
  int m = std::min(vx, vy);
  if (P.kind == Splitting::Inert) return m - vd;
  mpz_class pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), P.p, m);
  X /= pm;
  Y /= pm;
  FieldElement w = FieldElement::from_omega(P.d, X, Y);
  int e = valuation(w.norm().get_num(), P.p);
  if (e == 0) return m - vd;
  mpz_class s = X + Y * mpz_class(P.omega_image);
  bool here = mpz_divisible_ui_p(s.get_mpz_t(), P.p);
  return m - vd + (here ? e : 0);
}

bool is_integral_at(const FieldElement& z, const PrimeIdeal& P) { return valuation(z, P) >= 0; }

Fq residue_field(const PrimeIdeal& P) {
  if (P.kind != Splitting::Inert) return Fq(P.p);
  QuadraticField K = QuadraticField::make(P.d);
  long n0 = K.omega_n0() % (long)P.p;
  if (n0 < 0) n0 += P.p;
  return Fq(P.p, (u64)n0, (u64)K.omega_t());
}

Fe reduce(const FieldElement& z, const PrimeIdeal& P, const Fq& F) {
  if (z.is_zero()) return F.zero();
  mpz_class X, Y, D;
  z.omega_coords(X, Y, D);
  u64 p = P.p;
  if (!mpz_divisible_ui_p(D.get_mpz_t(), p)) {
    u64 di = invmod(mpz_mod_u64(D, p), p);
    u64 xr = mpz_mod_u64(X, p), yr = mpz_mod_u64(Y, p);
    if (P.kind == Splitting::Inert) return {mulmod(xr, di, p), mulmod(yr, di, p)};
    return {mulmod((xr + mulmod(yr, P.omega_image, p)) % p, di, p), 0};
  }
  int v = valuation(z, P);
  if (v < 0) throw Error(ErrorCode::NotPIntegral, z.str() + " is not integral at " + P.str());
  if (P.kind != Splitting::Split) throw Error(ErrorCode::Internal, "unexpected denominator");
  int e = valuation(D, p);
  mpz_class rho = hensel_omega(P, e + 1), pe, pe1;
  mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
  pe1 = pe * p;
  mpz_class s = (X + Y * rho) % pe1;
  if (s < 0) s += pe1;
  s /= pe;
  u64 di = invmod(mpz_mod_u64(D / pe, p), p);
  return {mulmod(mpz_mod_u64(s, p), di, p), 0};
}

FieldElement lift(Fe a, const PrimeIdeal& P) {
  if (P.kind == Splitting::Inert) return FieldElement::from_omega(P.d, mpz_class(a.a), mpz_class(a.b));
  return FieldElement(P.d, mpq_class(mpz_class(a.a)));
}

FieldElement uniformizer(const PrimeIdeal& P) {
  if (P.kind != Splitting::Ramified) return FieldElement(P.d, mpq_class(mpz_class(P.p)));
  if (P.d % (long)P.p == 0) return FieldElement(P.d, 0, 1);
  return FieldElement(P.d, 1, 1);  // p = 2, d = 3 mod 4
}

mpz_class denominator_norm(const FieldElement& z) {
  if (z.is_zero()) throw Error(ErrorCode::ZeroElement, "denominator ideal of 0");
  mpz_class X, Y, D;
  z.omega_coords(X, Y, D);
  QuadraticField K = QuadraticField::make(z.d());
  mpz_class out = 1;
  for (u64 p : prime_divisors(D)) {
    for (auto& P : primes_above(K, p)) {
      int v = valuation(z, P);
      if (v < 0) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), P.norm(), -v);
        out *= t;
      }
    }
  }
  return out;
}

}  // namespace qcurve
