// Classical modular polynomials Phi_l(X, Y) from q-expansions.
//
// With Q = q^(1/l), the l roots j(zeta^k Q) have power sums
// p_n = l * sum_{l | e} [Q^e] j(Q)^n, Newton's identities give the
// elementary symmetric functions, and Phi(X, j(q)) = (X - j(q^l)) * R(X).
// Each X-coefficient is then peeled into a polynomial in j(q).

#include <gmpxx.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

// Laurent series sum_{i} c[i] q^(v + i), known up to (excluding) q^prec
struct Series {
  int v = 0;
  int prec = 0;
  std::vector<mpz_class> c;

  mpz_class at(int e) const {
    int i = e - v;
    if (i < 0 || i >= (int)c.size()) return 0;
    return c[i];
  }
};

Series mul(const Series& a, const Series& b) {
  Series r;
  r.v = a.v + b.v;
  r.prec = std::min(a.prec + b.v, b.prec + a.v);
  int n = r.prec - r.v;
  if (n < 0) n = 0;
  r.c.assign(n, 0);
  for (int i = 0; i < (int)a.c.size() && i < n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < (int)b.c.size() && i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

Series add(const Series& a, const Series& b, const mpz_class& kb = 1) {
  Series r;
  r.v = std::min(a.v, b.v);
  r.prec = std::min(a.prec, b.prec);
  r.c.assign(std::max(0, r.prec - r.v), 0);
  for (int e = r.v; e < r.prec; ++e) r.c[e - r.v] = a.at(e) + kb * b.at(e);
  return r;
}

// power series with constant term 1, inverse to the same precision
Series inverse_unit(const Series& a) {
  Series r;
  r.v = 0;
  r.prec = a.prec;
  int n = a.prec;
  r.c.assign(n, 0);
  r.c[0] = 1;
  for (int k = 1; k < n; ++k) {
    mpz_class s = 0;
    for (int i = 1; i <= k; ++i) s += a.at(i) * r.c[k - i];
    r.c[k] = -s;
  }
  return r;
}

// j(q) up to q^(prec-1)
Series j_invariant(int prec) {
  int n = prec + 2;
  Series e4;
  e4.prec = n;
  e4.c.assign(n, 0);
  e4.c[0] = 1;
  for (int m = 1; m < n; ++m) {
    mpz_class s = 0;
    for (int dd = 1; dd <= m; ++dd)
      if (m % dd == 0) s += mpz_class(dd) * dd * dd;
    e4.c[m] = 240 * s;
  }
  Series eta;
  eta.prec = n;
  eta.c.assign(n, 0);
  for (long k = 0;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= n) break;
    int sign = (k % 2) ? -1 : 1;
    eta.c[e1] += sign;
    if (k > 0 && e2 < n) eta.c[e2] += sign;
  }
  Series e24 = eta;
  for (int i = 1; i < 24; ++i) e24 = mul(e24, eta);
  Series j = mul(mul(mul(e4, e4), e4), inverse_unit(e24));
  j.v = -1;
  j.prec = n - 1;
  j.c.resize(n);
  return j;
}

// coefficients c[a][b] of X^a Y^b
std::map<std::pair<int, int>, mpz_class> modpoly(int l) {
  const int extra = 8;
  const int qprec = l + 1 + extra;     // need Phi's q-series to here
  const int Qprec = l * (qprec + l) + l;  // Q-precision of j(Q)^n
  Series jQ = j_invariant(Qprec + l + 2);

  // p_n as q-series
  std::vector<Series> p(l + 1);
  Series pw = jQ;
  for (int n = 1; n <= l; ++n) {
    if (n > 1) pw = mul(pw, jQ);
    Series s;
    s.v = -1;
    s.prec = qprec + l;
    s.c.assign(s.prec - s.v, 0);
    for (int m = s.v; m < s.prec; ++m) s.c[m - s.v] = l * pw.at(l * m);
    if (pw.prec <= l * (s.prec - 1)) {
      std::cerr << "insufficient precision\n";
      std::exit(1);
    }
    p[n] = s;
  }
  // e_i by Newton
  std::vector<Series> e(l + 1);
  e[0].v = 0;
  e[0].prec = qprec + l;
  e[0].c.assign(e[0].prec, 0);
  e[0].c[0] = 1;
  for (int i = 1; i <= l; ++i) {
    Series s;
    s.v = 0;
    s.prec = qprec + l;
    s.c.assign(s.prec, 0);
    for (int k = 1; k <= i; ++k) s = add(s, mul(e[i - k], p[k]), (k % 2) ? 1 : -1);
    for (auto& x : s.c) {
      if (x % i != 0) {
        std::cerr << "Newton division not exact\n";
        std::exit(1);
      }
      x /= i;
    }
    e[i] = s;
  }
  // R(X) = sum_i (-1)^i e_i X^(l-i); Phi = X*R - j(q^l)*R
  Series jq = j_invariant(qprec + l + 2);
  Series jql;
  jql.v = -l;
  jql.prec = l * (jq.prec);
  jql.c.assign(jql.prec - jql.v, 0);
  for (int i = jq.v; i < jq.prec; ++i) jql.c[l * i - jql.v] = jq.at(i);
  std::vector<Series> coef(l + 2);  // coefficient of X^a
  for (int a = 0; a <= l + 1; ++a) {
    Series s;
    s.v = -(l + 1);
    s.prec = qprec;
    s.c.assign(s.prec - s.v, 0);
    if (a >= 1) {
      int i = l - (a - 1);
      s = add(s, e[i], (i % 2) ? -1 : 1);
    }
    if (a <= l) {
      int i = l - a;
      s = add(s, mul(jql, e[i]), (i % 2) ? 1 : -1);
    }
    coef[a] = s;
  }
  // powers of j(q)
  std::vector<Series> jp(l + 2);
  jp[0].v = 0;
  jp[0].prec = qprec + 2 * l;
  jp[0].c.assign(jp[0].prec, 0);
  jp[0].c[0] = 1;
  for (int b = 1; b <= l + 1; ++b) jp[b] = mul(jp[b - 1], jq);
  std::map<std::pair<int, int>, mpz_class> out;
  for (int a = 0; a <= l + 1; ++a) {
    Series s = coef[a];
    for (int b = l + 1; b >= 0; --b) {
      mpz_class c = s.at(-b);
      if (c != 0) {
        out[{a, b}] = c;
        s = add(s, jp[b], -c);
      }
    }
    for (int ee = s.v; ee < s.prec; ++ee) {
      if (s.at(ee) != 0) {
        std::cerr << "peeling failed for l=" << l << " a=" << a << " at q^" << ee << "\n";
        std::exit(1);
      }
    }
  }
  for (auto& [k, c] : out) {
    auto it = out.find({k.second, k.first});
    if (it == out.end() || it->second != c) {
      std::cerr << "asymmetric result for l=" << l << "\n";
      std::exit(1);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ells = {2, 3, 5, 7, 11, 13};
  std::string path = argc > 1 ? argv[1] : "modpoly.txt";
  std::ofstream os(path);
  if (!os) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  os << "# l a b c : Phi_l(X, Y) contains c X^a Y^b\n";
  for (int l : ells) {
    auto phi = modpoly(l);
    for (auto& [k, c] : phi) os << l << " " << k.first << " " << k.second << " " << c.get_str() << "\n";
    std::cerr << "Phi_" << l << ": " << phi.size() << " terms\n";
  }
  return 0;
}
