#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcurve/isogeny.hpp"
#include "qcurve/newform.hpp"
#include "qcurve/periods.hpp"

namespace qcurve {

// coefficients of one newform embedded in C; b are the coefficients of f* (complex conjugates)
struct EmbeddedForm {
  mpz_class level;
  std::vector<Cx> a, b;  // index 0 unused
};

// f with sqrt m -> +sqrt m (or i sqrt|m|); sigma selects the conjugate form
EmbeddedForm embed_form(const NewformData& nf, const std::vector<FieldElement>& coeffs, bool sigma);

// M = ceil(sqrt N / 2 pi * (D ln 10 + ln sqrt N + 10))
size_t truncation(const mpz_class& level, unsigned digits);

struct LValue {
  Cx value;
  Real error;
  size_t terms = 0;
  Cx eta;
};

// Fricke sign from the t-independence of the split series at heights t0, 1.3 t0
Cx eta(const EmbeddedForm& f, int workers = 1);
// L(f,1) (k = 0) or L'(f,1) (k = 1) using the sign eta
LValue l_value(const EmbeddedForm& f, const Cx& eta, int k, int workers = 1);
// |L(1) at split height t - L(1) at t = 1| for the given heights
Real fe_residual(const EmbeddedForm& f, const Cx& eta, const Real& t);
Real tail_bound(const EmbeddedForm& f, const Real& t);

// exponential integral E1(x), x > 0
Real expint_e1(const Real& x);

struct LBoundReport {
  mpq_class q_alpha;
  u64 tors = 0;
  int t = 1;
  mpz_class nd_alpha;
  u64 s_lcm = 1, s_max = 1;
  mpz_class Q_reconstruct;  // B
  mpz_class Q_vanish;       // same with s_max
  Real threshold;
};

// throws SquareDegreeCase when m is a square
LBoundReport bound(const QuadraticField& K, const FieldElement& alpha, long m, u64 tors, u64 s_lcm, u64 s_max,
                   const OmegaE& omega);

// the unique k/B with |x - k/B| < 1/(2B), reduced; none on the boundary
std::optional<mpq_class> reconstruct_rational(const Real& x, const mpz_class& B);

enum class VerdictKind { Vanishes, Ratio, Inconclusive };
struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  mpq_class ratio;
  Real x;  // L(E,1) sqrt|disc| / Omega
  std::string reason;
};
const char* verdict_name(VerdictKind v);

// L(E,1) = L(f,1) L(sigma f,1)
Verdict decide(const Cx& LE, const Real& err, const LBoundReport& b, const QuadraticField& K, const OmegaE& omega);

}  // namespace qcurve
