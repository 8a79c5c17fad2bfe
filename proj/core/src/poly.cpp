#include "spectra_cert/poly.hpp"

#include <sstream>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

RatPoly pow(const RatPoly& p, unsigned e) {
  RatPoly r(Rational(1));
  RatPoly b = p;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw ParameterError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
  const Rational lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(rem[i]) == 0) continue;
    Rational f = rem[i] / lead;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  return Rational(1 / p.leading()) * p;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

std::vector<RatPoly> square_free_factors(const RatPoly& p) {
  if (p.is_zero()) throw ParameterError("square-free factorisation of zero");
  std::vector<RatPoly> out;
  if (p.degree() == 0) return out;
  RatPoly dp = p.derivative();
  RatPoly a = gcd(p, dp);
  RatPoly b = divmod(p, a).first;
  RatPoly c = divmod(dp, a).first;
  RatPoly d = c - b.derivative();
  while (b.degree() > 0) {
    RatPoly f = gcd(b, d);
    out.push_back(f);
    b = divmod(b, f).first;
    c = divmod(d, f).first;
    d = c - b.derivative();
  }
  return out;
}

RatPoly square_free_part(const RatPoly& p) {
  RatPoly r(Rational(1));
  for (const auto& f : square_free_factors(p)) r *= f;
  return monic(r);
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps sign variations intact and coefficients small.
    Rational s = abs(r.leading());
    chain.push_back(Rational(-1 / s) * r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<RatPoly>& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(sgn(q.eval(x)));
  return variations(s);
}

int variations_at_inf(const std::vector<RatPoly>& chain, bool negative) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) {
    if (q.is_zero()) {
      s.push_back(0);
      continue;
    }
    int sg = sgn(q.leading());
    if (negative && (q.degree() % 2 == 1)) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

}  // namespace

int sturm_count(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

int sturm_count_below(const std::vector<RatPoly>& chain, const Rational& b) {
  return variations_at_inf(chain, true) - variations_at(chain, b);
}

int sturm_count_above(const std::vector<RatPoly>& chain, const Rational& a) {
  return variations_at(chain, a) - variations_at_inf(chain, false);
}

bool real_rooted_negative(const RatPoly& p) {
  if (p.is_zero()) throw ParameterError("real_rooted_negative: zero polynomial");
  if (p.degree() == 0) return true;
  // Each square-free factor must have all its roots real and in (-inf, 0).
  for (const auto& f : square_free_factors(p)) {
    if (f.degree() <= 0) continue;
    if (sgn(f.coeff(0)) == 0) return false;
    auto chain = sturm_chain(f);
    if (sturm_count_below(chain, Rational(0)) != f.degree()) return false;
  }
  return true;
}

bool nonnegative_coefficients(const RatPoly& p) {
  for (const auto& c : p.coeffs())
    if (sgn(c) < 0) return false;
  return true;
}

bool coefficientwise_leq(const RatPoly& a, const RatPoly& b) {
  return nonnegative_coefficients(b - a);
}

std::vector<std::string> coeff_strings(const RatPoly& p) {
  std::vector<std::string> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

std::string to_string(const RatPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const bool unit = (a == 1);
    if (!unit || k == 0) os << to_string(a);
    if (k >= 1) os << (unit ? "" : "*") << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

RatPoly eval_theta(const RatPoly2& p, const Rational& theta) {
  std::vector<Rational> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.eval(theta));
  return RatPoly(std::move(out));
}

RatPoly2 theta_derivative(const RatPoly2& p) {
  std::vector<RatPoly> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.derivative());
  return RatPoly2(std::move(out));
}

RatPoly2 lift(const RatPoly& p) {
  std::vector<RatPoly> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(RatPoly(c));
  return RatPoly2(std::move(out));
}

}  // namespace spectra_cert
