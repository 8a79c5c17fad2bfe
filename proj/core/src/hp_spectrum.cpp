#include "spectra_cert/hp_spectrum.hpp"

#include <algorithm>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

std::string MpfrNum::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, x_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

namespace {

Rational cauchy_bound(const RatPoly& f) {
  Rational m = 0;
  const Rational lead = abs(f.leading());
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeffs()[i]) / lead));
  return m + 1;
}

Rational dyadic_width(int bits) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  return Rational(Integer(1), den);
}

void refine_root(const RatPoly& f, const std::vector<RatPoly>& chain, RootInterval& r, const Rational& width) {
  while (r.hi - r.lo > width) {
    Rational mid = (r.lo + r.hi) / 2;
    if (sgn(f.eval(mid)) == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (sturm_count(chain, r.lo, mid) == 1) r.hi = mid;
    else r.lo = mid;
  }
}

void isolate_factor(const RatPoly& f, const std::vector<RatPoly>& chain, int mult, const Rational& width,
                    std::vector<RootInterval>& out) {
  const Rational b = cauchy_bound(f);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int c = sturm_count(chain, lo, hi);
    if (c == 0) continue;
    if (c == 1) {
      RootInterval r{lo, hi, mult};
      refine_root(f, chain, r, width);
      out.push_back(r);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
}

RatPoly strip_zero_roots(const RatPoly& p) {
  int k = 0;
  while (k < p.degree() && sgn(p.coeff(k)) == 0) ++k;
  return RatPoly(std::vector<Rational>(p.coeffs().begin() + k, p.coeffs().end()));
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rational& width) {
  std::vector<RootInterval> out;
  auto factors = square_free_factors(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    isolate_factor(factors[i], sturm_chain(factors[i]), static_cast<int>(i) + 1, width, out);
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

HpSpectrum::HpSpectrum(const RatMatrix& m) : charpoly_(charpoly(m)) {
  auto factors = square_free_factors(charpoly_);
  const Rational w = dyadic_width(32);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    auto chain = sturm_chain(factors[i]);
    std::vector<RootInterval> local;
    isolate_factor(factors[i], chain, static_cast<int>(i) + 1, w, local);
    for (auto& r : local) {
      roots_.push_back(r);
      factor_of_root_.push_back(static_cast<int>(chains_.size()));
    }
    chains_.push_back(std::move(chain));
  }
  bits_ = 32;
  if (size() != static_cast<int>(m.size()))
    throw ContractViolation("HpSpectrum: characteristic polynomial has non-real roots");
}

int HpSpectrum::size() const {
  int s = 0;
  for (const auto& r : roots_) s += r.multiplicity;
  return s;
}

void HpSpectrum::refine(int bits) {
  if (bits <= bits_) return;
  const Rational w = dyadic_width(bits);
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const auto& chain = chains_[factor_of_root_[i]];
    refine_root(chain.front(), chain, roots_[i], w);
  }
  bits_ = bits;
}

void HpSpectrum::pin(const Rational& x) {
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    auto& r = roots_[i];
    if (x < r.lo || x > r.hi) continue;
    if (sgn(chains_[factor_of_root_[i]].front().eval(x)) == 0) r.lo = r.hi = x;
  }
}

HpEnclosure hp_sum(const HpSpectrum& s, HpFunction f, double param, mpfr_prec_t prec) {
  HpEnclosure out{MpfrNum(prec), MpfrNum(prec)};
  MpfrNum a(prec), b(prec), p(prec), lo_v(prec), hi_v(prec);
  mpfr_set_d(p.get(), param, MPFR_RNDN);
  for (const auto& r : s.roots()) {
    mpfr_set_q(a.get(), r.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.get(), r.hi.get_mpq_t(), MPFR_RNDU);
    if (f == HpFunction::abs_power) {
      // |x|^p on [a, b]
      if (mpfr_sgn(a.get()) >= 0) {
        mpfr_pow(lo_v.get(), a.get(), p.get(), MPFR_RNDD);
        mpfr_pow(hi_v.get(), b.get(), p.get(), MPFR_RNDU);
      } else if (mpfr_sgn(b.get()) <= 0) {
        mpfr_neg(a.get(), a.get(), MPFR_RNDN);
        mpfr_neg(b.get(), b.get(), MPFR_RNDN);
        mpfr_pow(lo_v.get(), b.get(), p.get(), MPFR_RNDD);
        mpfr_pow(hi_v.get(), a.get(), p.get(), MPFR_RNDU);
      } else {
        mpfr_set_zero(lo_v.get(), 1);
        mpfr_neg(a.get(), a.get(), MPFR_RNDN);
        mpfr_max(a.get(), a.get(), b.get(), MPFR_RNDU);
        mpfr_pow(hi_v.get(), a.get(), p.get(), MPFR_RNDU);
      }
    } else {
      // (x - t)_+^2 is nondecreasing
      mpfr_sub(a.get(), a.get(), p.get(), MPFR_RNDD);
      mpfr_sub(b.get(), b.get(), p.get(), MPFR_RNDU);
      if (mpfr_sgn(a.get()) < 0) mpfr_set_zero(a.get(), 1);
      if (mpfr_sgn(b.get()) < 0) mpfr_set_zero(b.get(), 1);
      mpfr_sqr(lo_v.get(), a.get(), MPFR_RNDD);
      mpfr_sqr(hi_v.get(), b.get(), MPFR_RNDU);
    }
    mpfr_mul_si(lo_v.get(), lo_v.get(), r.multiplicity, MPFR_RNDD);
    mpfr_mul_si(hi_v.get(), hi_v.get(), r.multiplicity, MPFR_RNDU);
    mpfr_add(out.lo.get(), out.lo.get(), lo_v.get(), MPFR_RNDD);
    mpfr_add(out.hi.get(), out.hi.get(), hi_v.get(), MPFR_RNDU);
  }
  return out;
}

HpComparison hp_compare(const RatMatrix& a, const RatMatrix& b, HpFunction f, double param, int max_bits) {
  HpComparison out;
  if (strip_zero_roots(charpoly(a)) == strip_zero_roots(charpoly(b))) {
    out.exact_equal = out.same_spectrum = true;
    return out;
  }
  HpSpectrum sa(a), sb(b);
  const Rational pinned = f == HpFunction::plus_square ? Rational(param) : Rational(0);
  sa.pin(pinned);
  sb.pin(pinned);
  for (int bits = 64; bits <= max_bits; bits *= 2) {
    sa.refine(bits);
    sb.refine(bits);
    const mpfr_prec_t prec = bits + 64;
    HpEnclosure ea = hp_sum(sa, f, param, prec), eb = hp_sum(sb, f, param, prec);
    MpfrNum dlo(prec), dhi(prec);
    mpfr_sub(dlo.get(), ea.lo.get(), eb.hi.get(), MPFR_RNDD);
    mpfr_sub(dhi.get(), ea.hi.get(), eb.lo.get(), MPFR_RNDU);
    out.bits = bits;
    out.lo = dlo.to_double(MPFR_RNDD);
    out.hi = dhi.to_double(MPFR_RNDU);
    if (mpfr_zero_p(dlo.get()) && mpfr_zero_p(dhi.get())) {
      out.exact_equal = true;
      return out;
    }
    if (mpfr_sgn(dlo.get()) > 0) {
      out.sign = 1;
      return out;
    }
    if (mpfr_sgn(dhi.get()) < 0) {
      out.sign = -1;
      return out;
    }
  }
  out.sign = 0;
  return out;
}

std::optional<Rational> exact_stoploss(const RatMatrix& m, const Rational& t) {
  if (m.empty()) return Rational(0);
  const auto factors = square_free_factors(charpoly(m));
  Rational total(0);
  auto plus_sq = [&](const Rational& r) { return r > t ? Rational((r - t) * (r - t)) : Rational(0); };
  for (std::size_t i = 0; i < factors.size(); ++i) {
    RatPoly f = factors[i];
    const long mult = static_cast<long>(i + 1);
    // Split off rational roots at t and 0, and integer roots within the Cauchy bound.
    std::vector<Rational> candidates{t, Rational(0)};
    if (f.degree() >= 2) {
      Rational bound(0);
      for (int k = 0; k < f.degree(); ++k) bound = std::max(bound, Rational(abs(f.coeff(k) / f.leading())));
      if (bound < 64)
        for (long k = 1; k <= bound + 1; ++k) {
          candidates.emplace_back(k);
          candidates.emplace_back(-k);
        }
    }
    for (const auto& c : candidates) {
      if (f.degree() < 1 || sgn(f.eval(c)) != 0) continue;
      f = divmod(f, RatPoly(std::vector<Rational>{-c, Rational(1)})).first;
      total += mult * plus_sq(c);
    }
    const int deg = f.degree();
    if (deg < 1) continue;
    const int above = sturm_count_above(sturm_chain(f), t);
    if (above == 0) continue;
    // Roots y = lambda - t of g(y) = f(y + t); sum y^2 = p1^2 - 2 e2 by Newton.
    const RatPoly g = f.compose_affine(t, Rational(1));
    const Rational p1 = -g.coeff(deg - 1) / g.leading();
    const Rational e2 = deg >= 2 ? Rational(g.coeff(deg - 2) / g.leading()) : Rational(0);
    const Rational p2 = p1 * p1 - 2 * e2;
    if (above == deg) {
      total += mult * p2;
      continue;
    }
    // Roots symmetric about t: g has a single parity.
    bool even = true, odd = true;
    for (int k = 0; k <= deg; ++k) {
      if (sgn(g.coeff(k)) == 0) continue;
      (k % 2 ? even : odd) = false;
    }
    if (!even && !odd) return std::nullopt;
    total += mult * p2 / 2;
  }
  return total;
}

}  // namespace spectra_cert
