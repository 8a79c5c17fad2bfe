#include "spectra_cert/interval_cert.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "spectra_cert/errors.hpp"
#include "spectra_cert/parallel.hpp"

namespace spectra_cert {

namespace {

const Rational kSixth(1, 6);
const Rational kHalf(1, 2);

Ball exact(const Rational& q, mpfr_prec_t prec) { return ball_from_rational(q, prec); }

/// Antiderivative of (a + b u) sin(2 pi u).
Ball f2_anti(const Ball& u, const Rational& a, const Rational& b, const Ball& pi) {
  const mpfr_prec_t prec = u.prec();
  const Ball ab = exact(a, prec) + exact(b, prec) * u;
  const Ball arg = exact(2, prec) * u * pi;
  return -ab * cos(arg) / (exact(2, prec) * pi) + exact(b, prec) * sin(arg) / (exact(4, prec) * (pi * pi));
}

/// Antiderivative of (a + b u) sin(2 pi u) cos(2 pi u).
Ball f1_anti(const Ball& u, const Rational& a, const Rational& b, const Ball& pi) {
  const mpfr_prec_t prec = u.prec();
  const Ball ab = exact(a, prec) + exact(b, prec) * u;
  const Ball arg = exact(4, prec) * u * pi;
  return -ab * cos(arg) / (exact(8, prec) * pi) + exact(b, prec) * sin(arg) / (exact(32, prec) * (pi * pi));
}

/// A_p restricted to the cell containing u_mid: (alpha, beta) with A = alpha + beta u.
std::pair<Rational, Rational> cell_coeff(int p, const Rational& u_mid) {
  const int ind = u_mid < kSixth ? 1 : 0;
  Rational pu = p * u_mid;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), pu.get_num_mpz_t(), pu.get_den_mpz_t());
  return {Rational(ind + fl), Rational(1 - p)};
}

void check_no_straddle(const std::vector<Rational>& points, const Rational& lo, const Rational& hi,
                       const char* what) {
  for (const auto& x : points)
    if (lo < x && x < hi) throw ParameterError(std::string(what) + ": box straddles breakpoint " + to_string(x));
}

struct Atom {
  Rational alpha;
  int weight;
};

std::vector<Atom> k_atoms(int p, int q) {
  std::vector<Atom> atoms{{Rational(0), 1}, {kSixth, -1}};
  for (auto [n, w] : {std::pair{p, 1}, std::pair{q, 1}, std::pair{p + q - 1, -1}})
    for (int i = 1; i <= n / 2; ++i) atoms.push_back({ratio(i, n), w});
  return atoms;
}

std::string fmt_margin(const MpfrNum& m) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.22RDg", m.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

std::vector<Rational> strip_breakpoints(int p) {
  std::set<Rational> pts{Rational(0), kSixth, kHalf};
  for (int k = 0; k <= p; ++k) {
    Rational x(k, p);
    x.canonicalize();
    if (x <= kHalf) pts.insert(x);
  }
  return {pts.begin(), pts.end()};
}

std::vector<Rational> box_breakpoints(int p, int q) {
  std::set<Rational> pts{kSixth, kHalf};
  for (int n : {p, q, p + q - 1})
    for (int i = 1; i <= n / 2; ++i) {
      Rational x(i, n);
      x.canonicalize();
      if (kSixth <= x && x <= kHalf) pts.insert(x);
    }
  return {pts.begin(), pts.end()};
}

std::vector<RationalBox> sub_intervals(const std::vector<Rational>& points, const Rational& lo, const Rational& hi) {
  std::set<Rational> pts{lo, hi};
  for (const auto& v : points)
    if (lo <= v && v <= hi) pts.insert(v);
  std::vector<Rational> s(pts.begin(), pts.end());
  std::vector<RationalBox> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out.emplace_back(s[i], s[i + 1]);
  return out;
}

Ball d_strip(int p, const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (p < 2 || p > 6) throw ParameterError("d_strip: p must be in 2..6");
  if (lo > hi) throw ParameterError("d_strip: lo > hi");
  if (hi <= 0) return Ball(prec);
  if (lo < 0 || hi > kHalf) throw ParameterError("d_strip: box outside [0, 1/2]");
  const auto pts = strip_breakpoints(p);
  check_no_straddle(pts, lo, hi, "d_strip");
  const Ball pi = ball_pi(prec);
  const Ball r = ball_hull(lo, hi, prec);
  const Ball c_rho = cos(exact(2, prec) * r * pi);
  Ball total(prec);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational& a = pts[i];
    const Rational& b = pts[i + 1];
    const auto [alpha, beta] = cell_coeff(p, (a + b) / 2);
    const Ball aa = ball_hull(a, a, prec);
    if (b <= lo) {
      const Ball bb = ball_hull(b, b, prec);
      total += f1_anti(bb, alpha, beta, pi) - f1_anti(aa, alpha, beta, pi);
      total -= c_rho * (f2_anti(bb, alpha, beta, pi) - f2_anti(aa, alpha, beta, pi));
    } else if (a <= lo && hi <= b) {
      total += f1_anti(r, alpha, beta, pi) - f1_anti(aa, alpha, beta, pi);
      total -= c_rho * (f2_anti(r, alpha, beta, pi) - f2_anti(aa, alpha, beta, pi));
      break;
    }
  }
  return exact(16, prec) * pi * total;
}

Ball k_box(int p, int q, const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (p < 2 || q < p || q > 6) throw ParameterError("k_box: need 2 <= p <= q <= 6");
  if (lo > hi) throw ParameterError("k_box: lo > hi");
  const auto atoms = k_atoms(p, q);
  std::vector<Rational> pts{kSixth, kHalf};
  for (const auto& a : atoms) pts.push_back(a.alpha);
  check_no_straddle(pts, lo, hi, "k_box");
  const Ball pi = ball_pi(prec);
  const Ball c = cos(exact(2, prec) * ball_hull(lo, hi, prec) * pi);
  Ball total(prec);
  for (const auto& atom : atoms) {
    if (atom.alpha > lo) continue;
    const Ball ca = cos(exact(2, prec) * ball_hull(atom.alpha, atom.alpha, prec) * pi);
    const Ball diff = ca - c;
    total += exact(atom.weight, prec) * (diff * diff);
  }
  return exact(4, prec) * total;
}

Ball strip_threshold(int p, mpfr_prec_t prec) {
  const Ball pi = ball_pi(prec);
  const Ball cstar = exact(17, prec) * ball_sqrt(3, prec) * (pi * pi) / exact(27, prec);
  return cstar * (exact(Rational(1, 49), prec) + exact(Rational(1, (p + 6) * (p + 6)), prec));
}

CertResult certify_bisect(const BoxFunction& f, const std::vector<RationalBox>& boxes, const Ball& threshold,
                          const Rational& target, int max_depth) {
  CertResult res;
  res.min_margin = MpfrNum(threshold.prec());
  bool have_margin = false;
  const Ball tgt = ball_from_rational(target, threshold.prec());
  std::vector<std::tuple<Rational, Rational, int>> stack;
  for (const auto& [lo, hi] : boxes)
    if (lo < hi) stack.emplace_back(lo, hi, 0);
  while (!stack.empty()) {
    auto [lo, hi, depth] = std::move(stack.back());
    stack.pop_back();
    const Ball val = f(lo, hi) - threshold - tgt;
    if (val.positive()) {
      ++res.boxes;
      res.max_depth = std::max(res.max_depth, depth);
      MpfrNum lb = val.lower();
      if (!have_margin || mpfr_cmp(lb.get(), res.min_margin.get()) < 0) res.min_margin = lb;
      have_margin = true;
      continue;
    }
    if (depth >= max_depth)
      throw CertificationFailure("certification failed on [" + to_string(lo) + ", " + to_string(hi) + "] at depth " +
                                 std::to_string(depth));
    const Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid, depth + 1);
    stack.emplace_back(mid, hi, depth + 1);
  }
  res.passed = true;
  return res;
}

std::string FamilyResult::log_line() const {
  std::string head = q == 0 ? "p=" + std::to_string(p) : "p=" + std::to_string(p) + ", q=" + std::to_string(q);
  if (!failure.empty()) return head + ": FAILED: " + failure;
  return head + ": boxes=" + std::to_string(result.boxes) + ", max_depth=" + std::to_string(result.max_depth) +
         ", margin-after-target>=" + fmt_margin(result.min_margin);
}

bool AppendixAReport::passed() const {
  auto ok = [](const FamilyResult& f) { return f.result.passed; };
  return std::all_of(strips.begin(), strips.end(), ok) && std::all_of(boxes.begin(), boxes.end(), ok);
}

int AppendixAReport::max_depth() const {
  int d = 0;
  for (const auto& f : strips) d = std::max(d, f.result.max_depth);
  for (const auto& f : boxes) d = std::max(d, f.result.max_depth);
  return d;
}

std::vector<std::string> AppendixAReport::log_lines() const {
  std::vector<std::string> out;
  out.push_back("Checking strip certificates (D_p(rho) - C_*(1/49 + 1/(p+6)^2) >= 1e-4)...");
  for (const auto& f : strips) out.push_back("  " + f.log_line());
  out.push_back("Checking small-box certificates (K_{p,q}(rho) >= 1e-4)...");
  for (const auto& f : boxes) out.push_back("  " + f.log_line());
  out.push_back(passed() ? "All finite path-splicing certificates passed." : "Path-splicing certification FAILED.");
  return out;
}

AppendixAReport run_appendix_a(mpfr_prec_t prec, int max_depth) {
  if (prec < 64) throw ParameterError("run_appendix_a: precision must be >= 64 bits");
  std::vector<std::pair<int, int>> families;
  for (int p = 2; p <= 6; ++p) families.emplace_back(p, 0);
  for (int p = 2; p <= 6; ++p)
    for (int q = p; q <= 6; ++q) families.emplace_back(p, q);

  auto results = parallel_map<FamilyResult>(families.size(), [&](std::size_t i) {
    FamilyResult fr;
    fr.p = families[i].first;
    fr.q = families[i].second;
    const int p = fr.p, q = fr.q;
    try {
      if (q == 0) {
        fr.result = certify_bisect([&](const Rational& lo, const Rational& hi) { return d_strip(p, lo, hi, prec); },
                                   sub_intervals(strip_breakpoints(p), kSixth, kHalf), strip_threshold(p, prec),
                                   Rational(1, 10000), max_depth);
      } else {
        fr.result = certify_bisect([&](const Rational& lo, const Rational& hi) { return k_box(p, q, lo, hi, prec); },
                                   sub_intervals(box_breakpoints(p, q), kSixth, kHalf), Ball(prec),
                                   Rational(1, 10000), max_depth);
      }
    } catch (const CertificationFailure& e) {
      fr.failure = e.what();
    }
    return fr;
  });
  AppendixAReport rep;
  for (auto& r : results) (r.q == 0 ? rep.strips : rep.boxes).push_back(std::move(r));
  return rep;
}

}  // namespace spectra_cert
