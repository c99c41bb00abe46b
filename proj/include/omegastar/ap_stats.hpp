#pragma once
// Primes in arithmetic progressions and the quantities the conditional
// argument runs on:
//
//   pi(y; d, 1)  — primes p <= y with p = 1 (mod d)
//   li(y)        — int_2^y dt/log t
//   ap_scan      — max_{y<=x} |pi(y;d,1) - li(y)/phi(d)| per modulus
//   eh           — sum of those maxima over d <= x^(1-eps)
//   bt_audit     — Brun-Titchmarsh check pi(x;k,1) <= 2x/(phi(k) log(x/k))
//   integral_I   — int_2^x pi(t;m,1)/(t-1)^2 dt via the exact closed form
//                  sum_{p<=x, p=1 (m)} 1/(p-1) - pi(x;m,1)/(x-1)
//   prop_sums    — the three phi-weighted sums over split integrals
//
// pi(.;d,1) is a step function, so every max/integral here is exact up to
// quadrature of the smooth li integrand.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "omegastar/arith.hpp"
#include "omegastar/common.hpp"
#include "omegastar/prime_engine.hpp"

namespace omegastar {

// Per-modulus scan result over y in [2, x].
struct APDiscrepancyRecord {
  u64 d = 0;
  u64 phi_d = 0;
  u64 count_at_x = 0;              // pi(x; d, 1)
  double max_abs_discrepancy = 0;  // max_y |pi(y;d,1) - li(y)/phi(d)|
  u64 argmax_y = 0;                // jump point (or x) attaining the max
};

// The Elliott-Halberstam functional at one (x, eps), with the A = 2
// normalization total * (log x)^2 / x.
struct DiscrepancySummary {
  u64 x = 0;
  double eps = 0;
  u64 d_max = 0;
  double total = 0;
  double normalized = 0;
};

struct PropSums {
  double a1 = 0;
  double a2 = 0;
  double a3 = 0;
};

inline u64 default_prop_cap() { return 1000000; }

namespace detail {

inline double inv_log(double t) { return 1.0 / std::log(t); }

// Adaptive Simpson on [a, b]; endpoint and midpoint evaluations are passed
// down the recursion so each function value is computed once.
inline double simpson_rec(double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = inv_log(lm), frm = inv_log(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// int_a^b dt/log t for 2 <= a <= b.
inline double li_piece(double a, double b, double tol) {
  if (b <= a) return 0.0;
  double fa = inv_log(a), fb = inv_log(b), fm = inv_log(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(a, b, fa, fm, fb, whole, tol, 48);
}

// Interval cache for li over [2, hi]: checkpoint values every `stride`, built
// once; a point lookup quadratures only the sub-stride remainder. Shared
// read-only across scan workers, so per-candidate cost is bounded no matter
// how sparse a progression is.
class LiTable {
 public:
  explicit LiTable(u64 hi, double stride = 256.0, double tol = 1e-12)
      : stride_(stride), tol_(tol) {
    double top = static_cast<double>(hi);
    u64 n = (top <= 2.0) ? 0 : static_cast<u64>((top - 2.0) / stride_) + 1;
    values_.resize(n + 1);
    values_[0] = 0.0;
    KahanSum acc;
    for (u64 j = 1; j <= n; ++j) {
      acc.add(li_piece(2.0 + static_cast<double>(j - 1) * stride_,
                       2.0 + static_cast<double>(j) * stride_, tol_));
      values_[j] = acc.value();
    }
  }

  double at(double t) const {
    if (t <= 2.0) return 0.0;
    u64 j = static_cast<u64>((t - 2.0) / stride_);
    if (j >= values_.size()) j = values_.size() - 1;
    return values_[j] + li_piece(2.0 + static_cast<double>(j) * stride_, t, tol_);
  }

 private:
  double stride_;
  double tol_;
  std::vector<double> values_;
};

// Walks the progression 1 (mod d) through a primality bitmap covering
// [0, x+1) and calls fn(p) for each AP prime <= x, ascending. d = 1 walks
// every prime.
template <class Fn>
void for_each_ap_prime(const SieveSegment& ps, u64 x, u64 d, Fn&& fn) {
  if (d == 1) {
    if (x >= 2 && ps.test(2)) fn(u64{2});
    for (u64 n = 3; n <= x; n += 2) {
      if (ps.test(n)) fn(n);
    }
    return;
  }
  for (u64 n = d + 1; n <= x; n += d) {
    if (ps.test(n)) fn(n);
  }
}

inline u64 pi_ap_in(const SieveSegment& ps, u64 y, u64 d) {
  u64 count = 0;
  for_each_ap_prime(ps, y, d, [&](u64) { ++count; });
  return count;
}

// The scan: between consecutive AP primes the count is constant and li is
// increasing, so the running max only needs both sides of every jump plus
// the right endpoint. li comes from the shared checkpoint table.
inline APDiscrepancyRecord ap_scan_in(const SieveSegment& ps, u64 x, u64 d, u64 phi_d,
                                      const LiTable& li_table) {
  APDiscrepancyRecord rec;
  rec.d = d;
  rec.phi_d = phi_d;
  double inv_phi = 1.0 / static_cast<double>(phi_d);
  u64 count = 0;
  double best = 0.0;
  u64 best_y = 2;
  auto consider = [&](double value, u64 y) {
    if (value > best) {
      best = value;
      best_y = y;
    }
  };
  for_each_ap_prime(ps, x, d, [&](u64 p) {
    double li_p = li_table.at(static_cast<double>(p));
    consider(std::abs(static_cast<double>(count) - li_p * inv_phi), p);  // y -> p-
    ++count;
    consider(std::abs(static_cast<double>(count) - li_p * inv_phi), p);  // y = p
  });
  consider(std::abs(static_cast<double>(count) -
                    li_table.at(static_cast<double>(x)) * inv_phi),
           x);
  rec.count_at_x = count;
  rec.max_abs_discrepancy = best;
  rec.argmax_y = best_y;
  return rec;
}

}  // namespace detail

// int_2^y dt/log t; li(2) = 0 exactly, absolute error <= 1e-9.
inline double li(double y) {
  if (y < 2.0) throw std::domain_error("li: requires y >= 2");
  return detail::li_piece(2.0, y, 1e-9);
}

// pi(y; d, 1).
inline u64 pi_ap(u64 y, u64 d) {
  if (d < 1) throw std::invalid_argument("pi_ap: requires d >= 1");
  if (y < 2) return 0;
  if (d == 1) return prime_count(y);
  SieveSegment ps = prime_bitmap(0, y + 1);
  return detail::pi_ap_in(ps, y, d);
}

// Exact max over real y in [2, x] of |pi(y;d,1) - li(y)/phi(d)|.
inline APDiscrepancyRecord ap_scan(u64 x, u64 d) {
  if (d < 1) throw std::invalid_argument("ap_scan: requires d >= 1");
  if (x < 2) throw std::invalid_argument("ap_scan: requires x >= 2");
  SieveSegment ps = prime_bitmap(0, x + 1);
  detail::LiTable li_table(x);
  return detail::ap_scan_in(ps, x, d, totient_point(d), li_table);
}

// sum_{d <= floor(x^(1-eps))} of the per-modulus maxima; moduli scan in
// parallel, the reduction is ascending in d.
inline DiscrepancySummary eh_discrepancy(u64 x, double eps, unsigned threads = 0) {
  if (x < 2) throw std::invalid_argument("eh_discrepancy: requires x >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eh_discrepancy: requires 0 < eps < 1");
  }
  DiscrepancySummary summary;
  summary.x = x;
  summary.eps = eps;
  double logx = std::log(static_cast<double>(x));
  // tiny upward nudge so an exact power is not floored away
  summary.d_max = static_cast<u64>(std::exp((1.0 - eps) * logx) + 1e-9);
  if (summary.d_max < 1) summary.d_max = 1;
  SieveSegment ps = prime_bitmap(0, x + 1);
  TotientTable phi = totient_sieve(summary.d_max);
  detail::LiTable li_table(x);
  std::vector<double> maxima(summary.d_max);
  parallel_for(summary.d_max, threads, [&](u64 i) {
    maxima[i] =
        detail::ap_scan_in(ps, x, i + 1, phi(i + 1), li_table).max_abs_discrepancy;
  });
  KahanSum total;
  for (double v : maxima) total.add(v);
  summary.total = total.value();
  summary.normalized = summary.total * logx * logx / static_cast<double>(x);
  return summary;
}

// Brun-Titchmarsh audit with a = 1: returns every k <= min(k_max, x-1) with
// pi(x;k,1) > 2x / (phi(k) log(x/k)). The inequality is a theorem, so the
// list is expected empty.
inline std::vector<u64> bt_audit(u64 x, u64 k_max, unsigned threads = 0) {
  if (x < 2) throw std::invalid_argument("bt_audit: requires x >= 2");
  u64 limit = std::min(k_max, x - 1);
  std::vector<u64> violations;
  if (limit < 1) return violations;
  SieveSegment ps = prime_bitmap(0, x + 1);
  TotientTable phi = totient_sieve(limit);
  std::vector<char> bad(limit, 0);
  parallel_for(limit, threads, [&](u64 i) {
    u64 k = i + 1;
    u64 count = detail::pi_ap_in(ps, x, k);
    double bound = 2.0 * static_cast<double>(x) /
                   (static_cast<double>(phi(k)) *
                    std::log(static_cast<double>(x) / static_cast<double>(k)));
    bad[i] = (static_cast<double>(count) > bound) ? 1 : 0;
  });
  for (u64 i = 0; i < limit; ++i) {
    if (bad[i]) violations.push_back(i + 1);
  }
  return violations;
}

// int_2^x pi(t;m,1)/(t-1)^2 dt, exactly, through the closed form
// sum_{p<=x, p=1 (m)} 1/(p-1) - pi(x;m,1)/(x-1).
inline double integral_I(u64 m, u64 x) {
  if (m < 1) throw std::invalid_argument("integral_I: requires m >= 1");
  if (x < 2) throw std::invalid_argument("integral_I: requires x >= 2");
  SieveSegment ps = prime_bitmap(0, x + 1);
  KahanSum sum;
  u64 count = 0;
  detail::for_each_ap_prime(ps, x, m, [&](u64 p) {
    sum.add(1.0 / static_cast<double>(p - 1));
    ++count;
  });
  return sum.value() - static_cast<double>(count) / (static_cast<double>(x) - 1.0);
}

// I(m,x) * phi(m) / log(log x - log m): the Brun-Titchmarsh route bounds the
// integral by log(log x - log m)/phi(m), so this ratio is expected to stay
// O(1). Report-only.
inline double lemma23_ratio(u64 m, u64 x) {
  if (m < 1) throw std::invalid_argument("lemma23_ratio: requires m >= 1");
  if (x <= 6 * m || x < 8) {
    throw std::domain_error("lemma23_ratio: requires x > 6m and x >= 8");
  }
  double I = integral_I(m, x);
  double denom = std::log(std::log(static_cast<double>(x)) -
                          std::log(static_cast<double>(m)));
  return I * static_cast<double>(totient_point(m)) / denom;
}

// The three phi-weighted split-integral sums at one (x, eps):
//   A1 = sum_{x^(1-eps) < m <= x} phi(m) I(m; 2, x)^2
//   A2 = sum_{m <= x^(1-eps)}     phi(m) I(m; 2, m^(1+eps))^2
//   A3 = sum_{m <= x^(1-eps)}     phi(m) I(m; 2, m^(1+eps)) I(m; m^(1+eps), x)
// where I(m; a, b) = int_a^b pi(t;m,1)/(t-1)^2 dt, evaluated by the closed
// form with real upper bounds. One progression walk per modulus.
inline PropSums prop_sums(u64 x, double eps, u64 cap = default_prop_cap()) {
  if (x < 2) throw std::invalid_argument("prop_sums: requires x >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("prop_sums: requires 0 < eps < 1");
  }
  if (x > cap) throw cap_exceeded_error("prop_sums: x exceeds the work cap");
  u64 M = static_cast<u64>(std::exp((1.0 - eps) * std::log(static_cast<double>(x))) + 1e-9);
  if (M > x) M = x;
  SieveSegment ps = prime_bitmap(0, x + 1);
  TotientTable phi = totient_sieve(x);
  KahanSum a1, a2, a3;
  for (u64 m = 1; m <= x; ++m) {
    double T = (m <= M) ? std::pow(static_cast<double>(m), 1.0 + eps) : -1.0;
    KahanSum recip;
    u64 count = 0;
    double sum_at_T = 0.0;
    u64 count_at_T = 0;
    bool captured = false;
    detail::for_each_ap_prime(ps, x, m, [&](u64 p) {
      if (m <= M && !captured && static_cast<double>(p) > T) {
        sum_at_T = recip.value();
        count_at_T = count;
        captured = true;
      }
      recip.add(1.0 / static_cast<double>(p - 1));
      ++count;
    });
    double I_full = recip.value() - static_cast<double>(count) /
                                        (static_cast<double>(x) - 1.0);
    if (m > M) {
      a1.add(static_cast<double>(phi(m)) * I_full * I_full);
      continue;
    }
    if (!captured) {  // every AP prime <= T
      sum_at_T = recip.value();
      count_at_T = count;
    }
    double I_low = 0.0;
    if (T > 2.0) {
      I_low = sum_at_T - static_cast<double>(count_at_T) / (T - 1.0);
    }
    double I_high = I_full - I_low;
    a2.add(static_cast<double>(phi(m)) * I_low * I_low);
    a3.add(static_cast<double>(phi(m)) * I_low * I_high);
  }
  PropSums out;
  out.a1 = a1.value();
  out.a2 = a2.value();
  out.a3 = a3.value();
  return out;
}

}  // namespace omegastar
