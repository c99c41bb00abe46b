#pragma once
// omega*(n) = #{p prime : (p-1) | n}, its moments
//
//   S1(x) = sum_{n<=x} omega*(n),   S2(x) = sum_{n<=x} omega*(n)^2,
//
// and the exact combinatorial identities they satisfy:
//
//   S1(x) = sum_{d<=x, d+1 prime} floor(x/d)
//   S2(x) = sum_{p-1<=x, q-1<=x} floor(x / lcm(p-1, q-1))
//   T(x)  = x * sum_{m<=x} phi(m) * (sum_{p<=x, p=1 (m)} 1/(p-1))^2
//         = S2(x) + O(x)
//
// Boundary conventions follow the sources: the pair identities range over
// primes with p-1 <= x (so p <= x+1), while T(x) ranges over p <= x. The
// mismatch is part of the O(x) term and is deliberately not papered over.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "omegastar/arith.hpp"
#include "omegastar/common.hpp"
#include "omegastar/constants.hpp"
#include "omegastar/prime_engine.hpp"

namespace omegastar {

// omega*(lo+i) = counts[i] for a block of consecutive n; [lo, hi) with lo >= 1.
struct OmegaStarTable {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u32> counts;
};

struct MomentRow {
  u64 x = 0;
  u64 s1 = 0;          // sum omega*(n)
  u64 s2 = 0;          // sum omega*(n)^2
  double ratio_s2 = 0; // s2 / (x log x), 0 for x = 1
  double pred = 0;     // 2 zeta(2)zeta(3)/zeta(6)
};

inline u64 default_pair_cap() { return 100000; }
inline u64 default_mm_cap() { return 1000000; }

// omega*(n) by divisor enumeration: count divisors d of n with d+1 prime.
inline u32 omega_star_single(u64 n) {
  if (n < 1) throw std::invalid_argument("omega_star_single: requires n >= 1");
  u32 count = 0;
  for (u64 d : divisors(n)) {
    if (is_prime(d + 1)) ++count;
  }
  return count;
}

namespace detail {

// Shifted primes d = p-1 <= x, ascending.
inline std::vector<u64> shifted_primes_upto(u64 x) {
  std::vector<u64> ds;
  ds.reserve(prime_count_upper(x + 2));
  for_each_prime(2, x + 2, [&](u64 p) {
    if (p - 1 <= x) ds.push_back(p - 1);
  });
  return ds;
}

// counts[n - lo] += 1 for every multiple n of d in [lo, hi), for each shifted
// prime d. This is the whole bulk algorithm; total work is
// x * sum_{p<=x+1} 1/(p-1).
inline void fill_omega_segment(OmegaStarTable& seg, const std::vector<u64>& ds) {
  seg.counts.assign(seg.hi - seg.lo, 0);
  for (u64 d : ds) {
    if (d >= seg.hi) break;
    u64 m = ((seg.lo + d - 1) / d) * d;
    for (; m < seg.hi; m += d) ++seg.counts[m - seg.lo];
  }
}

}  // namespace detail

// Streams omega* tables covering [1, x], ascending, in segments of
// segment_size (0 = default). Segments are built by parallel workers but
// delivered in order; the content of each is scheduling-independent.
template <class Sink>
void omega_star_bulk(u64 x, u64 segment_size, Sink&& sink, unsigned threads = 0) {
  if (x < 1) throw std::invalid_argument("omega_star_bulk: requires x >= 1");
  if (segment_size == 0) segment_size = default_segment_size();
  unsigned workers = thread_count(threads);
  require_memory(4 * segment_size * workers + 8 * detail::prime_count_upper(x + 2),
                 "omega_star_bulk");
  std::vector<u64> ds = detail::shifted_primes_upto(x);
  u64 n_segments = (x + segment_size - 1) / segment_size;
  std::vector<OmegaStarTable> wave(std::min<u64>(workers, n_segments));
  for (u64 base = 0; base < n_segments; base += wave.size()) {
    u64 in_wave = std::min<u64>(wave.size(), n_segments - base);
    parallel_for(in_wave, workers, [&](u64 i) {
      u64 k = base + i;
      wave[i].lo = 1 + k * segment_size;
      wave[i].hi = std::min(x + 1, 1 + (k + 1) * segment_size);
      detail::fill_omega_segment(wave[i], ds);
    });
    for (u64 i = 0; i < in_wave; ++i) sink(wave[i]);
  }
}

// All of omega*(1..x) in one vector; index i holds omega*(i+1).
inline std::vector<u32> omega_star_all(u64 x, u64 segment_size = 0, unsigned threads = 0) {
  require_memory(4 * x, "omega_star_all");
  std::vector<u32> counts;
  counts.reserve(x);
  omega_star_bulk(
      x, segment_size,
      [&](const OmegaStarTable& seg) {
        counts.insert(counts.end(), seg.counts.begin(), seg.counts.end());
      },
      threads);
  return counts;
}

// Exact S1, S2 accumulated from the bulk table. Integer results are
// bit-identical for every segment size and worker count.
inline MomentRow moments(u64 x, u64 segment_size = 0, unsigned threads = 0) {
  if (x < 1) throw std::invalid_argument("moments: requires x >= 1");
  MomentRow row;
  row.x = x;
  omega_star_bulk(
      x, segment_size,
      [&](const OmegaStarTable& seg) {
        for (u32 c : seg.counts) {
          row.s1 += c;
          row.s2 += static_cast<u64>(c) * c;
        }
      },
      threads);
  row.ratio_s2 = (x >= 2) ? static_cast<double>(row.s2) /
                                (static_cast<double>(x) * std::log(static_cast<double>(x)))
                          : 0.0;
  row.pred = kappa_cached().two_kappa;
  return row;
}

// S1(x) through the divisor exchange: sum over shifted primes d <= x of
// floor(x/d).
inline u64 s1_floor_identity(u64 x) {
  if (x < 1) throw std::invalid_argument("s1_floor_identity: requires x >= 1");
  u64 total = 0;
  for_each_prime(2, x + 2, [&](u64 p) {
    u64 d = p - 1;
    if (d <= x) total += x / d;
  });
  return total;
}

// S2(x) as the exact ordered pair sum over shifted primes a = p-1, b = q-1
// (both <= x) of floor(x / lcm(a, b)); lcm values above x contribute 0.
// Cost is pi(x)^2 pairs, hence the work cap.
inline u64 pair_lcm_floor_sum(u64 x, u64 cap = default_pair_cap()) {
  if (x < 1) throw std::invalid_argument("pair_lcm_floor_sum: requires x >= 1");
  if (x > cap) throw cap_exceeded_error("pair_lcm_floor_sum: x exceeds the oracle cap");
  std::vector<u64> ds = detail::shifted_primes_upto(x);
  u64 total = 0;
  for (u64 a : ds) {
    for (u64 b : ds) {
      if (auto l = lcm_checked(a, b, x)) total += x / *l;
    }
  }
  return total;
}

// sum over ordered prime pairs p, q <= x of 1/lcm(p-1, q-1), ascending pair
// order with compensated accumulation.
inline double pair_reciprocal_lcm_sum(u64 x, u64 cap = default_pair_cap()) {
  if (x < 2) throw std::invalid_argument("pair_reciprocal_lcm_sum: requires x >= 2");
  if (x > cap) throw cap_exceeded_error("pair_reciprocal_lcm_sum: x exceeds the oracle cap");
  std::vector<u64> ds;
  for_each_prime(2, x + 1, [&](u64 p) { ds.push_back(p - 1); });
  KahanSum sum;
  for (u64 a : ds) {
    for (u64 b : ds) {
      u64 l = *lcm_checked(a, b, UINT64_MAX);
      sum.add(1.0 / static_cast<double>(l));
    }
  }
  return sum.value();
}

// T(x) = x * sum_{m<=x} phi(m) * (sum_{p<=x, p=1 (m)} 1/(p-1))^2, built by
// walking primes p <= x and crediting 1/(p-1) to every divisor m of p-1,
// then combining ascending in m.
inline double mm_identity_rhs(u64 x, u64 cap = default_mm_cap()) {
  if (x < 1) throw std::invalid_argument("mm_identity_rhs: requires x >= 1");
  if (x > cap) throw cap_exceeded_error("mm_identity_rhs: x exceeds the work cap");
  require_memory(8 * (x + 1) + 6 * (x + 1), "mm_identity_rhs");
  std::vector<double> sums(x + 1, 0.0);
  for_each_prime(2, x + 1, [&](u64 p) {
    u64 q = p - 1;
    double w = 1.0 / static_cast<double>(q);
    for (u64 d = 1; d * d <= q; ++d) {
      if (q % d != 0) continue;
      sums[d] += w;
      u64 e = q / d;
      if (e != d) sums[e] += w;
    }
  });
  TotientTable phi = totient_sieve(x);
  KahanSum total;
  for (u64 m = 1; m <= x; ++m) {
    total.add(static_cast<double>(phi(m)) * sums[m] * sums[m]);
  }
  return static_cast<double>(x) * total.value();
}

// Smallest n <= x attaining max omega*(m) over m <= x.
inline std::pair<u64, u32> champion(u64 x) {
  if (x < 1) throw std::invalid_argument("champion: requires x >= 1");
  u64 best_n = 1;
  u32 best_v = 0;
  omega_star_bulk(x, 0, [&](const OmegaStarTable& seg) {
    for (u64 i = 0; i < seg.counts.size(); ++i) {
      if (seg.counts[i] > best_v) {
        best_v = seg.counts[i];
        best_n = seg.lo + i;
      }
    }
  });
  return {best_n, best_v};
}

}  // namespace omegastar
