#pragma once
// The limit constant kappa = zeta(2)zeta(3)/zeta(6) and the elementary sums
// it is compared against:
//
//   sum_{m<=y} 1/phi(m)  = kappa log y + O(1)
//   sum_{m<=y} m/phi(m)  = kappa y + O(log y)
//   sum_{p<=x} 1/p       = log log x + M + o(1)
//   sum_{1<h1<...<hg<z} (h1...hg)^-1 prod_{p|E} (1+1/p)^l  = O((log z)^g),
//     E = h1...hg * prod_{i<j} (hj - hi)
//
// All sums run ascending with compensated accumulation so repeated runs are
// bit-identical.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "omegastar/arith.hpp"
#include "omegastar/common.hpp"
#include "omegastar/prime_engine.hpp"

namespace omegastar {

struct ConstantsBundle {
  double zeta2 = 0;
  double zeta3 = 0;
  double zeta6 = 0;
  double kappa = 0;
  double two_kappa = 0;
};

// zeta(s) for integer s >= 2 by direct series with Euler-Maclaurin tail
// corrections through B6; absolute error well under 1e-13 for every s >= 2.
inline double zeta_int(int s) {
  if (s < 2) throw std::domain_error("zeta_int: requires s >= 2");
  const int n_terms = 1000;
  KahanSum sum;
  for (int n = 1; n <= n_terms; ++n) {
    sum.add(std::pow(static_cast<double>(n), -s));
  }
  double sd = static_cast<double>(s);
  double N = static_cast<double>(n_terms);
  double tail = std::pow(N, 1.0 - sd) / (sd - 1.0);   // integral part
  tail -= 0.5 * std::pow(N, -sd);
  tail += sd / 12.0 * std::pow(N, -sd - 1.0);
  tail -= sd * (sd + 1.0) * (sd + 2.0) / 720.0 * std::pow(N, -sd - 3.0);
  tail += sd * (sd + 1.0) * (sd + 2.0) * (sd + 3.0) * (sd + 4.0) / 30240.0 *
          std::pow(N, -sd - 5.0);
  return sum.value() + tail;
}

inline ConstantsBundle kappa() {
  ConstantsBundle c;
  c.zeta2 = zeta_int(2);
  c.zeta3 = zeta_int(3);
  c.zeta6 = zeta_int(6);
  c.kappa = c.zeta2 * c.zeta3 / c.zeta6;
  c.two_kappa = 2.0 * c.kappa;
  return c;
}

inline const ConstantsBundle& kappa_cached() {
  static const ConstantsBundle c = kappa();
  return c;
}

// sum_{m<=y} 1/phi(m); the table overload reuses an existing totient table
// (which must cover y).
inline double landau_sum_reciprocal_phi(const TotientTable& phi, u64 y) {
  if (y < 1) throw std::invalid_argument("landau_sum_reciprocal_phi: requires y >= 1");
  KahanSum sum;
  for (u64 m = 1; m <= y; ++m) sum.add(1.0 / phi(m));
  return sum.value();
}

inline double landau_sum_reciprocal_phi(u64 y) {
  return landau_sum_reciprocal_phi(totient_sieve(y), y);
}

// sum_{m<=y} m/phi(m).
inline double landau_sum_m_over_phi(const TotientTable& phi, u64 y) {
  if (y < 1) throw std::invalid_argument("landau_sum_m_over_phi: requires y >= 1");
  KahanSum sum;
  for (u64 m = 1; m <= y; ++m) sum.add(static_cast<double>(m) / phi(m));
  return sum.value();
}

inline double landau_sum_m_over_phi(u64 y) {
  return landau_sum_m_over_phi(totient_sieve(y), y);
}

// sum_{p<=x} 1/p, ascending.
inline double mertens_sum(u64 x) {
  if (x < 2) throw std::invalid_argument("mertens_sum: requires x >= 2");
  KahanSum sum;
  u64 hi = (x == UINT64_MAX) ? x : x + 1;
  for_each_prime(2, hi, [&](u64 p) { sum.add(1.0 / static_cast<double>(p)); });
  return sum.value();
}

namespace detail {

// Distinct prime factors of each n <= z as bitmasks over the index of primes
// <= z, so per-tuple unions are a few word ORs.
struct FactorMasks {
  std::vector<u64> primes;          // ascending primes <= z
  std::vector<double> weight;      // (1 + 1/p)^ell per prime index
  u64 words = 0;
  std::vector<u64> masks;           // n * words .. n * words + words - 1

  FactorMasks(u64 z, int ell) {
    for_each_prime(2, z + 1, [&](u64 p) { primes.push_back(p); });
    weight.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
      double w = 1.0 + 1.0 / static_cast<double>(primes[i]);
      weight[i] = (ell == 2) ? w * w : w;
    }
    words = (primes.size() + 63) / 64;
    masks.assign((z + 1) * words, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      u64 p = primes[i];
      for (u64 n = p; n <= z; n += p) {
        masks[n * words + i / 64] |= u64{1} << (i % 64);
      }
    }
  }

  const u64* mask(u64 n) const { return masks.data() + n * words; }

  double product_over_union(const u64* acc) const {
    double w = 1.0;
    for (u64 k = 0; k < words; ++k) {
      u64 bitsw = acc[k];
      while (bitsw) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(bitsw));
        w *= weight[64 * k + b];
        bitsw &= bitsw - 1;
      }
    }
    return w;
  }
};

}  // namespace detail

// Brute-force evaluation of the shifted-tuple sum over 1 < h1 < ... < hg < z
// with the radical of E = h1...hg * prod (hj - hi) taken factor by factor.
inline double ding_zhao_sum(int g, int ell, u64 z) {
  if (g != 2 && g != 3) throw std::invalid_argument("ding_zhao_sum: g must be 2 or 3");
  if (ell != 1 && ell != 2) throw std::invalid_argument("ding_zhao_sum: ell must be 1 or 2");
  u64 z_cap = (g == 2) ? 3000 : 200;
  if (z > z_cap) {
    throw cap_exceeded_error("ding_zhao_sum: z exceeds brute-force cap " +
                             std::to_string(z_cap));
  }
  if (z < 4) return 0.0;
  detail::FactorMasks fm(z, ell);
  const u64 W = fm.words;
  std::vector<u64> acc(W), acc2(W);
  KahanSum sum;
  if (g == 2) {
    for (u64 h1 = 2; h1 < z; ++h1) {
      const u64* m1 = fm.mask(h1);
      for (u64 h2 = h1 + 1; h2 < z; ++h2) {
        const u64* m2 = fm.mask(h2);
        const u64* md = fm.mask(h2 - h1);
        for (u64 k = 0; k < W; ++k) acc[k] = m1[k] | m2[k] | md[k];
        sum.add(fm.product_over_union(acc.data()) /
                static_cast<double>(h1 * h2));
      }
    }
  } else {
    for (u64 h1 = 2; h1 < z; ++h1) {
      const u64* m1 = fm.mask(h1);
      for (u64 h2 = h1 + 1; h2 < z; ++h2) {
        const u64* m2 = fm.mask(h2);
        const u64* d21 = fm.mask(h2 - h1);
        for (u64 k = 0; k < W; ++k) acc2[k] = m1[k] | m2[k] | d21[k];
        for (u64 h3 = h2 + 1; h3 < z; ++h3) {
          const u64* m3 = fm.mask(h3);
          const u64* d31 = fm.mask(h3 - h1);
          const u64* d32 = fm.mask(h3 - h2);
          for (u64 k = 0; k < W; ++k) acc[k] = acc2[k] | m3[k] | d31[k] | d32[k];
          sum.add(fm.product_over_union(acc.data()) /
                  static_cast<double>(h1 * h2 * h3));
        }
      }
    }
  }
  return sum.value();
}

}  // namespace omegastar
