#pragma once
// Segmented sieve of Eratosthenes plus point primality.
//
// The sieve works on odd numbers only, one cache-sized segment at a time;
// the per-integer SieveSegment handed to callers hides that representation.
// Point primality is a strong-probable-prime test with a witness set that is
// deterministic for every 64-bit input, so queries above any sieved limit
// stay exact.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "omegastar/common.hpp"

namespace omegastar {

// Primality bitmap over [lo, hi): bit i set iff lo+i is prime.
struct SieveSegment {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> bits;  // ceil((hi-lo)/64) words

  bool test(u64 n) const {
    if (n < lo || n >= hi) return false;
    u64 i = n - lo;
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }
  void set(u64 n) {
    u64 i = n - lo;
    bits[i >> 6] |= u64{1} << (i & 63);
  }
  u64 popcount() const {
    u64 c = 0;
    for (u64 w : bits) c += static_cast<u64>(__builtin_popcountll(w));
    return c;
  }
};

// All primes <= limit, ascending.
struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;
};

inline u64 default_segment_size() { return u64{1} << 22; }

namespace detail {

// Primes <= n by a plain odd-only sieve; used for base primes up to sqrt of
// the segmented range.
inline std::vector<u64> small_primes(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  if (n < 3) return primes;
  u64 half = (n - 1) / 2;  // odd numbers 3, 5, ..., index i <-> 2i+3
  std::vector<bool> composite(half, false);
  for (u64 i = 0;; ++i) {
    u64 p = 2 * i + 3;
    if (p * p > n) break;
    if (composite[i]) continue;
    for (u64 j = (p * p - 3) / 2; j < half; j += p) composite[j] = true;
  }
  for (u64 i = 0; i < half; ++i) {
    if (!composite[i]) primes.push_back(2 * i + 3);
  }
  return primes;
}

// Sieves [lo, hi) and calls fn(p) for each prime, ascending. `base` must
// contain every odd prime <= sqrt(hi-1). `odd` is scratch indexed by odd
// numbers of the window.
template <class Fn>
void sieve_window(u64 lo, u64 hi, const std::vector<u64>& base, std::vector<bool>& odd,
                  Fn&& fn) {
  if (lo < 2) lo = 2;
  if (lo >= hi) return;
  if (lo <= 2 && hi > 2) fn(u64{2});
  u64 first = lo | 1;  // first odd >= lo
  if (first < 3) first = 3;
  if (first >= hi) return;
  u64 count = (hi - first + 1) / 2;  // odds first, first+2, ...
  odd.assign(count, true);
  for (u64 p : base) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    u64 start = p * p;
    if (start < first) {
      u64 k = (first + p - 1) / p;
      if ((k & 1) == 0) ++k;  // odd multiples only
      start = k * p;
    }
    for (u64 m = start; m < hi; m += 2 * p) {
      odd[(m - first) >> 1] = false;
      if (hi - m <= 2 * p) break;  // avoid wrap near 2^64
    }
  }
  for (u64 i = 0; i < count; ++i) {
    if (odd[i]) fn(first + 2 * i);
  }
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Upper bound on pi(x), for memory estimates only.
inline u64 prime_count_upper(u64 x) {
  if (x < 17) return 6;
  double lx = std::log(static_cast<double>(x));
  return static_cast<u64>(1.26 * static_cast<double>(x) / lx) + 1;
}

}  // namespace detail

// Calls fn(p) for every prime p in [lo, hi), ascending.
template <class Fn>
void for_each_prime(u64 lo, u64 hi, Fn&& fn) {
  if (hi <= 2 || lo >= hi) return;
  u64 root = detail::isqrt(hi - 1);
  require_memory(root + default_segment_size() / 8, "prime sieve base");
  std::vector<u64> base = detail::small_primes(root);
  std::vector<bool> odd;
  u64 seg = default_segment_size();
  for (u64 a = std::max<u64>(lo, 2); a < hi; ) {
    u64 b = (hi - a > seg) ? a + seg : hi;
    detail::sieve_window(a, b, base, odd, fn);
    if (b == hi) break;
    a = b;
  }
}

// True iff n is prime; exact for every 64-bit n. Strong-probable-prime test
// with the witness set {2,...,37}, sufficient for n < 3.3e24.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// All primes <= limit.
inline PrimeTable sieve_primes(u64 limit) {
  require_memory(8 * detail::prime_count_upper(limit) + default_segment_size() / 8,
                 "sieve_primes");
  PrimeTable table;
  table.limit = limit;
  if (limit < 2) return table;
  u64 hi = (limit == UINT64_MAX) ? limit : limit + 1;
  table.primes.reserve(detail::prime_count_upper(limit));
  for_each_prime(2, hi, [&](u64 p) { table.primes.push_back(p); });
  return table;
}

// Primality bitmap for [lo, hi), one bit per integer.
inline SieveSegment prime_bitmap(u64 lo, u64 hi) {
  if (lo >= hi) throw std::invalid_argument("prime_bitmap: requires lo < hi");
  u64 len = hi - lo;
  require_memory(len / 8 + 16 + default_segment_size() / 8, "prime_bitmap");
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.bits.assign((len + 63) / 64, 0);
  for_each_prime(lo, hi, [&](u64 p) { seg.set(p); });
  return seg;
}

// pi(x) = #{p <= x}.
inline u64 prime_count(u64 x) {
  if (x < 2) return 0;
  u64 n = 0;
  u64 hi = (x == UINT64_MAX) ? x : x + 1;
  for_each_prime(2, hi, [&](u64) { ++n; });
  return n;
}

}  // namespace omegastar
