#pragma once
// Elementary arithmetic functions: bulk Euler totient, divisor enumeration,
// overflow-safe lcm.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "omegastar/common.hpp"

namespace omegastar {

// phi[n] = Euler totient of n for 1 <= n <= limit (phi[0] unused).
struct TotientTable {
  u64 limit = 0;
  std::vector<u32> phi;

  u32 operator()(u64 n) const { return phi[n]; }
};

// Linear sieve with smallest-prime-factor propagation: each composite is
// visited exactly once, through its smallest prime factor.
inline TotientTable totient_sieve(u64 limit) {
  if (limit < 1) throw std::invalid_argument("totient_sieve: requires limit >= 1");
  // phi array + composite flags + primes list
  require_memory(4 * (limit + 1) + (limit + 1) / 8 + limit, "totient_sieve");
  TotientTable table;
  table.limit = limit;
  table.phi.assign(limit + 1, 0);
  table.phi[1] = 1;
  std::vector<bool> composite(limit + 1, false);
  std::vector<u32> primes;
  for (u64 n = 2; n <= limit; ++n) {
    if (!composite[n]) {
      primes.push_back(static_cast<u32>(n));
      table.phi[n] = static_cast<u32>(n - 1);
    }
    for (u32 p : primes) {
      u64 m = n * p;
      if (m > limit) break;
      composite[m] = true;
      if (n % p == 0) {
        table.phi[m] = table.phi[n] * p;  // p already divides n
        break;
      }
      table.phi[m] = table.phi[n] * (p - 1);
    }
  }
  return table;
}

// phi(n) by trial-division factoring; for point queries only.
inline u64 totient_point(u64 n) {
  if (n == 0) return 0;
  u64 result = n;
  u64 m = n;
  for (u64 p = 2; p * p <= m; p += (p == 2) ? 1 : 2) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// All divisors of n, ascending.
inline std::vector<u64> divisors(u64 n) {
  if (n < 1) throw std::invalid_argument("divisors: requires n >= 1");
  std::vector<u64> small, large;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// lcm(a, b) if it does not exceed cap, otherwise nullopt. The intermediate
// product is widened so the computation itself cannot overflow.
inline std::optional<u64> lcm_checked(u64 a, u64 b, u64 cap) {
  if (a < 1 || b < 1) throw std::invalid_argument("lcm_checked: requires a, b >= 1");
  u64 g = std::gcd(a, b);
  u128 l = u128{a / g} * b;
  if (l > cap) return std::nullopt;
  return static_cast<u64>(l);
}

}  // namespace omegastar
