#include "omegastar/arith.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace omegastar;

TEST(TotientSieve, KnownValues) {
  auto t = totient_sieve(100);
  EXPECT_EQ(t(1), 1u);
  EXPECT_EQ(t(97), 96u);
  EXPECT_EQ(t(12), 4u);
  EXPECT_EQ(t(2), 1u);
  EXPECT_EQ(t(100), 40u);
}

TEST(TotientSieve, MatchesPointTotient) {
  auto t = totient_sieve(5000);
  for (u64 n = 1; n <= 5000; ++n) {
    ASSERT_EQ(t(n), totient_point(n)) << "n=" << n;
  }
}

TEST(TotientSieve, MultiplicativeOnCoprimePairs) {
  auto t = totient_sieve(100000);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 2000; ++it) {
    u64 a = 1 + rng() % 300;
    u64 b = 1 + rng() % 300;
    if (std::gcd(a, b) != 1) continue;
    EXPECT_EQ(t(a * b), u64{t(a)} * t(b));
  }
}

TEST(TotientSieve, GaussIdentity) {
  // sum of phi over the divisors of n recovers n
  auto t = totient_sieve(100000);
  for (u64 n = 1; n <= 100000; ++n) {
    u64 total = 0;
    for (u64 d : divisors(n)) total += t(d);
    ASSERT_EQ(total, n) << "n=" << n;
  }
}

TEST(TotientSieve, Errors) {
  EXPECT_THROW(totient_sieve(0), std::invalid_argument);
  EXPECT_THROW(totient_sieve(u64{1} << 40), resource_limit_error);
}

TEST(Divisors, KnownValues) {
  EXPECT_EQ(divisors(1), (std::vector<u64>{1}));
  EXPECT_EQ(divisors(12), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(97), (std::vector<u64>{1, 97}));
  EXPECT_THROW(divisors(0), std::invalid_argument);
}

TEST(Divisors, PairingAndOrder) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    u64 n = 1 + rng() % 1000000;
    auto ds = divisors(n);
    EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
    for (std::size_t i = 0; i < ds.size(); ++i) {
      EXPECT_EQ(n % ds[i], 0u);
      EXPECT_EQ(ds[i] * ds[ds.size() - 1 - i], n);  // d and n/d pair up
    }
  }
}

TEST(LcmChecked, KnownValues) {
  EXPECT_EQ(lcm_checked(1, 42, 100), std::optional<u64>{42});
  EXPECT_EQ(lcm_checked(4, 6, 100), std::optional<u64>{12});
  EXPECT_EQ(lcm_checked(4, 6, 11), std::nullopt);
  u64 a = u64{1} << 40;
  EXPECT_EQ(lcm_checked(a, 3 * a, UINT64_MAX), std::optional<u64>{3 * a});
  EXPECT_THROW(lcm_checked(0, 3, 10), std::invalid_argument);
}

TEST(LcmChecked, NoInternalOverflow) {
  // naive product 15 * 2^76 overflows u64; lcm = 15 * 2^38 must come out
  u64 a = 5 * (u64{1} << 38);
  u64 b = 3 * (u64{1} << 38);
  ASSERT_EQ(std::gcd(a, b), u64{1} << 38);
  EXPECT_EQ(*lcm_checked(a, b, UINT64_MAX), 15 * (u64{1} << 38));
  EXPECT_EQ(lcm_checked(a, b, 1000), std::nullopt);
  // coprime pair near 2^40: lcm ~ 2^80 exceeds any u64 cap, intermediate is wide
  u64 c = (u64{1} << 40) + 7;
  u64 d = (u64{1} << 40) + 21;
  EXPECT_EQ(lcm_checked(c, d, UINT64_MAX), std::nullopt);
}

TEST(LcmChecked, GcdProductIdentityExhaustive) {
  // lcm(a,b) * gcd(a,b) == a*b for all a <= b <= 10^4
  for (u64 a = 1; a <= 10000; ++a) {
    for (u64 b = a; b <= 10000; ++b) {
      u64 l = *lcm_checked(a, b, UINT64_MAX);
      ASSERT_EQ(u128{l} * std::gcd(a, b), u128{a} * b) << a << "," << b;
    }
  }
}
