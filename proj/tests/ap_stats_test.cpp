#include "omegastar/ap_stats.hpp"

#include <gtest/gtest.h>

#include <random>

#include "omegastar/arith.hpp"
#include "oracles.hpp"

using namespace omegastar;

TEST(Li, EndpointAndFrozenValues) {
  EXPECT_THROW(li(1.999), std::domain_error);
  EXPECT_DOUBLE_EQ(li(2.0), 0.0);
  EXPECT_NEAR(li(10.0), oracle::kLi10, 1e-9);
  EXPECT_NEAR(li(100.0), oracle::kLi100, 1e-9);
}

TEST(Li, IntervalAdditivity) {
  EXPECT_NEAR(li(100.0), li(10.0) + detail::li_piece(10.0, 100.0, 1e-12), 1e-9);
  EXPECT_NEAR(li(5000.0), li(70.0) + detail::li_piece(70.0, 5000.0, 1e-12), 1e-9);
}

TEST(Li, StrictlyIncreasingAndMatchesGaussLegendre) {
  double prev = 0.0;
  for (double y : {3.0, 5.0, 17.0, 100.0, 999.5, 5000.0, 100000.0}) {
    double v = li(y);
    EXPECT_GT(v, prev);
    EXPECT_NEAR(v, oracle::gl_li(2.0, y), 1e-8) << "y=" << y;
    prev = v;
  }
}

TEST(LiTable, MatchesDirectQuadrature) {
  detail::LiTable table(100000);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    double t = 2.0 + (100000.0 - 2.0) * (static_cast<double>(rng() % 1000000) / 1e6);
    EXPECT_NEAR(table.at(t), li(t), 2e-9) << "t=" << t;
  }
  EXPECT_DOUBLE_EQ(table.at(2.0), 0.0);
}

TEST(PiAp, KnownValues) {
  EXPECT_EQ(pi_ap(10, 1), 4u);
  EXPECT_EQ(pi_ap(10, 4), 1u);    // only p = 5
  EXPECT_EQ(pi_ap(100, 3), 11u);  // 7, 13, ..., 97
  EXPECT_EQ(pi_ap(10000, 7), 203u);
  EXPECT_EQ(pi_ap(1, 5), 0u);
  EXPECT_THROW(pi_ap(10, 0), std::invalid_argument);
}

TEST(PiAp, MonotoneInY) {
  u64 prev = 0;
  for (u64 y = 2; y <= 500; ++y) {
    u64 c = pi_ap(y, 6);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(PiAp, DivisorExchangeIdentity) {
  // sum_{d<=x} pi(x;d,1) counts pairs (d, p) with d | p-1, i.e. sum tau(p-1)
  const u64 x = 2000;
  u64 lhs = 0;
  for (u64 d = 1; d <= x; ++d) lhs += pi_ap(x, d);
  u64 rhs = 0;
  for (u64 p : oracle::naive_primes(x)) rhs += divisors(p - 1).size();
  EXPECT_EQ(lhs, rhs);
}

TEST(ApScan, TrivialModulus) {
  APDiscrepancyRecord rec = ap_scan(2, 1);
  EXPECT_EQ(rec.count_at_x, 1u);
  EXPECT_NEAR(rec.max_abs_discrepancy, 1.0, 1e-12);  // |1 - li(2)| at y = 2
  EXPECT_EQ(rec.argmax_y, 2u);
  EXPECT_EQ(rec.phi_d, 1u);
}

TEST(ApScan, RecordInvariants) {
  for (u64 d : {u64{1}, u64{3}, u64{10}, u64{17}}) {
    APDiscrepancyRecord rec = ap_scan(5000, d);
    EXPECT_EQ(rec.d, d);
    EXPECT_EQ(rec.phi_d, totient_point(d));
    EXPECT_EQ(rec.count_at_x, pi_ap(5000, d));
    EXPECT_LE(rec.count_at_x, (5000 + d - 1) / d + 1);
    double at_end = std::abs(static_cast<double>(rec.count_at_x) -
                             li(5000.0) / static_cast<double>(rec.phi_d));
    EXPECT_GE(rec.max_abs_discrepancy + 1e-9, at_end);
  }
}

TEST(ApScan, MatchesBruteForce) {
  auto is_p = oracle::naive_sieve(500);
  for (u64 d = 1; d <= 20; ++d) {
    auto brute = oracle::brute_ap_scan(500, d, is_p);
    APDiscrepancyRecord rec = ap_scan(500, d);
    EXPECT_NEAR(rec.max_abs_discrepancy, brute.max_abs, 1e-6) << "d=" << d;
    EXPECT_EQ(rec.count_at_x, brute.count_at_x) << "d=" << d;
    EXPECT_EQ(rec.argmax_y, brute.argmax) << "d=" << d;
  }
}

TEST(ApScan, FrozenValue) {
  APDiscrepancyRecord rec = ap_scan(100, 10);
  EXPECT_NEAR(rec.max_abs_discrepancy, 2.2702444509905346, 1e-6);
  EXPECT_EQ(rec.argmax_y, 100u);
  EXPECT_EQ(rec.count_at_x, 5u);
}

TEST(EhDiscrepancy, SingleModulusCase) {
  DiscrepancySummary s = eh_discrepancy(2, 0.9);
  EXPECT_EQ(s.d_max, 1u);
  EXPECT_NEAR(s.total, 1.0, 1e-12);
  double l2 = std::log(2.0);
  EXPECT_NEAR(s.normalized, s.total * l2 * l2 / 2.0, 1e-15);
}

TEST(EhDiscrepancy, TotalIsSumOfScans) {
  DiscrepancySummary s = eh_discrepancy(100, 0.5);
  EXPECT_EQ(s.d_max, 10u);
  double expect = 0.0;
  for (u64 d = 1; d <= 10; ++d) expect += ap_scan(100, d).max_abs_discrepancy;
  EXPECT_NEAR(s.total, expect, 1e-9);
}

TEST(EhDiscrepancy, ThreadCountInvariance) {
  DiscrepancySummary a = eh_discrepancy(3000, 0.3, 1);
  DiscrepancySummary b = eh_discrepancy(3000, 0.3, 7);
  EXPECT_EQ(a.d_max, b.d_max);
  EXPECT_DOUBLE_EQ(a.total, b.total);
  EXPECT_DOUBLE_EQ(a.normalized, b.normalized);
}

TEST(EhDiscrepancy, SummaryInvariants) {
  for (auto [x, eps] : std::vector<std::pair<u64, double>>{
           {100, 0.1}, {1000, 0.25}, {5000, 0.7}}) {
    DiscrepancySummary s = eh_discrepancy(x, eps);
    EXPECT_GE(s.total, 0.0);
    EXPECT_GE(s.d_max, 1u);
    EXPECT_LT(s.d_max, x);
    EXPECT_DOUBLE_EQ(
        s.normalized,
        s.total * std::log(static_cast<double>(x)) * std::log(static_cast<double>(x)) /
            static_cast<double>(x));
  }
}

TEST(EhDiscrepancy, Preconditions) {
  EXPECT_THROW(eh_discrepancy(1, 0.5), std::invalid_argument);
  EXPECT_THROW(eh_discrepancy(100, 0.0), std::invalid_argument);
  EXPECT_THROW(eh_discrepancy(100, 1.0), std::invalid_argument);
}

TEST(BtAudit, NoViolations) {
  EXPECT_TRUE(bt_audit(100, 50).empty());
  EXPECT_TRUE(bt_audit(10000, 100).empty());
  // k >= x is skipped: only k <= x-1 is audited
  EXPECT_TRUE(bt_audit(100, 1000).empty());
  EXPECT_THROW(bt_audit(1, 10), std::invalid_argument);
}

TEST(BtAudit, SpotCheckAgainstDirectEvaluation) {
  // pi(100;3,1) = 11 <= 200/(2 log(100/3)) ~ 28.52
  u64 count = pi_ap(100, 3);
  double bound = 2.0 * 100.0 / (2.0 * std::log(100.0 / 3.0));
  EXPECT_EQ(count, 11u);
  EXPECT_NEAR(bound, 28.517994833745295, 1e-9);
  EXPECT_LT(static_cast<double>(count), bound);
}

TEST(IntegralI, KnownValues) {
  EXPECT_NEAR(integral_I(4, 10), 0.25 - 1.0 / 9.0, 1e-15);  // single prime p = 5
  EXPECT_NEAR(integral_I(1, 3), 0.5, 1e-15);                // p in {2, 3}
  EXPECT_DOUBLE_EQ(integral_I(10, 10), 0.0);  // no AP prime <= 10 for m = 10
  EXPECT_THROW(integral_I(0, 10), std::invalid_argument);
  EXPECT_THROW(integral_I(3, 1), std::invalid_argument);
}

TEST(IntegralI, MatchesPiecewiseExactIntegration) {
  auto is_p = oracle::naive_sieve(10000);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    u64 m = 1 + rng() % 50;
    u64 x = 2 + rng() % 9998;
    double lhs = integral_I(m, x);
    double rhs = oracle::piecewise_integral_I(m, x, is_p);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)))
        << "m=" << m << " x=" << x;
  }
}

TEST(IntegralI, PartialSummationIdentity) {
  // sum_{p<=x, p=1 (m)} 1/(p-1) = pi(x;m,1)/(x-1) + I(m,x)
  auto is_p = oracle::naive_sieve(20000);
  std::mt19937_64 rng(19);
  for (int it = 0; it < 40; ++it) {
    u64 m = 1 + rng() % 30;
    u64 x = 2 + rng() % 19998;
    double recip = 0.0;
    u64 count = 0;
    for (u64 p = 2; p <= x; ++p) {
      if (is_p[p] && (p - 1) % m == 0) {
        recip += 1.0 / static_cast<double>(p - 1);
        ++count;
      }
    }
    double rhs = static_cast<double>(count) / (static_cast<double>(x) - 1.0) +
                 integral_I(m, x);
    EXPECT_NEAR(recip, rhs, 1e-12 * std::max(1.0, recip)) << "m=" << m << " x=" << x;
  }
}

TEST(Lemma23Ratio, PreconditionAndFrozenValue) {
  EXPECT_THROW(lemma23_ratio(10, 60), std::domain_error);   // x = 6m
  EXPECT_THROW(lemma23_ratio(1, 6), std::domain_error);     // x < 8
  EXPECT_NEAR(lemma23_ratio(2, 100000), oracle::kLemma23_2_1e5, 1e-9);
  for (u64 m = 1; m <= 20; ++m) {
    double r = lemma23_ratio(m, 100000);
    EXPECT_GT(r, 0.0) << "m=" << m;
    EXPECT_LT(r, 50.0) << "m=" << m;
  }
}

TEST(PropSums, DegenerateAndSmallCases) {
  PropSums z = prop_sums(2, 0.5);
  EXPECT_DOUBLE_EQ(z.a1, 0.0);
  EXPECT_DOUBLE_EQ(z.a2, 0.0);
  EXPECT_DOUBLE_EQ(z.a3, 0.0);
  for (auto [x, eps] : std::vector<std::pair<u64, double>>{
           {100, 0.2}, {1000, 0.3}, {5000, 0.5}}) {
    PropSums p = prop_sums(x, eps);
    EXPECT_GE(p.a1, 0.0);
    EXPECT_GE(p.a2, 0.0);
    EXPECT_GE(p.a3, 0.0);
  }
}

TEST(PropSums, FrozenCrossValues) {
  PropSums p = prop_sums(100, 0.2);
  EXPECT_NEAR(p.a1, oracle::kProp100_02_a1, 1e-9);
  EXPECT_NEAR(p.a2, oracle::kProp100_02_a2, 1e-9);
  EXPECT_NEAR(p.a3, oracle::kProp100_02_a3, 1e-9);
  PropSums q = prop_sums(500, 0.3);
  EXPECT_NEAR(q.a1, oracle::kProp500_03_a1, 1e-9);
  EXPECT_NEAR(q.a2, oracle::kProp500_03_a2, 1e-9);
  EXPECT_NEAR(q.a3, oracle::kProp500_03_a3, 1e-9);
}

TEST(PropSums, Preconditions) {
  EXPECT_THROW(prop_sums(default_prop_cap() + 1, 0.2), cap_exceeded_error);
  EXPECT_THROW(prop_sums(100, 1.5), std::invalid_argument);
  EXPECT_THROW(prop_sums(1, 0.2), std::invalid_argument);
}
