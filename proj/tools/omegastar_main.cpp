// Command-line driver. Subcommands map one-to-one onto the library
// operations; every number printed here is recomputable by calling the
// corresponding function with the same arguments.
//
// Exit codes: 0 success, 1 invalid arguments, 2 resource/cap limit.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omegastar/ap_stats.hpp"
#include "omegastar/arith.hpp"
#include "omegastar/common.hpp"
#include "omegastar/constants.hpp"
#include "omegastar/omega_star.hpp"
#include "omegastar/prime_engine.hpp"
#include "omegastar/report.hpp"

namespace {

using namespace omegastar;

int run(int argc, char** argv) {
  CLI::App app{"omegastar: shifted-prime divisor statistics at desk scale"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  unsigned threads = 0;
  u64 mem_cap = 0;
  u64 segment_size = 0;
  app.add_option("--threads", threads, "worker threads (default: OMEGASTAR_THREADS or hardware)");
  app.add_option("--mem-cap", mem_cap, "memory cap in bytes (default 2 GiB)");
  app.add_option("--segment-size", segment_size, "sieve segment size in integers");

  u64 x_primes = 0;
  auto* sc_primes = app.add_subcommand("primes", "prime count pi(x)");
  sc_primes->add_option("--x", x_primes, "upper bound")->required();

  u64 x_omega = 0;
  bool want_champion = false;
  auto* sc_omega = app.add_subcommand("omega-star", "omega*(n) or the champion up to n");
  sc_omega->add_option("--x", x_omega, "argument n (or search bound with --champion)")->required();
  sc_omega->add_flag("--champion", want_champion, "report the smallest n attaining max omega*");

  u64 x_moments = 0;
  auto* sc_moments = app.add_subcommand("moments", "exact S1(x), S2(x) and ratios");
  sc_moments->add_option("--x", x_moments, "upper bound")->required();

  u64 x_identity = 1000;
  auto* sc_identity = app.add_subcommand("identity", "verify the exact S1/S2 identities at x");
  sc_identity->add_option("--x", x_identity, "upper bound (<= pair-sum cap)");

  u64 x_mm = 10000;
  auto* sc_mm = app.add_subcommand("mm-identity", "T(x) vs S2(x), the O(x) gap");
  sc_mm->add_option("--x", x_mm, "upper bound");

  u64 x_eh = 10000;
  std::vector<double> eps_eh{0.1, 0.2, 0.3, 0.5};
  auto* sc_eh = app.add_subcommand("eh", "Elliott-Halberstam discrepancy sum");
  sc_eh->add_option("--x", x_eh, "upper bound");
  sc_eh->add_option("--eps", eps_eh, "epsilon grid (0 < eps < 1)");

  u64 x_bt = 1000000;
  u64 k_max = 1000;
  auto* sc_bt = app.add_subcommand("bt-audit", "Brun-Titchmarsh inequality audit");
  sc_bt->add_option("--x", x_bt, "upper bound");
  sc_bt->add_option("--k-max", k_max, "largest modulus to audit");

  u64 y_landau = 1000000;
  auto* sc_landau = app.add_subcommand("landau", "Landau sums over 1/phi and m/phi");
  sc_landau->add_option("--x", y_landau, "upper bound y");

  auto* sc_constants =
      app.add_subcommand("constants", "zeta values and kappa = zeta(2)zeta(3)/zeta(6)");

  int dz_g = 2, dz_ell = 2;
  u64 dz_z = 100;
  auto* sc_dz = app.add_subcommand("ding-zhao", "brute-force shifted-tuple sum");
  sc_dz->add_option("--g", dz_g, "tuple length (2 or 3)");
  sc_dz->add_option("--ell", dz_ell, "exponent (1 or 2)");
  sc_dz->add_option("--z", dz_z, "upper bound (<= 3000 for g=2, <= 200 for g=3)");

  std::vector<u64> xs_report;
  std::vector<double> eps_report;
  std::string out_path;
  std::string format = "csv";
  bool with_1e8 = false;
  auto* sc_report = app.add_subcommand("report", "full grid report (CSV or JSON)");
  sc_report->add_option("--xs", xs_report, "x grid (default 1e3..1e7)");
  sc_report->add_option("--eps", eps_report, "eps grid (default 0.1 0.2 0.3 0.5)");
  sc_report->add_option("--out", out_path, "output path (default: stdout)");
  sc_report->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sc_report->add_flag("--with-1e8", with_1e8, "append x = 1e8 to the default grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message and usage text
    return (code == 0) ? 0 : 1;
  }

  if (mem_cap > 0) set_memory_cap(mem_cap);
  if (threads > 0) set_thread_count(threads);

  if (sc_primes->parsed()) {
    std::printf("pi(%" PRIu64 ") = %" PRIu64 "\n", x_primes, prime_count(x_primes));
    return 0;
  }

  if (sc_omega->parsed()) {
    if (want_champion) {
      auto [n, v] = champion(x_omega);
      std::printf("champion n = %" PRIu64 "  omega* = %u  (smallest maximizer for m <= %" PRIu64 ")\n",
                  n, v, x_omega);
    } else {
      std::printf("omega*(%" PRIu64 ") = %u\n", x_omega, omega_star_single(x_omega));
    }
    return 0;
  }

  if (sc_moments->parsed()) {
    MomentRow row = moments(x_moments, segment_size, threads);
    std::printf("x = %" PRIu64 "\n", row.x);
    std::printf("S1 = %" PRIu64 "\n", row.s1);
    std::printf("S2 = %" PRIu64 "\n", row.s2);
    std::printf("S2/(x log x) = %s  (2*kappa = %s)\n", format_sig12(row.ratio_s2).c_str(),
                format_sig12(row.pred).c_str());
    if (row.x >= 3) {
      // empirical Prachar constant: S1(x) = x log log x + B x + O(x/log x)
      double b = static_cast<double>(row.s1) / static_cast<double>(row.x) -
                 std::log(std::log(static_cast<double>(row.x)));
      std::printf("S1/x - log log x = %s  (Prachar B estimate, report only)\n",
                  format_sig12(b).c_str());
    }
    return 0;
  }

  if (sc_identity->parsed()) {
    MomentRow row = moments(x_identity, segment_size, threads);
    u64 s1_id = s1_floor_identity(x_identity);
    u64 s2_id = pair_lcm_floor_sum(x_identity);
    bool ok1 = row.s1 == s1_id;
    bool ok2 = row.s2 == s2_id;
    std::printf("S1(%" PRIu64 ") = %" PRIu64 "  floor identity = %" PRIu64 "  %s\n",
                x_identity, row.s1, s1_id, ok1 ? "equal" : "MISMATCH");
    std::printf("S2(%" PRIu64 ") = %" PRIu64 "  pair-lcm sum   = %" PRIu64 "  %s\n",
                x_identity, row.s2, s2_id, ok2 ? "equal" : "MISMATCH");
    if (x_identity >= 2) {
      double recip = pair_reciprocal_lcm_sum(x_identity);
      double target = kappa_cached().two_kappa * std::log(static_cast<double>(x_identity));
      std::printf("sum 1/[p-1,q-1] over p,q <= %" PRIu64 " = %s  (/2 kappa log x = %s)\n",
                  x_identity, format_sig12(recip).c_str(),
                  format_sig12(recip / target).c_str());
    }
    if (ok1 && ok2) {
      std::printf("identities confirmed at x = %" PRIu64 "\n", x_identity);
      return 0;
    }
    return 1;
  }

  if (sc_mm->parsed()) {
    MomentRow row = moments(x_mm, segment_size, threads);
    double t = mm_identity_rhs(x_mm);
    std::printf("T(x)  = %s\n", format_sig12(t).c_str());
    std::printf("S2(x) = %" PRIu64 "\n", row.s2);
    std::printf("|T - S2|/x = %s\n",
                format_sig12(std::abs(t - static_cast<double>(row.s2)) /
                             static_cast<double>(x_mm))
                    .c_str());
    return 0;
  }

  if (sc_eh->parsed()) {
    for (double e : eps_eh) {
      DiscrepancySummary s = eh_discrepancy(x_eh, e, threads);
      std::printf("x = %" PRIu64 "  eps = %s  d_max = %" PRIu64
                  "  total = %s  total*(log x)^2/x = %s\n",
                  s.x, format_sig12(s.eps).c_str(), s.d_max,
                  format_sig12(s.total).c_str(), format_sig12(s.normalized).c_str());
      if (x_eh <= default_prop_cap()) {
        PropSums p = prop_sums(x_eh, e);
        double lx = std::log(static_cast<double>(x_eh));
        std::printf("  split-integral sums: A1 = %s  A2 = %s  A3 = %s  (/log x: %s, %s, %s)\n",
                    format_sig12(p.a1).c_str(), format_sig12(p.a2).c_str(),
                    format_sig12(p.a3).c_str(), format_sig12(p.a1 / lx).c_str(),
                    format_sig12(p.a2 / lx).c_str(), format_sig12(p.a3 / lx).c_str());
      }
    }
    return 0;
  }

  if (sc_bt->parsed()) {
    std::vector<u64> bad = bt_audit(x_bt, k_max, threads);
    if (bad.empty()) {
      std::printf("no Brun-Titchmarsh violations for k <= %" PRIu64 " at x = %" PRIu64 "\n",
                  std::min(k_max, x_bt - 1), x_bt);
      return 0;
    }
    for (u64 k : bad) std::printf("violation at k = %" PRIu64 "\n", k);
    return 1;
  }

  if (sc_landau->parsed()) {
    TotientTable phi = totient_sieve(y_landau);
    double s_recip = landau_sum_reciprocal_phi(phi, y_landau);
    double s_ratio = landau_sum_m_over_phi(phi, y_landau);
    double k = kappa_cached().kappa;
    double ly = std::log(static_cast<double>(y_landau));
    std::printf("sum 1/phi(m), m <= %" PRIu64 "  = %s\n", y_landau,
                format_sig12(s_recip).c_str());
    std::printf("  minus kappa log y        = %s  (the O(1) level, report only)\n",
                format_sig12(s_recip - k * ly).c_str());
    std::printf("sum m/phi(m), m <= %" PRIu64 " = %s\n", y_landau,
                format_sig12(s_ratio).c_str());
    std::printf("  over kappa y             = %s\n",
                format_sig12(s_ratio / (k * static_cast<double>(y_landau))).c_str());
    return 0;
  }

  if (sc_constants->parsed()) {
    ConstantsBundle c = kappa();
    std::printf("zeta(2)  = %.12f\n", c.zeta2);
    std::printf("zeta(3)  = %.12f\n", c.zeta3);
    std::printf("zeta(6)  = %.12f\n", c.zeta6);
    std::printf("kappa    = %.12f\n", c.kappa);
    std::printf("2*kappa  = %.12f\n", c.two_kappa);
    return 0;
  }

  if (sc_dz->parsed()) {
    double v = ding_zhao_sum(dz_g, dz_ell, dz_z);
    std::printf("sum(g=%d, ell=%d, z=%" PRIu64 ") = %s\n", dz_g, dz_ell, dz_z,
                format_sig12(v).c_str());
    if (dz_z >= 3) {
      double lz = std::log(static_cast<double>(dz_z));
      std::printf("  / (log z)^%d = %s\n", dz_g,
                  format_sig12(v / std::pow(lz, dz_g)).c_str());
    }
    return 0;
  }

  if (sc_report->parsed()) {
    ReportOptions opts = ReportOptions::defaults();
    if (!xs_report.empty()) opts.x_grid = xs_report;
    if (with_1e8) opts.x_grid.push_back(100000000);
    if (!eps_report.empty()) opts.eps_grid = eps_report;
    opts.segment_size = segment_size;
    opts.threads = threads;
    ReportFormat fmt = (format == "json") ? ReportFormat::json : ReportFormat::csv;
    ReportDocument doc;
    if (out_path.empty()) {
      doc = build_report(opts);
      write_report(doc, std::cout, fmt);
    } else {
      doc = run_report(opts, out_path, fmt);
      std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    }
    double lo = doc.rows.front().ratio_s2, hi = lo;
    for (const auto& r : doc.rows) {
      lo = std::min(lo, r.ratio_s2);
      hi = std::max(hi, r.ratio_s2);
    }
    std::fprintf(stderr,
                 "S2/(x log x) spans [%s, %s] on this grid; fitted slope %s vs 2*kappa %s\n",
                 format_sig12(lo).c_str(), format_sig12(hi).c_str(),
                 format_sig12(doc.fit.slope).c_str(), format_sig12(doc.fit.target).c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const omegastar::resource_limit_error& e) {
    std::fprintf(stderr, "resource limit: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
