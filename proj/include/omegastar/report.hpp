#pragma once
// Report assembly: moment rows over an x-grid, discrepancy summaries over an
// eps-grid, the audit block, the least-squares trend of S2/x against log x,
// and byte-stable CSV/JSON serialization.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "omegastar/ap_stats.hpp"
#include "omegastar/common.hpp"
#include "omegastar/constants.hpp"
#include "omegastar/omega_star.hpp"

namespace omegastar {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double target = 0;  // 2 kappa
};

struct AuditBlock {
  std::vector<u64> bt_violations;
  double lemma23_max_ratio = 0;
  double mm_identity_max_normalized_gap = 0;
};

struct ReportDocument {
  ConstantsBundle constants;
  std::vector<MomentRow> rows;
  std::vector<DiscrepancySummary> discrepancies;
  AuditBlock audits;
  FitResult fit;
};

enum class ReportFormat { csv, json };

struct ReportOptions {
  std::vector<u64> x_grid;
  std::vector<double> eps_grid;
  u64 segment_size = 0;   // 0 = default
  unsigned threads = 0;   // 0 = resolve via thread_count()
  u64 audit_x = 1000000;  // clamped to max grid x
  u64 audit_k_max = 1000;
  u64 audit_lemma23_m_max = 100;

  static ReportOptions defaults() {
    ReportOptions o;
    o.x_grid = {1000, 10000, 100000, 1000000, 10000000};
    o.eps_grid = {0.1, 0.2, 0.3, 0.5};
    return o;
  }
};

// Fixed 12-significant-digit rendering; locale-independent.
inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// Least-squares fit of s2/x against log x. The slope estimates the constant
// C in S2(x) ~ C x log x.
inline FitResult trend_fit(const std::vector<MomentRow>& rows) {
  std::set<u64> distinct;
  for (const auto& r : rows) distinct.insert(r.x);
  if (distinct.size() < 2) {
    throw std::invalid_argument("trend_fit: needs at least 2 rows with distinct x");
  }
  double n = static_cast<double>(rows.size());
  KahanSum st, sy, stt, sty;
  for (const auto& r : rows) {
    double t = std::log(static_cast<double>(r.x));
    double y = static_cast<double>(r.s2) / static_cast<double>(r.x);
    st.add(t);
    sy.add(y);
    stt.add(t * t);
    sty.add(t * y);
  }
  double tbar = st.value() / n;
  double ybar = sy.value() / n;
  FitResult fit;
  fit.slope = (sty.value() - n * tbar * ybar) / (stt.value() - n * tbar * tbar);
  fit.intercept = ybar - fit.slope * tbar;
  fit.target = kappa_cached().two_kappa;
  return fit;
}

inline ReportDocument build_report(const ReportOptions& opts) {
  if (opts.x_grid.empty()) throw std::invalid_argument("run_report: empty x grid");
  if (opts.eps_grid.empty()) throw std::invalid_argument("run_report: empty eps grid");
  std::vector<u64> xs = opts.x_grid;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.front() < 2) throw std::invalid_argument("run_report: x values must be >= 2");
  for (double e : opts.eps_grid) {
    if (!(e > 0.0 && e < 1.0)) {
      throw std::invalid_argument("run_report: eps values must lie in (0, 1)");
    }
  }

  ReportDocument doc;
  doc.constants = kappa();
  for (u64 x : xs) {
    doc.rows.push_back(moments(x, opts.segment_size, opts.threads));
  }
  u64 x_max = xs.back();
  for (double e : opts.eps_grid) {
    doc.discrepancies.push_back(eh_discrepancy(x_max, e, opts.threads));
  }

  u64 audit_x = std::min(opts.audit_x, x_max);
  doc.audits.bt_violations = bt_audit(audit_x, std::min(opts.audit_k_max, audit_x - 1),
                                      opts.threads);
  u64 m_max = std::min(opts.audit_lemma23_m_max, (audit_x - 1) / 6);
  double worst = 0.0;
  for (u64 m = 1; m <= m_max; ++m) {
    worst = std::max(worst, lemma23_ratio(m, audit_x));
  }
  doc.audits.lemma23_max_ratio = worst;
  double worst_gap = 0.0;
  for (const auto& row : doc.rows) {
    if (row.x > default_mm_cap()) continue;
    double gap = std::abs(mm_identity_rhs(row.x) - static_cast<double>(row.s2)) /
                 static_cast<double>(row.x);
    worst_gap = std::max(worst_gap, gap);
  }
  doc.audits.mm_identity_max_normalized_gap = worst_gap;

  if (doc.rows.size() >= 2) {
    doc.fit = trend_fit(doc.rows);
  } else {
    doc.fit.slope = 0.0;  // one grid point: no trend to fit
    doc.fit.intercept = 0.0;
    doc.fit.target = doc.constants.two_kappa;
  }
  return doc;
}

// CSV: the moment rows only, header pinned, LF endings.
inline void write_csv(const ReportDocument& doc, std::ostream& os) {
  os << "x,s1,s2,s2_over_xlogx,two_kappa\n";
  for (const auto& r : doc.rows) {
    os << r.x << ',' << r.s1 << ',' << r.s2 << ',' << format_sig12(r.ratio_s2)
       << ',' << format_sig12(r.pred) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["constants"] = {{"zeta2", doc.constants.zeta2},
                    {"zeta3", doc.constants.zeta3},
                    {"zeta6", doc.constants.zeta6},
                    {"kappa", doc.constants.kappa},
                    {"two_kappa", doc.constants.two_kappa}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : doc.rows) {
    j["rows"].push_back({{"x", r.x},
                         {"s1", r.s1},
                         {"s2", r.s2},
                         {"s2_over_xlogx", r.ratio_s2},
                         {"two_kappa", r.pred}});
  }
  j["discrepancies"] = nlohmann::ordered_json::array();
  for (const auto& s : doc.discrepancies) {
    j["discrepancies"].push_back({{"x", s.x},
                                  {"eps", s.eps},
                                  {"d_max", s.d_max},
                                  {"total", s.total},
                                  {"normalized", s.normalized}});
  }
  j["audits"] = {{"bt_violations", doc.audits.bt_violations},
                 {"lemma23_max_ratio", doc.audits.lemma23_max_ratio},
                 {"mm_identity_max_normalized_gap",
                  doc.audits.mm_identity_max_normalized_gap}};
  j["fit"] = {{"slope", doc.fit.slope},
              {"intercept", doc.fit.intercept},
              {"target", doc.fit.target}};
  return j;
}

inline void write_report(const ReportDocument& doc, std::ostream& os, ReportFormat fmt) {
  if (fmt == ReportFormat::csv) {
    write_csv(doc, os);
  } else {
    os << to_json(doc).dump(2) << '\n';
  }
}

// Computes the document, writes it to out_path, returns it.
inline ReportDocument run_report(const ReportOptions& opts, const std::string& out_path,
                                 ReportFormat fmt) {
  ReportDocument doc = build_report(opts);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw io_error("run_report: cannot open for writing: " + out_path);
  write_report(doc, out, fmt);
  out.flush();
  if (!out) throw io_error("run_report: write failed: " + out_path);
  return doc;
}

}  // namespace omegastar
