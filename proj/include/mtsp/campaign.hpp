#pragma once

#include <string>
#include <vector>

#include "mtsp/mechanisms.hpp"

namespace mtsp {

struct CampaignConfig {
  std::string source;  // city file (TSPLIB-style)
  std::vector<Mechanism> mechanisms{kAllMechanisms.begin(), kAllMechanisms.end()};
  std::vector<int> m_values{2, 3};
  std::vector<int> n_values{8, 9, 10, 11, 12, 13, 14};
  int shift_first = 0;
  int shift_last = 129;  // inclusive
  double limit_ms = 30000.0;
  std::string out_dir = "out";
  bool deterministic = false;    // deterministic durations instead of wall clock
  double units_per_ms = 100000;  // work units per millisecond in deterministic mode
  int jobs = 1;                  // cells run concurrently
};

struct ResultRecord {
  Mechanism mechanism = Mechanism::NoRealloc;
  int m = 0;
  int n = 0;
  int shift = 0;
  double total = 0.0;
  std::vector<double> per_salesman;
  int rounds = 0;
  double inferred_span_ms = 0.0;
  bool timed_out = false;
  bool optimal = false;
};

std::string record_to_json(const ResultRecord& rec);
ResultRecord record_from_json(const std::string& line);

// Relative path of a cell's JSON-lines file under the output directory.
std::string cell_filename(Mechanism mech, int m, int n, int shift);

struct CampaignStats {
  int cells_run = 0;
  int cells_skipped = 0;  // already persisted, loaded back
  int cells_failed = 0;
  std::vector<ResultRecord> records;  // config order, failed cells omitted
};

// Runs every (mechanism, m, n, shift) cell, persisting each one as a
// JSON-lines file (round records, then one result record) plus a
// manifest.json describing the configuration and conventions.  Cells whose
// file already holds a result record are loaded instead of re-run.
CampaignStats run_campaign(const CampaignConfig& cfg);

struct RatioEntry {
  Mechanism mechanism = Mechanism::NoRealloc;
  int m = 0;
  int n = 0;
  std::vector<double> ratios;  // ordered by shift
  double median = 0.0;
  double ninth_decile = 0.0;
};

struct RatioTable {
  Mechanism baseline = Mechanism::OptDecentr;
  std::vector<RatioEntry> entries;
  int gaps = 0;  // records dropped for lack of a same-(m,n,shift) baseline
};

// Reads every persisted result record under out_dir/cells, in filename
// order.
std::vector<ResultRecord> load_records(const std::string& out_dir);

// Total-length ratios candidate/baseline over identical (m, n, shift)
// cells, grouped per (mechanism, m, n) with median and ninth decile.
RatioTable ratios(const std::vector<ResultRecord>& records, Mechanism baseline);

// Writes one CSV per statistic and m value (columns n, mechanism, value)
// plus a plain-text summary table into out_dir.
void emit_report(const RatioTable& table, const std::string& out_dir);

}  // namespace mtsp
