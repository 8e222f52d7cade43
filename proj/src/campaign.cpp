#include "mtsp/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "mtsp/instance.hpp"
#include "mtsp/stats.hpp"
#include "mtsp/tsplib.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mtsp {

std::string record_to_json(const ResultRecord& rec) {
  json j;
  j["type"] = "result";
  j["mechanism"] = to_string(rec.mechanism);
  j["m"] = rec.m;
  j["n"] = rec.n;
  j["shift"] = rec.shift;
  j["total"] = rec.total;
  j["per_salesman"] = rec.per_salesman;
  j["rounds"] = rec.rounds;
  j["inferred_span_ms"] = rec.inferred_span_ms;
  j["timed_out"] = rec.timed_out;
  j["optimal"] = rec.optimal;
  return j.dump();
}

ResultRecord record_from_json(const std::string& line) {
  json j = json::parse(line);
  if (j.value("type", "") != "result") throw std::invalid_argument("not a result record");
  ResultRecord rec;
  auto mech = mechanism_from_string(j.at("mechanism").get<std::string>());
  if (!mech) throw std::invalid_argument("unknown mechanism in record");
  rec.mechanism = *mech;
  rec.m = j.at("m").get<int>();
  rec.n = j.at("n").get<int>();
  rec.shift = j.at("shift").get<int>();
  rec.total = j.at("total").get<double>();
  rec.per_salesman = j.at("per_salesman").get<std::vector<double>>();
  rec.rounds = j.at("rounds").get<int>();
  rec.inferred_span_ms = j.at("inferred_span_ms").get<double>();
  rec.timed_out = j.at("timed_out").get<bool>();
  rec.optimal = j.at("optimal").get<bool>();
  return rec;
}

std::string cell_filename(Mechanism mech, int m, int n, int shift) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_m%d_n%d_s%d.jsonl", to_string(mech), m, n, shift);
  return buf;
}

namespace {

struct CellTask {
  Mechanism mech;
  int m, n, shift;
};

std::optional<ResultRecord> load_cell(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) return std::nullopt;
  try {
    return record_from_json(last);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_manifest(const CampaignConfig& cfg) {
  json j;
  j["source"] = cfg.source;
  json mechs = json::array();
  for (Mechanism mech : cfg.mechanisms) mechs.push_back(to_string(mech));
  j["mechanisms"] = mechs;
  j["m_values"] = cfg.m_values;
  j["n_values"] = cfg.n_values;
  j["shift_first"] = cfg.shift_first;
  j["shift_last"] = cfg.shift_last;
  j["limit_ms"] = cfg.limit_ms;
  j["deterministic_durations"] = cfg.deterministic;
  j["units_per_ms"] = cfg.units_per_ms;
  j["jobs"] = cfg.jobs;
  j["conventions"] = {
      {"endowment", "city j owned by salesman (j-1) mod m"},
      {"quantiles", "lower empirical, sorted index ceil(k*len/10)-1, no interpolation"},
      {"distances", "exact euclidean"},
      {"durations", cfg.deterministic ? "work units / units_per_ms" : "wall clock"},
  };
  std::ofstream out(fs::path(cfg.out_dir) / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << j.dump(2) << '\n';
}

ResultRecord record_of(const MechanismOutcome& outcome, const CellTask& task) {
  ResultRecord rec;
  rec.mechanism = task.mech;
  rec.m = task.m;
  rec.n = task.n;
  rec.shift = task.shift;
  rec.total = outcome.total;
  rec.per_salesman = outcome.per_salesman_length;
  rec.rounds = outcome.rounds;
  rec.inferred_span_ms = outcome.inferred_span_ms;
  rec.timed_out = outcome.timed_out;
  rec.optimal = outcome.optimal;
  return rec;
}

}  // namespace

CampaignStats run_campaign(const CampaignConfig& cfg) {
  if (cfg.mechanisms.empty() || cfg.m_values.empty() || cfg.n_values.empty())
    throw std::invalid_argument("empty campaign selection");
  if (cfg.shift_first < 0 || cfg.shift_last < cfg.shift_first)
    throw std::invalid_argument("bad shift range");
  if (!(cfg.limit_ms > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be at least 1");

  const CityList source = parse_tsplib_file(cfg.source);
  const fs::path cells_dir = fs::path(cfg.out_dir) / "cells";
  fs::create_directories(cells_dir);
  write_manifest(cfg);

  std::vector<CellTask> tasks;
  for (Mechanism mech : cfg.mechanisms)
    for (int m : cfg.m_values)
      for (int n : cfg.n_values)
        for (int shift = cfg.shift_first; shift <= cfg.shift_last; ++shift)
          tasks.push_back({mech, m, n, shift});

  std::vector<std::optional<ResultRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> run{0}, skipped{0}, failed{0};

  const Budget budget =
      std::isinf(cfg.limit_ms) ? Budget::unlimited() : Budget::limited(cfg.limit_ms);
  const DurationModel model{
      cfg.deterministic ? DurationMode::Deterministic : DurationMode::WallClock,
      cfg.units_per_ms};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const CellTask& task = tasks[i];
      const fs::path path = cells_dir / cell_filename(task.mech, task.m, task.n, task.shift);
      if (auto prior = load_cell(path)) {
        results[i] = std::move(prior);
        ++skipped;
        continue;
      }
      try {
        Instance inst = generate_instance(source, task.n, task.m, task.shift);
        DistanceMatrix d = distance_matrix(inst, DistanceRounding::Exact);
        MechanismOutcome outcome = run_mechanism(task.mech, inst, d, budget, model);
        ResultRecord rec = record_of(outcome, task);

        const fs::path tmp = path.string() + ".tmp";
        {
          std::ofstream out(tmp, std::ios::trunc);
          if (!out) throw std::runtime_error("cannot write " + tmp.string());
          for (std::size_t r = 0; r < outcome.trace.rounds.size(); ++r)
            out << round_to_json(outcome.trace.rounds[r]) << '\n';
          out << record_to_json(rec) << '\n';
          if (!out) throw std::runtime_error("write failed on " + tmp.string());
        }
        fs::rename(tmp, path);
        results[i] = std::move(rec);
        ++run;
      } catch (const std::exception&) {
        ++failed;
      }
    }
  };

  const int threads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignStats stats;
  stats.cells_run = run.load();
  stats.cells_skipped = skipped.load();
  stats.cells_failed = failed.load();
  for (auto& r : results)
    if (r) stats.records.push_back(std::move(*r));
  return stats;
}

std::vector<ResultRecord> load_records(const std::string& out_dir) {
  const fs::path cells_dir = fs::path(out_dir) / "cells";
  std::vector<fs::path> files;
  if (fs::is_directory(cells_dir))
    for (const auto& entry : fs::directory_iterator(cells_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
        files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ResultRecord> records;
  for (const auto& f : files)
    if (auto rec = load_cell(f)) records.push_back(std::move(*rec));
  return records;
}

RatioTable ratios(const std::vector<ResultRecord>& records, Mechanism baseline) {
  std::map<std::tuple<int, int, int>, double> base_total;
  for (const auto& r : records)
    if (r.mechanism == baseline) base_total[{r.m, r.n, r.shift}] = r.total;

  std::map<std::tuple<int, int, int>, std::vector<std::pair<int, double>>> cells;
  RatioTable table;
  table.baseline = baseline;
  for (const auto& r : records) {
    auto it = base_total.find({r.m, r.n, r.shift});
    if (it == base_total.end()) {
      ++table.gaps;
      continue;
    }
    cells[{static_cast<int>(r.mechanism), r.m, r.n}].emplace_back(r.shift, r.total / it->second);
  }
  for (auto& [key, shifts] : cells) {
    std::sort(shifts.begin(), shifts.end());
    RatioEntry e;
    e.mechanism = static_cast<Mechanism>(std::get<0>(key));
    e.m = std::get<1>(key);
    e.n = std::get<2>(key);
    for (const auto& [shift, ratio] : shifts) e.ratios.push_back(ratio);
    e.median = decile(e.ratios, 5);
    e.ninth_decile = decile(e.ratios, 9);
    table.entries.push_back(std::move(e));
  }
  return table;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void emit_report(const RatioTable& table, const std::string& out_dir) {
  if (table.entries.empty()) throw std::invalid_argument("empty ratio table");
  fs::create_directories(out_dir);

  std::vector<int> ms;
  for (const auto& e : table.entries)
    if (std::find(ms.begin(), ms.end(), e.m) == ms.end()) ms.push_back(e.m);
  std::sort(ms.begin(), ms.end());

  struct Stat {
    const char* name;
    double RatioEntry::* field;
  };
  const Stat stats[] = {{"median", &RatioEntry::median}, {"d9", &RatioEntry::ninth_decile}};

  for (const auto& stat : stats) {
    for (int m : ms) {
      // Entries arrive ordered by (mechanism, m, n); rows go out by n first.
      std::vector<const RatioEntry*> rows;
      for (const auto& e : table.entries)
        if (e.m == m) rows.push_back(&e);
      std::sort(rows.begin(), rows.end(), [](const RatioEntry* a, const RatioEntry* b) {
        if (a->n != b->n) return a->n < b->n;
        return static_cast<int>(a->mechanism) < static_cast<int>(b->mechanism);
      });
      char name[96];
      std::snprintf(name, sizeof name, "ratio_%s_%s_m%d.csv", to_string(table.baseline),
                    stat.name, m);
      std::ofstream out(fs::path(out_dir) / name);
      if (!out) throw std::runtime_error(std::string("cannot write ") + name);
      out << "n,mechanism,value\n";
      for (const RatioEntry* e : rows)
        out << e->n << ',' << to_string(e->mechanism) << ',' << fmt(e->*(stat.field)) << '\n';
      if (!out) throw std::runtime_error(std::string("write failed on ") + name);
    }
  }

  std::ofstream sum(fs::path(out_dir) / "summary.txt");
  if (!sum) throw std::runtime_error("cannot write summary.txt");
  sum << "total route length ratios vs " << to_string(table.baseline) << '\n';
  sum << "quantiles: lower empirical, sorted index ceil(k*len/10)-1\n";
  if (table.gaps > 0) sum << "gaps: " << table.gaps << " records without a baseline cell\n";
  sum << '\n';
  for (const auto& e : table.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "m=%d n=%-3d %-11s samples=%-4zu median=%-14s d9=%s\n",
                  e.m, e.n, to_string(e.mechanism), e.ratios.size(), fmt(e.median).c_str(),
                  fmt(e.ninth_decile).c_str());
    sum << line;
  }
  if (!sum) throw std::runtime_error("write failed on summary.txt");
}

}  // namespace mtsp
