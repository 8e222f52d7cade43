#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mtsp/campaign.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/tsplib.hpp"

namespace fs = std::filesystem;

namespace {

int to_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + text + "'");
  }
}

// "2,3", "8..14", "0,4..6" all work; ranges are inclusive.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int a = to_int(item.substr(0, dots));
    const int b = to_int(item.substr(dots + 2));
    if (b < a) throw std::invalid_argument("descending range " + item);
    for (int v = a; v <= b; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list " + text);
  return out;
}

std::pair<int, int> parse_shift_range(const std::string& text) {
  const std::vector<int> values = parse_int_list(text);
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] != values[i - 1] + 1)
      throw std::invalid_argument("shifts must form a contiguous ascending range");
  return {values.front(), values.back()};
}

std::vector<mtsp::Mechanism> parse_mechanisms(const std::string& text) {
  if (text == "all")
    return {mtsp::kAllMechanisms.begin(), mtsp::kAllMechanisms.end()};
  std::vector<mtsp::Mechanism> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto mech = mtsp::mechanism_from_string(item);
    if (!mech) throw std::invalid_argument("unknown mechanism " + item);
    out.push_back(*mech);
  }
  if (out.empty()) throw std::invalid_argument("empty mechanism list");
  return out;
}

mtsp::Mechanism parse_baseline(const std::string& text) {
  auto mech = mtsp::mechanism_from_string(text);
  if (!mech || (*mech != mtsp::Mechanism::OptDecentr && *mech != mtsp::Mechanism::FullCentr))
    throw std::invalid_argument("baseline must be optdecentr or fullcentr");
  return *mech;
}

int cmd_gen(const std::string& source, const std::string& m_text, const std::string& n_text,
            const std::string& shifts_text, const std::string& out_dir) {
  const mtsp::CityList src = mtsp::parse_tsplib_file(source);
  const std::vector<int> ms = parse_int_list(m_text);
  const std::vector<int> ns = parse_int_list(n_text);
  const std::vector<int> shifts = parse_int_list(shifts_text);
  const fs::path dir = fs::path(out_dir) / "instances";
  fs::create_directories(dir);
  int count = 0;
  for (int m : ms)
    for (int n : ns)
      for (int shift : shifts) {
        const mtsp::Instance inst = mtsp::generate_instance(src, n, m, shift);
        char name[64];
        std::snprintf(name, sizeof name, "m%d_n%d_s%d.json", m, n, shift);
        std::ofstream out(dir / name);
        if (!out) throw std::runtime_error(std::string("cannot write ") + name);
        out << mtsp::instance_to_json(inst).dump() << '\n';
        if (!out) throw std::runtime_error(std::string("write failed on ") + name);
        ++count;
      }
  std::printf("wrote %d instances under %s\n", count, dir.string().c_str());
  return 0;
}

int cmd_run(const mtsp::CampaignConfig& cfg) {
  const mtsp::CampaignStats stats = mtsp::run_campaign(cfg);
  std::printf("cells run=%d skipped=%d failed=%d (records under %s/cells)\n", stats.cells_run,
              stats.cells_skipped, stats.cells_failed, cfg.out_dir.c_str());
  return stats.cells_failed > 0 ? 1 : 0;
}

int cmd_ratios(const std::string& out_dir, const std::string& baseline_text) {
  const mtsp::Mechanism baseline = parse_baseline(baseline_text);
  const std::vector<mtsp::ResultRecord> records = mtsp::load_records(out_dir);
  if (records.empty()) throw std::invalid_argument("no result records under " + out_dir);
  const mtsp::RatioTable table = mtsp::ratios(records, baseline);

  nlohmann::json j;
  j["baseline"] = mtsp::to_string(baseline);
  j["gaps"] = table.gaps;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : table.entries) {
    nlohmann::json je;
    je["mechanism"] = mtsp::to_string(e.mechanism);
    je["m"] = e.m;
    je["n"] = e.n;
    je["ratios"] = e.ratios;
    je["median"] = e.median;
    je["ninth_decile"] = e.ninth_decile;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);

  char name[64];
  std::snprintf(name, sizeof name, "ratios_%s.json", mtsp::to_string(baseline));
  const fs::path path = fs::path(out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed on " + path.string());

  for (const auto& e : table.entries)
    std::printf("m=%d n=%-3d %-11s median=%.6f d9=%.6f\n", e.m, e.n, mtsp::to_string(e.mechanism),
                e.median, e.ninth_decile);
  std::printf("table written to %s\n", path.string().c_str());
  return 0;
}

int cmd_report(const std::string& out_dir, const std::string& baseline_text) {
  const mtsp::Mechanism baseline = parse_baseline(baseline_text);
  const std::vector<mtsp::ResultRecord> records = mtsp::load_records(out_dir);
  if (records.empty()) throw std::invalid_argument("no result records under " + out_dir);
  const mtsp::RatioTable table = mtsp::ratios(records, baseline);
  const fs::path report_dir = fs::path(out_dir) / "report";
  mtsp::emit_report(table, report_dir.string());
  std::printf("report written under %s\n", report_dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTSP 1-1 exchange mechanism laboratory"};
  app.require_subcommand(1);

  std::string source;
  std::string out_dir = "out";
  std::string mech_text = "all";
  std::string m_text = "2,3";
  std::string n_text = "8..14";
  std::string shifts_text = "0..129";
  std::string baseline_text = "optdecentr";
  double limit_ms = 30000.0;
  double units_per_ms = 100000.0;
  bool deterministic = false;
  int jobs = 1;

  CLI::App* gen = app.add_subcommand("gen", "emit instance files");
  gen->add_option("--source", source, "TSPLIB-style city file")
      ->envname("MTSP_SOURCE")
      ->required();
  gen->add_option("--m", m_text, "salesman counts, e.g. 2,3")->envname("MTSP_M");
  gen->add_option("--n", n_text, "city counts, e.g. 8..14")->envname("MTSP_N");
  gen->add_option("--shifts", shifts_text, "instance shifts, e.g. 0..129")
      ->envname("MTSP_SHIFTS");
  gen->add_option("--out", out_dir, "output directory")->envname("MTSP_OUT");

  CLI::App* run = app.add_subcommand("run", "run a campaign");
  run->add_option("--source", source, "TSPLIB-style city file")
      ->envname("MTSP_SOURCE")
      ->required();
  run->add_option("--mechanisms", mech_text, "comma list or 'all'")->envname("MTSP_MECHANISMS");
  run->add_option("--m", m_text, "salesman counts")->envname("MTSP_M");
  run->add_option("--n", n_text, "city counts")->envname("MTSP_N");
  run->add_option("--shifts", shifts_text, "contiguous shift range a..b")
      ->envname("MTSP_SHIFTS");
  run->add_option("--limit-ms", limit_ms, "per-cell time limit, ms")->envname("MTSP_LIMIT_MS");
  run->add_option("--out", out_dir, "output directory")->envname("MTSP_OUT");
  run->add_flag("--deterministic-durations", deterministic,
                "charge solver work instead of wall clock")
      ->envname("MTSP_DETERMINISTIC_DURATIONS");
  run->add_option("--units-per-ms", units_per_ms,
                  "work units per millisecond in deterministic mode")
      ->envname("MTSP_UNITS_PER_MS");
  run->add_option("--jobs", jobs, "cells run concurrently")->envname("MTSP_JOBS");

  CLI::App* ratios_cmd = app.add_subcommand("ratios", "ratio table vs a baseline");
  ratios_cmd->add_option("--out", out_dir, "campaign directory")->envname("MTSP_OUT");
  ratios_cmd->add_option("--baseline", baseline_text, "optdecentr|fullcentr")
      ->envname("MTSP_BASELINE");

  CLI::App* report_cmd = app.add_subcommand("report", "CSV report from persisted records");
  report_cmd->add_option("--out", out_dir, "campaign directory")->envname("MTSP_OUT");
  report_cmd->add_option("--baseline", baseline_text, "optdecentr|fullcentr")
      ->envname("MTSP_BASELINE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(source, m_text, n_text, shifts_text, out_dir);
    if (run->parsed()) {
      mtsp::CampaignConfig cfg;
      cfg.source = source;
      cfg.mechanisms = parse_mechanisms(mech_text);
      cfg.m_values = parse_int_list(m_text);
      cfg.n_values = parse_int_list(n_text);
      const auto [first, last] = parse_shift_range(shifts_text);
      cfg.shift_first = first;
      cfg.shift_last = last;
      cfg.limit_ms = limit_ms;
      cfg.out_dir = out_dir;
      cfg.deterministic = deterministic;
      cfg.units_per_ms = units_per_ms;
      cfg.jobs = jobs;
      return cmd_run(cfg);
    }
    if (ratios_cmd->parsed()) return cmd_ratios(out_dir, baseline_text);
    if (report_cmd->parsed()) return cmd_report(out_dir, baseline_text);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const mtsp::TsplibError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
