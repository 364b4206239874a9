// Copyright 2026 The quac-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quac/cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "quac/common/config_hash.hpp"
#include "quac/common/error.hpp"
#include "quac/dram/config_io.hpp"
#include "quac/dram/device.hpp"
#include "quac/engine/engine.hpp"
#include "quac/engine/trace_io.hpp"
#include "quac/entropy/calibrate.hpp"
#include "quac/entropy/characterize.hpp"
#include "quac/entropy/sib_plan.hpp"
#include "quac/entropy/spatial.hpp"
#include "quac/perf/model.hpp"
#include "quac/stats/nist.hpp"
#include "quac/stats/population.hpp"
#include "quac/trng/bitstream_io.hpp"
#include "quac/trng/pipeline.hpp"
#include "quac/trng/rng_buffer.hpp"

#ifndef QUAC_DEFAULTS_PATH
#define QUAC_DEFAULTS_PATH "config/defaults.json"
#endif

namespace quac::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::string config_path;
  std::string defaults_path = QUAC_DEFAULTS_PATH;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> segments;
};

struct Context {
  dram::DeviceConfig device;
  perf::ModelParams model;
  perf::HashParams hash;
  entropy::CalibrationTargets targets;
  fs::path out_dir;
  std::uint64_t seed = 0;
  std::string device_hash;

  json stamp(const std::string& config_hash) const {
    return {{"tool_version", kToolVersion}, {"config_hash", config_hash}, {"seed", seed}};
  }
  json stamp() const { return stamp(device_hash); }
  std::string model_hash() const {
    return hash_json({{"timings", dram::to_json(device.timings)},
                      {"model", perf::to_json(model)},
                      {"hash", perf::to_json(hash)}});
  }
};

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
}

Context load_context(const GlobalOptions& g) {
  Context ctx;
  if (!g.defaults_path.empty() && fs::exists(g.defaults_path)) {
    const json defaults = read_json(g.defaults_path);
    if (defaults.contains("calibration")) ctx.targets = entropy::calibration_targets_from_json(defaults["calibration"]);
  }
  if (!g.config_path.empty()) {
    const json cfg = read_json(g.config_path);
    dram::apply_json(cfg, ctx.device);
    if (cfg.contains("model")) perf::apply_json(cfg["model"], ctx.model);
    if (cfg.contains("hash")) perf::apply_json(cfg["hash"], ctx.hash);
    if (cfg.contains("calibration")) ctx.targets = entropy::calibration_targets_from_json(cfg["calibration"]);
  }
  if (g.seed) ctx.device.variation.master_seed = *g.seed;
  if (g.segments) ctx.device.geometry.segments_per_bank = *g.segments;
  ctx.device.geometry.validate();
  ctx.device.timings.validate();
  ctx.device.variation.validate();
  ctx.seed = ctx.device.variation.master_seed;
  ctx.device_hash = dram::config_hash(ctx.device.geometry, ctx.device.timings, ctx.device.variation);

  if (!g.out_dir.empty()) {
    ctx.out_dir = g.out_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    ctx.out_dir = env;
  } else {
    ctx.out_dir = ".";
  }
  fs::create_directories(ctx.out_dir);
  return ctx;
}

std::shared_ptr<const dram::DeviceModel> make_model(const Context& ctx) {
  return std::make_shared<const dram::DeviceModel>(ctx.device.geometry, ctx.device.timings, ctx.device.variation);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path, const json& stamp) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << "# tool_version=" << stamp["tool_version"].get<std::string>()
      << " config_hash=" << stamp["config_hash"].get<std::string>() << " seed=" << stamp["seed"].get<std::uint64_t>()
      << '\n';
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<dram::DataPattern> parse_patterns(const std::string& text) {
  if (text == "all") return dram::DataPattern::all();
  std::vector<dram::DataPattern> out;
  for (const auto& p : split(text, ',')) out.push_back(dram::DataPattern::parse(p));
  if (out.empty()) throw ArgumentError("no patterns given");
  return out;
}

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : split(text, ',')) {
    try {
      out.push_back(std::stod(r));
    } catch (const std::exception&) {
      throw ArgumentError("bad transfer rate '" + r + "'");
    }
  }
  if (out.empty()) throw ArgumentError("no transfer rates given");
  return out;
}

std::vector<perf::Mode> parse_modes(const std::string& text, const std::vector<perf::Mode>& all) {
  if (text == "all") return all;
  std::vector<perf::Mode> out;
  for (const auto& m : split(text, ',')) out.push_back(perf::parse_mode(m));
  return out;
}

std::vector<entropy::BinSpec> parse_bins(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("bins must be low:high:count");
  try {
    return entropy::default_bins(std::stod(parts[0]), std::stod(parts[1]),
                                 static_cast<std::uint32_t>(std::stoul(parts[2])));
  } catch (const std::invalid_argument&) {
    throw ArgumentError("bins must be low:high:count");
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Segments [first, first + count) of bank `bank` in every bank group.
std::vector<dram::SegmentAddress> plan_segments(const dram::DeviceModel& model, std::uint32_t bank,
                                                std::uint32_t first, std::optional<std::uint32_t> count) {
  const auto& g = model.geometry();
  if (first >= g.segments_per_bank) throw ArgumentError("first segment out of range");
  const std::uint32_t n = count.value_or(g.segments_per_bank - first);
  std::vector<dram::SegmentAddress> out;
  for (std::uint32_t bg = 0; bg < g.bank_groups; ++bg) {
    const auto segs = entropy::bank_segments(model, bg, bank, first, n);
    out.insert(out.end(), segs.begin(), segs.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_device_build(const Context& ctx, std::ostream& out) {
  const auto model = make_model(ctx);
  json j = ctx.stamp();
  j["config"] = dram::to_json(ctx.device);
  j["fingerprint"] = model->fingerprint();
  const fs::path path = ctx.out_dir / "device.json";
  write_json(path, j);
  out << "device " << model->fingerprint() << " -> " << path.string() << '\n';
  return kExitOk;
}

struct CharacterizeArgs {
  std::string patterns = "0111";
  std::uint32_t trials = 1000;
  double temperature = 50.0;
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::uint32_t first = 0;
  std::optional<std::uint32_t> count;
  unsigned threads = default_threads();
  bool spatial = false;
  bool blocks = false;
};

int cmd_characterize(const Context& ctx, const CharacterizeArgs& a, std::ostream& out) {
  const auto model = make_model(ctx);
  const auto& g = model->geometry();
  if (a.first >= g.segments_per_bank) throw ArgumentError("first segment out of range");
  const auto segments =
      entropy::bank_segments(*model, a.bank_group, a.bank, a.first, a.count.value_or(g.segments_per_bank - a.first));
  entropy::CharacterizeOptions opts;
  opts.trials = a.trials;
  opts.temperature_c = a.temperature;
  opts.seed = ctx.seed;
  opts.threads = a.threads;

  std::vector<entropy::EntropyMap> maps;
  for (const auto& pattern : parse_patterns(a.patterns)) maps.push_back(entropy::characterize(*model, pattern, segments, opts));
  std::stable_sort(maps.begin(), maps.end(), [](const auto& x, const auto& y) {
    return x.average_block_entropy() > y.average_block_entropy();
  });

  const json stamp = ctx.stamp();
  {
    auto csv = open_csv(ctx.out_dir / "patterns.csv", stamp);
    csv << "pattern,average_block_entropy,mean_segment_entropy,max_segment_entropy\n" << std::setprecision(10);
    for (const auto& m : maps) {
      csv << m.pattern << ',' << m.average_block_entropy() << ',' << m.mean_segment_entropy() << ','
          << m.max_segment_entropy() << '\n';
    }
  }
  const auto& top = maps.front();
  {
    auto csv = open_csv(ctx.out_dir / ("segments_" + top.pattern + ".csv"), stamp);
    entropy::write_segment_csv(top, csv);
  }
  json mj = stamp;
  mj["map"] = entropy::to_json(top);
  write_json(ctx.out_dir / ("entropy_map_" + top.pattern + ".json"), mj);

  if (a.spatial || a.blocks) {
    const auto profile = entropy::spatial_profile(top);
    if (a.spatial) {
      json sj = stamp;
      sj["pattern"] = top.pattern;
      sj["segment_series"] = profile.segment_series;
      sj["period"] = profile.period ? json(*profile.period) : json(nullptr);
      sj["peak_lag"] = profile.peak_lag;
      sj["peak_autocorrelation"] = profile.peak_autocorrelation;
      sj["best_segment"] = profile.best_segment;
      write_json(ctx.out_dir / "spatial.json", sj);
      out << "spatial: peak autocorrelation " << profile.peak_autocorrelation << " at lag " << profile.peak_lag
          << (profile.period ? " (periodic)" : " (no dominant period)") << '\n';
    }
    if (a.blocks) {
      auto csv = open_csv(ctx.out_dir / "blocks.csv", stamp);
      csv << "block,best_segment_entropy,mean_entropy\n" << std::setprecision(10);
      for (std::size_t b = 0; b < profile.block_curve.size(); ++b) {
        csv << b << ',' << profile.block_curve[b] << ',' << profile.mean_block_curve[b] << '\n';
      }
    }
  }
  out << "top pattern " << top.pattern << ": average block entropy " << top.average_block_entropy()
      << ", max segment entropy " << top.max_segment_entropy() << '\n';
  return kExitOk;
}

struct PlanArgs {
  std::string pattern = "0111";
  std::uint32_t trials = 1000;
  std::string bins = "30:90:10";
  std::uint32_t bank = 0;
  std::uint32_t first = 0;
  std::optional<std::uint32_t> count = 256;
  unsigned threads = default_threads();
};

entropy::SibPlan build_plan(const dram::DeviceModel& model, const std::vector<entropy::BinSpec>& bins,
                            const dram::DataPattern& pattern, std::uint32_t trials, std::uint64_t seed,
                            unsigned threads, std::uint32_t bank, std::uint32_t first,
                            std::optional<std::uint32_t> count) {
  const auto segments = plan_segments(model, bank, first, count);
  std::vector<std::pair<entropy::BinSpec, entropy::EntropyMap>> per_bin;
  for (const auto& bin : bins) {
    entropy::CharacterizeOptions opts;
    opts.trials = trials;
    opts.temperature_c = 0.5 * (bin.low + bin.high);
    opts.seed = seed;
    opts.threads = threads;
    per_bin.emplace_back(bin, entropy::characterize(model, pattern, segments, opts));
  }
  return entropy::build_sib_plan(per_bin);
}

int cmd_plan(const Context& ctx, const PlanArgs& a, std::ostream& out) {
  const auto model = make_model(ctx);
  const auto plan = build_plan(*model, parse_bins(a.bins), dram::DataPattern::parse(a.pattern), a.trials, ctx.seed,
                               a.threads, a.bank, a.first, a.count);
  json j = ctx.stamp();
  j["plan"] = entropy::to_json(plan);
  const fs::path path = ctx.out_dir / "sib_plan.json";
  write_json(path, j);
  out << "SIB range " << plan.min_sib() << ".." << plan.max_sib() << " over " << plan.bins.size() << " bins -> "
      << path.string() << '\n';
  return kExitOk;
}

struct GenerateArgs {
  std::uint64_t bits = 0;
  std::string plan_path;
  double temperature = 50.0;
  std::string output = "bits.bin";
  bool ascii = false;
  std::string pattern = "0111";
  std::uint32_t trials = 1000;
  std::uint32_t plan_segments = 64;
  unsigned threads = default_threads();
};

int cmd_generate(const Context& ctx, const GenerateArgs& a, std::ostream& out) {
  const auto model = make_model(ctx);
  entropy::SibPlan plan;
  if (!a.plan_path.empty()) {
    const json j = read_json(a.plan_path);
    plan = entropy::sib_plan_from_json(j.contains("plan") ? j["plan"] : j);
  } else {
    plan = build_plan(*model, {{a.temperature, a.temperature + 1.0}}, dram::DataPattern::parse(a.pattern), a.trials,
                      ctx.seed, a.threads, 0, 0, a.plan_segments);
  }
  dram::Device device(model);
  device.set_temperature(a.temperature);
  trng::PipelineOptions opts;
  opts.seed = ctx.seed;
  opts.threads = a.threads;
  opts.pattern = dram::DataPattern::parse(a.pattern);
  trng::TrngPipeline pipeline(device, trng::make_layout(*model, plan.bin_for(a.temperature)), plan, opts);
  trng::RngBuffer buffer;
  const auto result = trng::stream(pipeline, a.temperature, a.bits, buffer);

  const fs::path path = ctx.out_dir / a.output;
  if (a.ascii) {
    trng::write_ascii(path, result.bits);
  } else {
    trng::write_binary(path, result.bits);
  }
  json j = ctx.stamp();
  j["output"] = path.filename().string();
  j["format"] = a.ascii ? "ascii" : "binary";
  j["bits"] = result.bits.size();
  j["temperature_c"] = a.temperature;
  j["iterations"] = pipeline.iterations();
  j["refills"] = result.refills;
  j["sib_per_bank"] = json::array();
  for (const auto& b : plan.bin_for(a.temperature).banks) j["sib_per_bank"].push_back(b.sib());
  write_json(ctx.out_dir / (path.filename().string() + ".json"), j);
  out << result.bits.size() << " bits in " << pipeline.iterations() << " iterations -> " << path.string() << '\n';
  return kExitOk;
}

struct TestArgs {
  std::string input;
  std::string format = "auto";
  std::size_t length = 1u << 20;
  std::optional<std::size_t> sequences;
  double alpha = 0.001;
  double alpha_pop = 0.005;
  unsigned threads = default_threads();
};

int cmd_test(const Context& ctx, const TestArgs& a, std::ostream& out) {
  const bool ascii = a.format == "ascii" || (a.format == "auto" && fs::path(a.input).extension() == ".txt");
  if (a.format != "auto" && a.format != "ascii" && a.format != "binary") throw ArgumentError("format must be auto, ascii or binary");
  const BitVector bits = ascii ? trng::read_ascii(a.input) : trng::read_binary(a.input);
  if (a.length == 0) throw ArgumentError("sequence length must be > 0");
  const std::size_t available = bits.size() / a.length;
  const std::size_t k = a.sequences.value_or(available);
  if (k == 0 || k > available) throw ArgumentError("input holds " + std::to_string(available) + " sequences of the requested length");

  std::vector<stats::TestReport> reports(k);
  {
    const unsigned workers = std::max(1u, std::min<unsigned>(a.threads, static_cast<unsigned>(k)));
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < k; i += workers) {
          reports[i] = stats::run_tests(std::span(bits).subspan(i * a.length, a.length), a.alpha);
        }
      });
    }
  }

  json j = ctx.stamp();
  j["input"] = fs::path(a.input).filename().string();
  j["sequence_length"] = a.length;
  j["sequences"] = json::array();
  for (const auto& r : reports) j["sequences"].push_back(stats::to_json(r));
  int passing = 0;
  for (const auto& r : reports) passing += r.all_passed() ? 1 : 0;
  if (k >= 2) {
    const auto verdict = stats::population_pass(reports, a.alpha_pop);
    j["population"] = stats::to_json(verdict);
    auto csv = open_csv(ctx.out_dir / "population.csv", ctx.stamp());
    stats::write_table_csv(verdict, csv);
    out << "population (" << k << " sequences): " << (verdict.passed ? "PASS" : "FAIL") << '\n';
  }
  write_json(ctx.out_dir / "stats.json", j);
  out << passing << "/" << k << " sequences passed every applicable test\n";
  return kExitOk;
}

struct ModelArgs {
  std::string mode = "RC+BGP";
  std::string baseline_modes = "all";
  std::string project_modes = "all";
  std::string rates = "1600,2400,3200,4800,12000";
  double rate = 2400.0;
  std::uint32_t sib = 7;
  double throughput = 3.44;
  double fraction = 0.7413;
  std::uint32_t channels = 4;
  perf::StorageParams storage;
};

int cmd_model_reports(const Context& ctx, const std::vector<perf::Mode>& modes, const ModelArgs& a,
                      const std::string& stem, std::ostream& out) {
  const auto t = ctx.device.timings.at_rate(a.rate);
  std::vector<perf::ScheduleReport> reports;
  for (auto m : modes) reports.push_back(perf::evaluate(m, t, a.sib, ctx.hash, ctx.model));
  const json stamp = ctx.stamp(ctx.model_hash());
  {
    auto csv = open_csv(ctx.out_dir / (stem + ".csv"), stamp);
    perf::write_reports_csv(csv, reports);
  }
  json j = stamp;
  j["reports"] = json::array();
  for (const auto& r : reports) {
    j["reports"].push_back(perf::to_json(r));
    out << perf::to_string(r.mode) << ": " << r.throughput_gbps << " Gb/s per channel ("
        << r.system_throughput_gbps() << " system), L " << r.iteration_ns << " ns, latency " << r.latency_ns
        << " ns" << (r.hash_bottleneck ? " [hash-bound]" : "") << '\n';
  }
  write_json(ctx.out_dir / (stem + ".json"), j);
  return kExitOk;
}

int cmd_model_project(const Context& ctx, const ModelArgs& a, std::ostream& out) {
  std::vector<perf::Mode> all = perf::quac_modes();
  for (auto m : perf::baseline_modes()) all.push_back(m);
  const auto proj = perf::project(parse_modes(a.project_modes, all), parse_rates(a.rates), ctx.device.timings, a.sib,
                                  ctx.hash, ctx.model);
  const json stamp = ctx.stamp(ctx.model_hash());
  {
    auto csv = open_csv(ctx.out_dir / "projection.csv", stamp);
    perf::write_projection_csv(csv, proj);
  }
  json j = stamp;
  j["projection"] = perf::to_json(proj);
  write_json(ctx.out_dir / "projection.json", j);
  for (double rate : proj.rates) {
    out << rate << " MT/s:";
    for (auto m : proj.modes) {
      if (m != proj.reference) out << ' ' << perf::to_string(m) << '=' << proj.ratio(rate, m) << 'x';
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_model_idle(const Context& ctx, const ModelArgs& a, std::ostream& out) {
  const double v = perf::idle_scaled_throughput(a.throughput, a.fraction, a.channels);
  json j = ctx.stamp(ctx.model_hash());
  j["throughput_gbps"] = a.throughput;
  j["idle_fraction"] = a.fraction;
  j["channels"] = a.channels;
  j["scaled_gbps"] = v;
  write_json(ctx.out_dir / "idle.json", j);
  out << v << " Gb/s\n";
  return kExitOk;
}

int cmd_model_storage(const Context& ctx, const ModelArgs& a, std::ostream& out) {
  const auto bits = perf::storage_bits(a.storage);
  json j = ctx.stamp(ctx.model_hash());
  j["row_addr_bits"] = a.storage.row_addr_bits;
  j["col_addr_bits"] = a.storage.col_addr_bits;
  j["temp_ranges"] = a.storage.temp_ranges;
  j["sib_max"] = a.storage.sib_max;
  j["bits"] = bits;
  write_json(ctx.out_dir / "storage.json", j);
  out << bits << " bits\n";
  return kExitOk;
}

int cmd_calibrate(const Context& ctx, std::ostream& out) {
  const auto result = entropy::calibrate(ctx.device, ctx.targets);
  json j = ctx.stamp();
  j["calibration"] = entropy::to_json(result);
  j["profile"] = dram::to_json(result.profile);
  const fs::path path = ctx.out_dir / "calibration.json";
  write_json(path, j);
  out << "best pattern " << result.best_block_entropy << ", worst pattern " << result.worst_block_entropy
      << ", max segment " << result.max_segment_entropy << " -> " << path.string() << '\n';
  return kExitOk;
}

int cmd_run_trace(const Context& ctx, const std::string& trace, std::ostream& out) {
  const auto commands = engine::load_trace(trace);
  dram::Device device(make_model(ctx));
  const auto result = engine::execute_trace(device, commands, ctx.seed);
  json j = ctx.stamp();
  j["trace"] = trace;
  j["result"] = engine::to_json(result);
  const fs::path path = ctx.out_dir / "trace_result.json";
  write_json(path, j);
  out << commands.size() << " commands -> " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DRAM quadruple-activation TRNG simulator", "quac"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Device/model configuration JSON")->check(CLI::ExistingFile);
  app.add_option("--defaults", g.defaults_path, "Defaults file holding calibration targets");
  app.add_option("--out", g.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  app.add_option("--seed", g.seed, "Master seed override");
  app.add_option("--segments", g.segments, "Segments per bank override (reduced devices)")->check(CLI::PositiveNumber);

  auto* device = app.add_subcommand("device", "Device configuration");
  device->require_subcommand(1);
  auto* device_build = device->add_subcommand("build", "Validate the configuration and write device.json");

  CharacterizeArgs ca;
  auto* characterize = app.add_subcommand("characterize", "Entropy characterization of one bank");
  characterize->add_option("--patterns", ca.patterns, "'all' or comma-separated 4-bit patterns");
  characterize->add_option("--trials", ca.trials)->check(CLI::PositiveNumber);
  characterize->add_option("--temperature", ca.temperature);
  characterize->add_option("--bank-group", ca.bank_group);
  characterize->add_option("--bank", ca.bank);
  characterize->add_option("--first", ca.first, "First segment index");
  characterize->add_option("--count", ca.count, "Number of segments (default: rest of bank)")->check(CLI::PositiveNumber);
  characterize->add_option("--threads", ca.threads)->check(CLI::PositiveNumber);
  characterize->add_flag("--spatial", ca.spatial, "Write the segment series and its dominant period");
  characterize->add_flag("--blocks", ca.blocks, "Write per-cache-block entropy curves");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Build a SIB plan over temperature bins");
  plan->add_option("--pattern", pa.pattern);
  plan->add_option("--trials", pa.trials)->check(CLI::PositiveNumber);
  plan->add_option("--bins", pa.bins, "low:high:count");
  plan->add_option("--bank", pa.bank, "Bank index used in every bank group");
  plan->add_option("--first", pa.first);
  plan->add_option("--count", pa.count, "Segments per bank to characterize")->check(CLI::PositiveNumber);
  plan->add_option("--threads", pa.threads)->check(CLI::PositiveNumber);

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate random bits through the TRNG pipeline");
  generate->add_option("--bits", ga.bits)->required()->check(CLI::PositiveNumber);
  generate->add_option("--plan", ga.plan_path, "SIB plan JSON (default: plan a few segments on the fly)")
      ->check(CLI::ExistingFile);
  generate->add_option("--temperature", ga.temperature);
  generate->add_option("--output", ga.output, "File name inside the output directory");
  generate->add_flag("--ascii", ga.ascii, "Write '0'/'1' text instead of packed binary");
  generate->add_option("--pattern", ga.pattern);
  generate->add_option("--trials", ga.trials)->check(CLI::PositiveNumber);
  generate->add_option("--plan-segments", ga.plan_segments)->check(CLI::PositiveNumber);
  generate->add_option("--threads", ga.threads)->check(CLI::PositiveNumber);

  TestArgs ta;
  auto* test = app.add_subcommand("test", "Run the statistical test subset and population verdict");
  test->add_option("--input", ta.input)->required()->check(CLI::ExistingFile);
  test->add_option("--format", ta.format, "auto, binary or ascii");
  test->add_option("--length", ta.length, "Bits per sequence")->check(CLI::PositiveNumber);
  test->add_option("--sequences", ta.sequences)->check(CLI::PositiveNumber);
  test->add_option("--alpha", ta.alpha);
  test->add_option("--alpha-pop", ta.alpha_pop);
  test->add_option("--threads", ta.threads)->check(CLI::PositiveNumber);

  ModelArgs ma;
  auto* model = app.add_subcommand("model", "Performance model");
  model->require_subcommand(1);
  auto* schedule = model->add_subcommand("schedule", "QUAC schedule reports");
  schedule->add_option("--mode", ma.mode, "OneBank, BGP, RC+BGP or all");
  schedule->add_option("--rate", ma.rate, "MT/s")->check(CLI::PositiveNumber);
  schedule->add_option("--sib", ma.sib)->check(CLI::PositiveNumber);
  auto* baseline = model->add_subcommand("baseline", "Baseline TRNG reports");
  baseline->add_option("--mode", ma.baseline_modes, "Baseline name(s) or all");
  baseline->add_option("--rate", ma.rate, "MT/s")->check(CLI::PositiveNumber);
  auto* project = model->add_subcommand("project", "Throughput projection over transfer rates");
  project->add_option("--rates", ma.rates, "Comma-separated MT/s");
  project->add_option("--modes", ma.project_modes);
  project->add_option("--sib", ma.sib)->check(CLI::PositiveNumber);
  auto* idle = model->add_subcommand("idle", "Throughput scaled by the idle-bandwidth fraction");
  idle->add_option("--throughput", ma.throughput, "Gb/s per channel");
  idle->add_option("--fraction", ma.fraction);
  idle->add_option("--channels", ma.channels)->check(CLI::PositiveNumber);
  auto* storage = model->add_subcommand("storage", "Controller storage budget in bits");
  storage->add_option("--row-bits", ma.storage.row_addr_bits);
  storage->add_option("--col-bits", ma.storage.col_addr_bits);
  storage->add_option("--ranges", ma.storage.temp_ranges);
  storage->add_option("--sib-max", ma.storage.sib_max);

  auto* calibrate = app.add_subcommand("calibrate", "Fit variation scalars to the entropy targets");

  std::string trace_path;
  auto* run_trace = app.add_subcommand("run-trace", "Execute a command trace");
  run_trace->add_option("--trace", trace_path)->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Context ctx = load_context(g);
    if (*device_build) return cmd_device_build(ctx, out);
    if (*characterize) return cmd_characterize(ctx, ca, out);
    if (*plan) return cmd_plan(ctx, pa, out);
    if (*generate) return cmd_generate(ctx, ga, out);
    if (*test) return cmd_test(ctx, ta, out);
    if (*schedule) {
      return cmd_model_reports(ctx, parse_modes(ma.mode, perf::quac_modes()), ma, "schedule", out);
    }
    if (*baseline) {
      return cmd_model_reports(ctx, parse_modes(ma.baseline_modes, perf::baseline_modes()), ma, "baselines", out);
    }
    if (*project) return cmd_model_project(ctx, ma, out);
    if (*idle) return cmd_model_idle(ctx, ma, out);
    if (*storage) return cmd_model_storage(ctx, ma, out);
    if (*calibrate) return cmd_calibrate(ctx, out);
    if (*run_trace) return cmd_run_trace(ctx, trace_path, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace quac::cli
