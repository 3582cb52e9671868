// Command-line front door: ingest CSV data, run comparisons / MBI /
// replication simulations, emit tables, SVG plots and JSON bundles.
//
// Exit codes: 0 success, 2 input or usage error, 3 statistical degeneracy,
// 4 internal numeric failure.

#include "mbistat/effects.hpp"
#include "mbistat/errors.hpp"
#include "mbistat/io.hpp"
#include "mbistat/mbi.hpp"
#include "mbistat/report.hpp"
#include "mbistat/simulate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mbistat;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNumeric = 4;

struct AnalysisOptions {
  double ci_level = 0.90;
  double swc = 0.20;
  std::string variance = "welch";
  bool use_log = false;
  std::string locale = "en";
  double unclear_positive = 0.05;
  double unclear_negative = 0.05;
  std::string scale_thresholds = "0.2,0.6,1.2,2.0";
  std::string scale_labels = "trivial,small,moderate,large,very large";
  std::string ladder_boundaries = "0.005,0.05,0.25,0.75,0.95,0.985";
  std::string ladder_words =
      "most unlikely,very unlikely,unlikely,possibly,likely,very likely,"
      "almost certainly";
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> split_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& item : split_list(s)) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error(std::string("bad number \"") + item + "\" in " + what);
    }
  }
  return out;
}

// Config file support: `key = value` lines whose keys mirror the flag names.
// A key only applies when its flag was not given on the command line.
struct ConfigBindings {
  std::map<std::string, std::function<void(const std::string&)>> setters;

  void bind_string(const std::string& key, std::string& target) {
    setters[key] = [&target](const std::string& v) { target = v; };
  }
  void bind_double(const std::string& key, double& target) {
    setters[key] = [key, &target](const std::string& v) {
      try {
        std::size_t pos = 0;
        target = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw input_error("config key " + key + " needs a number, got \"" + v + "\"");
      }
    };
  }
  void bind_count(const std::string& key, std::size_t& target) {
    setters[key] = [key, &target](const std::string& v) {
      try {
        std::size_t pos = 0;
        const unsigned long long n = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        target = static_cast<std::size_t>(n);
      } catch (const std::exception&) {
        throw input_error("config key " + key + " needs a count, got \"" + v + "\"");
      }
    };
  }
  void bind_bool(const std::string& key, bool& target) {
    setters[key] = [key, &target](const std::string& v) {
      if (v == "true" || v == "1") target = true;
      else if (v == "false" || v == "0") target = false;
      else throw input_error("config key " + key + " needs true or false, got \"" + v + "\"");
    };
  }
};

void apply_config(const CLI::App* cmd, const std::string& path,
                  const ConfigBindings& bindings) {
  if (path.empty()) return;
  for (const auto& [key, value] :
       io::parse_key_value_config(io::read_file(path))) {
    const auto it = bindings.setters.find(key);
    if (it == bindings.setters.end())
      throw input_error("unknown config key \"" + key + "\" in " + path);
    const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt != nullptr && opt->count() > 0) continue; // flags win
    it->second(value);
  }
}

struct ResolvedAnalysis {
  effects::ComparisonConfig comparison;
  mbi::Swc swc;
  mbi::MagnitudeScale scale;
  mbi::DescriptorLadder ladder;
  mbi::UnclearThresholds unclear;
  mbi::Locale locale = mbi::Locale::en;
  std::string locale_name = "en";
};

ResolvedAnalysis resolve(const AnalysisOptions& raw) {
  ResolvedAnalysis r;
  if (!(raw.ci_level > 0.5 && raw.ci_level < 1.0))
    throw input_error("--ci must be in (0.5, 1)");
  r.comparison.ci_level = raw.ci_level;
  if (raw.variance == "welch")
    r.comparison.variance_model = effects::VarianceModel::welch;
  else if (raw.variance == "pooled")
    r.comparison.variance_model = effects::VarianceModel::pooled;
  else
    throw input_error("--variance must be welch or pooled");
  r.comparison.use_log_scale = raw.use_log;
  if (!(raw.swc > 0.0)) throw input_error("--swc must be positive");
  r.swc.value = raw.swc;
  r.scale.thresholds = split_doubles(raw.scale_thresholds, "--scale-thresholds");
  r.scale.labels = split_list(raw.scale_labels);
  r.ladder.boundaries = split_doubles(raw.ladder_boundaries, "--ladder-boundaries");
  r.ladder.words = split_list(raw.ladder_words);
  if (!(raw.unclear_positive > 0.0 && raw.unclear_positive < 1.0) ||
      !(raw.unclear_negative > 0.0 && raw.unclear_negative < 1.0))
    throw input_error("--unclear thresholds must be in (0,1)");
  r.unclear.positive = raw.unclear_positive;
  r.unclear.negative = raw.unclear_negative;
  if (raw.locale == "en")
    r.locale = mbi::Locale::en;
  else if (raw.locale == "pt")
    r.locale = mbi::Locale::pt;
  else
    throw input_error("--locale must be en or pt");
  r.locale_name = raw.locale;
  try {
    r.scale.validate();
    r.ladder.validate();
  } catch (const std::domain_error& e) {
    throw input_error(e.what());
  }
  return r;
}

// MBI on the raw-difference scale: the standardized SWC converts through the
// comparison's own standardizer. Degenerate spreads fall back to the exact
// point verdict instead of a division by zero.
mbi::MbiInference run_inference(const effects::ComparisonResult& cmp,
                                const ResolvedAnalysis& opts) {
  const double swc_raw = opts.swc.value * cmp.standardizer;
  mbi::ChanceTriplet chances;
  if (cmp.se > 0.0 && swc_raw > 0.0) {
    chances = mbi::mbi_chances(cmp.diff, cmp.se, cmp.df, mbi::Swc{swc_raw});
  } else {
    chances.positive = cmp.diff > swc_raw ? 1.0 : 0.0;
    chances.negative = cmp.diff < -swc_raw ? 1.0 : 0.0;
    chances.trivial = 1.0 - chances.positive - chances.negative;
  }
  mbi::MbiInference inf;
  inf.chances = chances;
  const auto label =
      mbi::qualitative_label(chances, opts.ladder, opts.unclear, opts.locale);
  inf.descriptor = label.descriptor;
  inf.direction = label.direction;
  inf.magnitude_label = mbi::classify_magnitude(cmp.effect_size, opts.scale);
  return inf;
}

report::ReportBundle make_bundle(const std::string& name,
                                 const effects::ComparisonResult& cmp,
                                 const ResolvedAnalysis& opts) {
  report::ReportBundle bundle;
  report::ComparisonEntry entry;
  entry.name = name;
  entry.result = cmp;
  entry.inference = run_inference(cmp, opts);
  bundle.comparisons.push_back(std::move(entry));
  bundle.scale = opts.scale;
  bundle.ladder = opts.ladder;
  bundle.metadata.ci_level = opts.comparison.ci_level;
  bundle.metadata.swc = opts.swc.value;
  bundle.metadata.variance_model = cmp.variance_model_name;
  bundle.metadata.use_log_scale = opts.comparison.use_log_scale;
  bundle.metadata.locale = opts.locale_name;
  bundle.metadata.unclear_positive = opts.unclear.positive;
  bundle.metadata.unclear_negative = opts.unclear.negative;
  bundle.metadata.standardizer = cmp.standardizer_name;
  std::ostringstream notes;
  notes << (cmp.variance_model_name == "paired" ? "es_ci=diff_ci/standardizer"
                                                : "es_ci=normal_approx")
        << " swc_raw=" << opts.swc.value * cmp.standardizer;
  bundle.metadata.notes = notes.str();
  return bundle;
}

struct OutputOptions {
  std::string format = "md"; // stdout payload
  std::string output_path;   // payload to file instead of stdout
  std::string svg_path;      // extra artifacts
  std::string json_path;
  std::string individuals_path; // per-observation plot
};

std::string bundle_payload(const report::ReportBundle& bundle,
                           const std::string& format) {
  if (format == "md") return report::render_table(bundle, report::TableFormat::markdown);
  if (format == "csv") return report::render_table(bundle, report::TableFormat::csv);
  if (format == "json") return report::render_json(bundle);
  if (format == "svg") return report::render_forest_svg(bundle);
  throw input_error("--format must be md, csv, json or svg");
}

// Stdout mode and file mode carry identical payload bytes.
void emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty())
    std::fwrite(payload.data(), 1, payload.size(), stdout);
  else
    io::write_file(output_path, payload);
}

void emit_bundle(const report::ReportBundle& bundle, const OutputOptions& out) {
  emit(bundle_payload(bundle, out.format), out.output_path);
  if (!out.svg_path.empty())
    io::write_file(out.svg_path, report::render_forest_svg(bundle));
  if (!out.json_path.empty())
    io::write_file(out.json_path, report::render_json(bundle));
  std::cerr << "resolved: " << bundle.config_line() << "\n";
}

void add_analysis_flags(CLI::App* cmd, AnalysisOptions& opts,
                        std::string& config_path, ConfigBindings& bindings) {
  cmd->add_option("--config", config_path,
                  "Key=value config file mirroring these flags");
  bindings.bind_double("ci", opts.ci_level);
  bindings.bind_double("swc", opts.swc);
  bindings.bind_string("variance", opts.variance);
  bindings.bind_bool("log", opts.use_log);
  bindings.bind_string("locale", opts.locale);
  bindings.bind_double("unclear-positive", opts.unclear_positive);
  bindings.bind_double("unclear-negative", opts.unclear_negative);
  bindings.bind_string("scale-thresholds", opts.scale_thresholds);
  bindings.bind_string("scale-labels", opts.scale_labels);
  bindings.bind_string("ladder-boundaries", opts.ladder_boundaries);
  bindings.bind_string("ladder-words", opts.ladder_words);
  cmd->add_option("--ci", opts.ci_level, "Confidence level, e.g. 0.90 or 0.95");
  cmd->add_option("--swc", opts.swc,
                  "Smallest worthwhile change in standardized units");
  cmd->add_option("--variance", opts.variance, "welch or pooled");
  cmd->add_flag("--log", opts.use_log,
                "Analyse on the natural-log scale and report percent effects");
  cmd->add_option("--locale", opts.locale, "Descriptor language: en or pt");
  cmd->add_option("--unclear-positive", opts.unclear_positive,
                  "Benefit-chance threshold of the unclear rule");
  cmd->add_option("--unclear-negative", opts.unclear_negative,
                  "Harm-chance threshold of the unclear rule");
  cmd->add_option("--scale-thresholds", opts.scale_thresholds,
                  "Comma-separated magnitude thresholds");
  cmd->add_option("--scale-labels", opts.scale_labels,
                  "Comma-separated magnitude labels (thresholds + 1)");
  cmd->add_option("--ladder-boundaries", opts.ladder_boundaries,
                  "Comma-separated descriptor-chance boundaries");
  cmd->add_option("--ladder-words", opts.ladder_words,
                  "Comma-separated descriptor words (boundaries + 1)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format,--out", out.format, "Stdout payload: md, csv, json or svg");
  cmd->add_option("--output", out.output_path, "Write the stdout payload to this file");
  cmd->add_option("--svg", out.svg_path, "Also write a forest-plot SVG here");
  cmd->add_option("--json", out.json_path, "Also write the JSON bundle here");
  cmd->add_option("--individuals", out.individuals_path,
                  "Also write a per-observation SVG here");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"magnitude-based inference toolkit"};
  app.require_subcommand(1);

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Two independent groups: effects, MBI chances, report");
  AnalysisOptions compare_opts;
  OutputOptions compare_out;
  ConfigBindings compare_bindings;
  std::string compare_config;
  std::string file_a, file_b, file_long;
  compare->add_option("--a", file_a, "Single-column CSV of group 1");
  compare->add_option("--b", file_b, "Single-column CSV of group 2");
  compare->add_option("--csv", file_long, "Long-format CSV: group,value");
  add_analysis_flags(compare, compare_opts, compare_config, compare_bindings);
  add_output_flags(compare, compare_out);

  // paired
  auto* paired = app.add_subcommand(
      "paired", "Pre/post pairs: effects, MBI chances, report");
  AnalysisOptions paired_opts;
  OutputOptions paired_out;
  ConfigBindings paired_bindings;
  std::string paired_config;
  std::string paired_csv;
  std::string standardizer = "baseline-sd";
  paired->add_option("--csv", paired_csv, "CSV with pre,post columns")->required();
  paired->add_option("--standardizer", standardizer, "baseline-sd or diff-sd");
  add_analysis_flags(paired, paired_opts, paired_config, paired_bindings);
  add_output_flags(paired, paired_out);
  paired_bindings.bind_string("standardizer", standardizer);

  // dance
  auto* dance = app.add_subcommand(
      "dance", "Seeded replication study of one two-group experiment");
  simulate::DanceConfig dance_cfg;
  bool dance_welch = false;
  bool dance_summary = false;
  std::string dance_format = "csv";
  std::string dance_output, dance_svg, dance_csv_path, dance_json_path;
  ConfigBindings dance_bindings;
  std::string dance_config;
  dance->add_option("--config", dance_config,
                    "Key=value config file mirroring these flags");
  dance_bindings.bind_count("experiments", dance_cfg.n_experiments);
  dance_bindings.bind_count("n", dance_cfg.n_per_group);
  dance_bindings.bind_double("sigma", dance_cfg.sigma);
  dance_bindings.bind_double("delta", dance_cfg.delta_mu);
  dance_bindings.bind_double("alpha", dance_cfg.alpha);
  dance_bindings.bind_double("ci", dance_cfg.ci_level);
  dance_bindings.bind_bool("welch", dance_welch);
  dance->add_option("--experiments", dance_cfg.n_experiments, "Number of replications");
  dance->add_option("--n", dance_cfg.n_per_group, "Observations per group");
  dance->add_option("--sigma", dance_cfg.sigma, "Population standard deviation");
  dance->add_option("--delta", dance_cfg.delta_mu, "True difference of population means");
  dance->add_option("--alpha", dance_cfg.alpha, "Significance level");
  dance->add_option("--ci", dance_cfg.ci_level, "Confidence level of the per-run interval");
  dance->add_option("--seed", dance_cfg.seed, "64-bit seed (required; no silent clock seeding)")
      ->required();
  dance->add_flag("--welch", dance_welch, "Welch t test instead of pooled");
  dance->add_flag("--summary", dance_summary, "Print summary counts instead of records");
  dance->add_option("--format,--out", dance_format, "Stdout payload: csv or json");
  dance->add_option("--output", dance_output, "Write the stdout payload to this file");
  dance->add_option("--svg", dance_svg, "Write the replication plot here");
  dance->add_option("--csv", dance_csv_path, "Write the per-experiment CSV here");
  dance->add_option("--json", dance_json_path, "Write the JSON result here");

  // plot
  auto* plot = app.add_subcommand("plot", "Re-render a saved JSON artifact");
  std::string plot_json, plot_format = "svg", plot_output;
  plot->add_option("--json", plot_json, "Saved report_bundle or dance_result JSON")
      ->required();
  plot->add_option("--format,--out", plot_format, "svg, md or csv");
  plot->add_option("--output", plot_output, "Write the payload to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Prints help for --help, the diagnostic otherwise.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (compare->parsed()) {
    apply_config(compare, compare_config, compare_bindings);
    const bool two_files = !file_a.empty() || !file_b.empty();
    const bool long_file = !file_long.empty();
    if (two_files == long_file)
      throw input_error("compare needs either --a and --b, or --csv");
    if (two_files && (file_a.empty() || file_b.empty()))
      throw input_error("compare needs both --a and --b");
    const ResolvedAnalysis opts = resolve(compare_opts);
    descriptive::Sample a, b;
    if (two_files) {
      a = io::read_single_column_csv(file_a, "group 1");
      b = io::read_single_column_csv(file_b, "group 2");
    } else {
      auto both = io::read_long_csv(file_long);
      a = std::move(both.first);
      b = std::move(both.second);
    }
    const auto cmp = effects::compare_independent(a, b, opts.comparison);
    const auto bundle =
        make_bundle(a.label() + " vs " + b.label(), cmp, opts);
    if (!compare_out.individuals_path.empty())
      io::write_file(compare_out.individuals_path,
                     report::render_individuals_svg({a, b}, opts.comparison.ci_level));
    emit_bundle(bundle, compare_out);
    return kExitOk;
  }

  if (paired->parsed()) {
    apply_config(paired, paired_config, paired_bindings);
    ResolvedAnalysis opts = resolve(paired_opts);
    if (standardizer == "baseline-sd")
      opts.comparison.paired_standardizer = effects::PairedStandardizer::baseline_sd;
    else if (standardizer == "diff-sd")
      opts.comparison.paired_standardizer = effects::PairedStandardizer::diff_sd;
    else
      throw input_error("--standardizer must be baseline-sd or diff-sd");
    auto both = io::read_paired_csv(paired_csv);
    const auto cmp = effects::compare_paired(both.first, both.second, opts.comparison);
    const auto bundle = make_bundle("post vs pre", cmp, opts);
    if (!paired_out.individuals_path.empty())
      io::write_file(paired_out.individuals_path,
                     report::render_individuals_svg({both.first, both.second},
                                                    opts.comparison.ci_level));
    emit_bundle(bundle, paired_out);
    return kExitOk;
  }

  if (dance->parsed()) {
    apply_config(dance, dance_config, dance_bindings);
    dance_cfg.variance_model = dance_welch ? effects::VarianceModel::welch
                                           : effects::VarianceModel::pooled;
    try {
      dance_cfg.validate();
    } catch (const std::domain_error& e) {
      throw input_error(e.what());
    }
    const auto result = simulate::run_dance(dance_cfg);

    std::string payload;
    if (dance_summary) {
      std::ostringstream s;
      s << "experiments=" << result.records.size()
        << " count_significant=" << result.summary.count_significant
        << " significant_fraction="
        << static_cast<double>(result.summary.count_significant) /
               static_cast<double>(result.records.size())
        << " ci_capture_count=" << result.summary.ci_capture_count
        << " capture_rate="
        << static_cast<double>(result.summary.ci_capture_count) /
               static_cast<double>(result.records.size())
        << " mean_diff=" << result.summary.mean_diff_of_diffs << "\n";
      payload = s.str();
    } else if (dance_format == "csv") {
      payload = report::dance_csv(result);
    } else if (dance_format == "json") {
      payload = report::dance_json(result, dance_cfg);
    } else {
      throw input_error("dance --format must be csv or json");
    }
    emit(payload, dance_output);
    if (!dance_svg.empty())
      io::write_file(dance_svg, report::render_dance_svg(result, dance_cfg));
    if (!dance_csv_path.empty())
      io::write_file(dance_csv_path, report::dance_csv(result));
    if (!dance_json_path.empty())
      io::write_file(dance_json_path, report::dance_json(result, dance_cfg));
    std::cerr << "resolved: experiments=" << dance_cfg.n_experiments
              << " n_per_group=" << dance_cfg.n_per_group
              << " sigma=" << dance_cfg.sigma << " delta_mu=" << dance_cfg.delta_mu
              << " alpha=" << dance_cfg.alpha << " ci_level=" << dance_cfg.ci_level
              << " seed=" << dance_cfg.seed << " variance_model="
              << (dance_welch ? "welch" : "pooled") << "\n";
    return kExitOk;
  }

  if (plot->parsed()) {
    const std::string text = io::read_file(plot_json);
    std::string payload;
    if (text.find("\"report_bundle\"") != std::string::npos) {
      const auto bundle = report::parse_bundle_json(text);
      payload = bundle_payload(bundle, plot_format);
    } else {
      auto [result, cfg] = report::parse_dance_json(text);
      if (plot_format == "svg")
        payload = report::render_dance_svg(result, cfg);
      else if (plot_format == "csv")
        payload = report::dance_csv(result);
      else
        throw input_error("dance artifacts re-render as svg or csv only");
    }
    emit(payload, plot_output);
    std::cerr << "resolved: source=" << plot_json << " format=" << plot_format
              << "\n";
    return kExitOk;
  }

  throw input_error("no subcommand selected");
}

} // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const input_error& e) {
    std::cerr << "mbistat: " << e.what() << "\n";
    return kExitInput;
  } catch (const degenerate_data_error& e) {
    std::cerr << "mbistat: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const numeric_error& e) {
    std::cerr << "mbistat: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "mbistat: internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
