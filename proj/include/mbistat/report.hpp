#pragma once

#include "mbistat/descriptive.hpp"
#include "mbistat/effects.hpp"
#include "mbistat/mbi.hpp"
#include "mbistat/simulate.hpp"

#include <string>
#include <vector>

namespace mbistat::report {

// Echo of the options that produced a bundle, so every artifact is
// reproducible from its own header.
struct ReportMetadata {
  double ci_level = 0.90;
  double swc = 0.20; // standardized units
  std::string variance_model = "welch";
  bool use_log_scale = false;
  std::string locale = "en";
  double unclear_positive = 0.05;
  double unclear_negative = 0.05;
  std::string standardizer = "pooled sd";
  std::string log_base = "natural"; // percent back-transform is exact
  std::string notes;                 // free-form, e.g. effect-size CI method

  std::string to_line() const; // single "key=value ..." line
};

struct ComparisonEntry {
  std::string name;
  effects::ComparisonResult result;
  mbi::MbiInference inference;
};

struct ReportBundle {
  std::vector<ComparisonEntry> comparisons;
  mbi::MagnitudeScale scale;
  mbi::DescriptorLadder ladder;
  ReportMetadata metadata;

  void validate() const; // nonempty, unique comparison names

  // Fully resolved options echo, scale and ladder included, embedded in
  // rendered artifacts and printed by the CLI.
  std::string config_line() const;
};

enum class TableFormat { markdown, csv };

// Six-column summary table: variable, both group summaries as mean±sd,
// "diff; ±half-width", "%diff; ±%half-width" (blank off the log scale),
// "effect size (low to high)". Values rounded once, here.
std::string render_table(const ReportBundle& bundle, TableFormat format);

struct RenderOptions {
  double width = 900.0;
  double row_height = 60.0;
  double margin = 60.0; // top and bottom
  double font_px = 12.0;
};

// Forest plot on the standardized-effect axis with shaded magnitude bands,
// one row per comparison, chance/descriptor annotation in the right margin.
std::string render_forest_svg(const ReportBundle& bundle,
                              const RenderOptions& options = {});

// Replication-run plot: one CI bar per experiment, reference line at the
// true population difference, significance glyph per row.
std::string render_dance_svg(const simulate::DanceResult& result,
                             const simulate::DanceConfig& cfg,
                             const RenderOptions& options = {});

// Individual observations per group (index-jittered columns) with an
// overlaid mean +/- CI whisker.
std::string render_individuals_svg(const std::vector<descriptive::Sample>& samples,
                                   double ci_level = 0.95,
                                   const RenderOptions& options = {});

// Machine-readable mirror of the bundle (full precision; the table is the
// rounded view).
std::string render_json(const ReportBundle& bundle);
ReportBundle parse_bundle_json(const std::string& text);

// Dance result serialization: CSV (one row per experiment) and JSON
// (config + records + summary, re-renderable by `plot`).
std::string dance_csv(const simulate::DanceResult& result);
std::string dance_json(const simulate::DanceResult& result,
                       const simulate::DanceConfig& cfg);
std::pair<simulate::DanceResult, simulate::DanceConfig>
parse_dance_json(const std::string& text);

// Formatting helpers shared with the CLI (rounding happens exactly once).
std::string format_fixed2(double x);       // "%.2f", "-0.00" collapsed to "0.00"
std::string format_pct_2sig(double chance); // chance -> percentage, 2 sig figs

} // namespace mbistat::report
