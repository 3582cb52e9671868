#include "mbistat/report.hpp"

#include "mbistat/errors.hpp"
#include "mbistat/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mbistat::report {

using nlohmann::json;

namespace {

// Shortest decimal form that parses back to the same double.
std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

// Pixel coordinates with two decimals; enough for byte-stable geometry.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

// Affine, order-preserving data-to-pixel map.
struct AxisMap {
  double d0, d1; // data range, d0 < d1
  double p0, p1; // pixel range
  double operator()(double v) const {
    return p0 + (v - d0) / (d1 - d0) * (p1 - p0);
  }
};

struct SvgWriter {
  std::ostringstream out;

  void open(double width, double height, const std::string& metadata_line) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << px(width) << "\" height=\"" << px(height) << "\" viewBox=\"0 0 "
        << px(width) << " " << px(height) << "\">\n";
    if (!metadata_line.empty())
      out << "<metadata>" << xml_escape(metadata_line) << "</metadata>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\" fill=\"white\"/>\n";
  }
  void line(const std::string& cls, double x1, double y1, double x2, double y2,
            const std::string& style) {
    out << "<line class=\"" << cls << "\" x1=\"" << px(x1) << "\" y1=\""
        << px(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << px(y2) << "\" "
        << style << "/>\n";
  }
  void circle(const std::string& cls, double cx, double cy, double r,
              const std::string& style) {
    out << "<circle class=\"" << cls << "\" cx=\"" << px(cx) << "\" cy=\""
        << px(cy) << "\" r=\"" << px(r) << "\" " << style << "/>\n";
  }
  void rect(const std::string& cls, double x, double y, double w, double h,
            const std::string& style) {
    out << "<rect class=\"" << cls << "\" x=\"" << px(x) << "\" y=\"" << px(y)
        << "\" width=\"" << px(w) << "\" height=\"" << px(h) << "\" " << style
        << "/>\n";
  }
  void text(const std::string& cls, double x, double y, const std::string& s,
            double font_px, const std::string& extra = "") {
    out << "<text class=\"" << cls << "\" x=\"" << px(x) << "\" y=\"" << px(y)
        << "\" font-family=\"sans-serif\" font-size=\"" << px(font_px) << "\" "
        << extra << ">" << xml_escape(s) << "</text>\n";
  }
  std::string close() {
    out << "</svg>\n";
    return out.str();
  }
};

std::string summary_cell(const effects::SampleSummary& s) {
  return format_fixed2(s.mean) + "±" + format_fixed2(s.sd);
}

std::vector<std::string> table_row_cells(const ComparisonEntry& e) {
  const auto& r = e.result;
  std::vector<std::string> cells;
  cells.push_back(e.name);
  cells.push_back(summary_cell(r.group_a));
  cells.push_back(summary_cell(r.group_b));
  cells.push_back(format_fixed2(r.diff) + "; ±" +
                  format_fixed2(0.5 * (r.ci_high - r.ci_low)));
  if (r.pct_diff.has_value()) {
    cells.push_back(format_fixed2(*r.pct_diff) + "%; ±" +
                    format_fixed2(0.5 * (*r.pct_ci_high - *r.pct_ci_low)) + "%");
  } else {
    cells.push_back("");
  }
  cells.push_back(format_fixed2(r.effect_size) + " (" +
                  format_fixed2(r.es_ci_low) + " to " +
                  format_fixed2(r.es_ci_high) + ")");
  return cells;
}

const std::vector<std::string>& table_header() {
  static const std::vector<std::string> header = {
      "variable",     "group1_mean_sd", "group2_mean_sd",
      "diff_ci",      "pct_diff_ci",    "effect_size_ci"};
  return header;
}

// JSON has no infinities; degenerate effect sizes are encoded as strings.
json json_num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double num_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw input_error("bad numeric string \"" + s + "\" in bundle");
  }
  return j.get<double>();
}

json summary_to_json(const effects::SampleSummary& s) {
  return json{{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"sem", s.sem}};
}

effects::SampleSummary summary_from_json(const json& j) {
  effects::SampleSummary s;
  s.n = j.at("n").get<std::size_t>();
  s.mean = j.at("mean").get<double>();
  s.sd = j.at("sd").get<double>();
  s.sem = j.at("sem").get<double>();
  return s;
}

json result_to_json(const effects::ComparisonResult& r) {
  json j{{"diff", r.diff},
         {"ci_low", r.ci_low},
         {"ci_high", r.ci_high},
         {"se", r.se},
         {"p_value", r.p_value},
         {"df", r.df},
         {"effect_size", json_num(r.effect_size)},
         {"es_ci_low", json_num(r.es_ci_low)},
         {"es_ci_high", json_num(r.es_ci_high)},
         {"es_se", r.es_se},
         {"standardizer", r.standardizer},
         {"standardizer_name", r.standardizer_name},
         {"variance_model", r.variance_model_name},
         {"group_a", summary_to_json(r.group_a)},
         {"group_b", summary_to_json(r.group_b)}};
  if (r.pct_diff.has_value()) {
    j["pct_diff"] = *r.pct_diff;
    j["pct_ci_low"] = *r.pct_ci_low;
    j["pct_ci_high"] = *r.pct_ci_high;
  }
  return j;
}

effects::ComparisonResult result_from_json(const json& j) {
  effects::ComparisonResult r;
  r.diff = j.at("diff").get<double>();
  r.ci_low = j.at("ci_low").get<double>();
  r.ci_high = j.at("ci_high").get<double>();
  r.se = j.at("se").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.df = j.at("df").get<double>();
  r.effect_size = num_from_json(j.at("effect_size"));
  r.es_ci_low = num_from_json(j.at("es_ci_low"));
  r.es_ci_high = num_from_json(j.at("es_ci_high"));
  r.es_se = j.at("es_se").get<double>();
  r.standardizer = j.at("standardizer").get<double>();
  r.standardizer_name = j.at("standardizer_name").get<std::string>();
  r.variance_model_name = j.at("variance_model").get<std::string>();
  r.group_a = summary_from_json(j.at("group_a"));
  r.group_b = summary_from_json(j.at("group_b"));
  if (j.contains("pct_diff")) {
    r.pct_diff = j.at("pct_diff").get<double>();
    r.pct_ci_low = j.at("pct_ci_low").get<double>();
    r.pct_ci_high = j.at("pct_ci_high").get<double>();
  }
  return r;
}

mbi::Direction direction_from_name(const std::string& name) {
  if (name == "negative") return mbi::Direction::negative;
  if (name == "trivial") return mbi::Direction::trivial;
  if (name == "positive") return mbi::Direction::positive;
  if (name == "unclear") return mbi::Direction::unclear;
  throw input_error("unknown direction \"" + name + "\" in bundle");
}

json inference_to_json(const mbi::MbiInference& inf) {
  return json{{"p_negative", inf.chances.negative},
              {"p_trivial", inf.chances.trivial},
              {"p_positive", inf.chances.positive},
              {"descriptor", inf.descriptor},
              {"direction", mbi::direction_name(inf.direction)},
              {"magnitude_label", inf.magnitude_label}};
}

mbi::MbiInference inference_from_json(const json& j) {
  mbi::MbiInference inf;
  inf.chances.negative = j.at("p_negative").get<double>();
  inf.chances.trivial = j.at("p_trivial").get<double>();
  inf.chances.positive = j.at("p_positive").get<double>();
  inf.descriptor = j.at("descriptor").get<std::string>();
  inf.direction = direction_from_name(j.at("direction").get<std::string>());
  inf.magnitude_label = j.at("magnitude_label").get<std::string>();
  return inf;
}

std::string chances_annotation(const mbi::MbiInference& inf) {
  return format_pct_2sig(inf.chances.negative) + "%/" +
         format_pct_2sig(inf.chances.trivial) + "%/" +
         format_pct_2sig(inf.chances.positive) + "% — " + inf.descriptor;
}

} // namespace

std::string format_fixed2(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string format_pct_2sig(double chance) {
  const double v = chance * 100.0;
  if (!(v >= 0.01)) return "0"; // below display resolution
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2g", v);
  return std::string(buf);
}

std::string ReportMetadata::to_line() const {
  std::ostringstream s;
  s << "ci_level=" << shortest(ci_level) << " swc=" << shortest(swc)
    << " variance_model=" << variance_model
    << " log_scale=" << (use_log_scale ? "true" : "false")
    << " locale=" << locale << " unclear=" << shortest(unclear_positive) << "/"
    << shortest(unclear_negative) << " standardizer=" << standardizer
    << " log_base=" << log_base;
  if (!notes.empty()) s << " notes=" << notes;
  return s.str();
}

std::string ReportBundle::config_line() const {
  std::ostringstream s;
  s << metadata.to_line() << " scale=";
  for (std::size_t i = 0; i < scale.thresholds.size(); ++i)
    s << (i ? "," : "") << shortest(scale.thresholds[i]);
  s << " scale_labels=";
  for (std::size_t i = 0; i < scale.labels.size(); ++i)
    s << (i ? ";" : "") << scale.labels[i];
  s << " ladder=";
  for (std::size_t i = 0; i < ladder.boundaries.size(); ++i)
    s << (i ? "," : "") << shortest(ladder.boundaries[i]);
  s << " ladder_words=";
  for (std::size_t i = 0; i < ladder.words.size(); ++i)
    s << (i ? ";" : "") << ladder.words[i];
  return s.str();
}

void ReportBundle::validate() const {
  if (comparisons.empty())
    throw input_error("report bundle holds no comparisons");
  for (std::size_t i = 0; i < comparisons.size(); ++i)
    for (std::size_t j = i + 1; j < comparisons.size(); ++j)
      if (comparisons[i].name == comparisons[j].name)
        throw input_error("duplicate comparison name \"" +
                          comparisons[i].name + "\" in bundle");
  scale.validate();
  ladder.validate();
}

std::string render_table(const ReportBundle& bundle, TableFormat format) {
  bundle.validate();
  std::ostringstream out;
  const auto& header = table_header();
  if (format == TableFormat::markdown) {
    out << "|";
    for (const auto& h : header) out << " " << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << "\n";
    for (const auto& e : bundle.comparisons) {
      out << "|";
      for (const auto& cell : table_row_cells(e)) out << " " << md_cell(cell) << " |";
      out << "\n";
    }
  } else {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << csv_field(header[i]);
    out << "\n";
    for (const auto& e : bundle.comparisons) {
      const auto cells = table_row_cells(e);
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << csv_field(cells[i]);
      out << "\n";
    }
  }
  return out.str();
}

std::string render_forest_svg(const ReportBundle& bundle,
                              const RenderOptions& options) {
  bundle.validate();
  const std::size_t rows = bundle.comparisons.size();
  const double width = options.width;
  const double height = options.row_height * static_cast<double>(rows) + 2.0 * options.margin;
  const double left = 150.0;
  const double right = width - 320.0; // annotation gutter
  const double top = options.margin;
  const double bottom = height - options.margin;

  // Axis domain: every CI plus the outermost band, padded.
  double dmax = bundle.scale.thresholds.back() + 0.4;
  for (const auto& e : bundle.comparisons) {
    if (std::isfinite(e.result.es_ci_low))
      dmax = std::max(dmax, std::fabs(e.result.es_ci_low));
    if (std::isfinite(e.result.es_ci_high))
      dmax = std::max(dmax, std::fabs(e.result.es_ci_high));
  }
  dmax *= 1.05;
  const AxisMap ax{-dmax, dmax, left, right};

  SvgWriter svg;
  svg.open(width, height, bundle.config_line());

  // Trivial zone and band boundaries at +/- each threshold.
  const double t0 = bundle.scale.thresholds.front();
  svg.rect("band-shade", ax(-t0), top, ax(t0) - ax(-t0), bottom - top,
           "fill=\"#e8e8e8\"");
  for (double th : bundle.scale.thresholds) {
    for (double sgn : {-1.0, 1.0}) {
      svg.line("band-boundary", ax(sgn * th), top, ax(sgn * th), bottom,
               "stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
    }
  }
  svg.line("zero-line", ax(0.0), top, ax(0.0), bottom,
           "stroke=\"#444444\" stroke-width=\"1\"");

  // Band labels along the top, positive side; trivial centred on zero.
  svg.text("band-label", ax(0.0), top - 8.0, bundle.scale.labels.front(),
           options.font_px, "text-anchor=\"middle\" fill=\"#666666\"");
  for (std::size_t i = 0; i < bundle.scale.thresholds.size(); ++i) {
    const double lo = bundle.scale.thresholds[i];
    const double hi = i + 1 < bundle.scale.thresholds.size()
                          ? bundle.scale.thresholds[i + 1]
                          : dmax;
    svg.text("band-label", 0.5 * (ax(lo) + ax(hi)), top - 8.0,
             bundle.scale.labels[i + 1], options.font_px,
             "text-anchor=\"middle\" fill=\"#666666\"");
  }

  // Axis line and threshold ticks.
  svg.line("axis", left, bottom, right, bottom,
           "stroke=\"#000000\" stroke-width=\"1\"");
  for (double th : bundle.scale.thresholds) {
    for (double sgn : {-1.0, 1.0}) {
      svg.text("axis-tick", ax(sgn * th), bottom + 16.0,
               format_fixed2(sgn * th), options.font_px,
               "text-anchor=\"middle\"");
    }
  }
  svg.text("axis-tick", ax(0.0), bottom + 16.0, "0.00", options.font_px,
           "text-anchor=\"middle\"");
  svg.text("axis-title", 0.5 * (left + right), bottom + 34.0,
           "standardized effect size", options.font_px,
           "text-anchor=\"middle\"");

  for (std::size_t i = 0; i < rows; ++i) {
    const auto& e = bundle.comparisons[i];
    const double y = top + options.row_height * (static_cast<double>(i) + 0.5);
    svg.text("row-label", left - 10.0, y + 4.0, e.name, options.font_px,
             "text-anchor=\"end\"");
    const double lo = std::isfinite(e.result.es_ci_low)
                          ? std::clamp(e.result.es_ci_low, -dmax, dmax)
                          : -dmax;
    const double hi = std::isfinite(e.result.es_ci_high)
                          ? std::clamp(e.result.es_ci_high, -dmax, dmax)
                          : dmax;
    svg.line("ci-bar", ax(lo), y, ax(hi), y,
             "stroke=\"#1f6fb2\" stroke-width=\"2\"");
    const double es = std::isfinite(e.result.effect_size)
                          ? std::clamp(e.result.effect_size, -dmax, dmax)
                          : (e.result.effect_size > 0 ? dmax : -dmax);
    svg.circle("effect-marker", ax(es), y, 4.0, "fill=\"#1f6fb2\"");
    svg.text("annotation", right + 12.0, y + 4.0, chances_annotation(e.inference),
             options.font_px, "");
  }
  return svg.close();
}

std::string render_dance_svg(const simulate::DanceResult& result,
                             const simulate::DanceConfig& cfg,
                             const RenderOptions& options) {
  if (result.records.empty())
    throw input_error("dance result holds no experiments");
  const std::size_t rows = result.records.size();
  const double width = options.width;
  const double height = options.row_height * static_cast<double>(rows) + 2.0 * options.margin;
  const double left = 90.0;
  const double right = width - 110.0;
  const double top = options.margin;
  const double bottom = height - options.margin;

  double dlo = std::min(0.0, cfg.delta_mu);
  double dhi = std::max(0.0, cfg.delta_mu);
  for (const auto& r : result.records) {
    dlo = std::min(dlo, r.ci_low);
    dhi = std::max(dhi, r.ci_high);
  }
  const double pad = 0.05 * (dhi - dlo);
  const AxisMap ax{dlo - pad, dhi + pad, left, right};

  std::ostringstream meta;
  meta << "experiments=" << cfg.n_experiments << " n_per_group=" << cfg.n_per_group
       << " sigma=" << shortest(cfg.sigma) << " delta_mu=" << shortest(cfg.delta_mu)
       << " alpha=" << shortest(cfg.alpha) << " ci_level=" << shortest(cfg.ci_level)
       << " seed=" << cfg.seed;

  SvgWriter svg;
  svg.open(width, height, meta.str());

  svg.line("reference-line", ax(cfg.delta_mu), top, ax(cfg.delta_mu), bottom,
           "stroke=\"#b22222\" stroke-width=\"1\" stroke-dasharray=\"6 3\"");
  svg.line("zero-line", ax(0.0), top, ax(0.0), bottom,
           "stroke=\"#777777\" stroke-width=\"1\"");
  svg.line("axis", left, bottom, right, bottom,
           "stroke=\"#000000\" stroke-width=\"1\"");
  svg.text("axis-tick", ax(0.0), bottom + 16.0, "0", options.font_px,
           "text-anchor=\"middle\"");
  svg.text("axis-tick", ax(cfg.delta_mu), bottom + 16.0,
           format_fixed2(cfg.delta_mu), options.font_px,
           "text-anchor=\"middle\"");
  svg.text("axis-title", 0.5 * (left + right), bottom + 34.0,
           "difference between sample means", options.font_px,
           "text-anchor=\"middle\"");

  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = result.records[i];
    const double y = top + options.row_height * (static_cast<double>(i) + 0.5);
    svg.text("row-number", left - 10.0, y + 4.0, std::to_string(r.index + 1),
             options.font_px, "text-anchor=\"end\"");
    svg.line("ci-bar", ax(r.ci_low), y, ax(r.ci_high), y,
             "stroke=\"#333333\" stroke-width=\"2\"");
    svg.circle("diff-marker", ax(r.diff), y, 4.0, "fill=\"#333333\"");
    if (r.sig_category != "ns")
      svg.text("sig-glyph", right + 14.0, y + 4.0, r.sig_category,
               options.font_px, "");
  }
  return svg.close();
}

std::string render_individuals_svg(const std::vector<descriptive::Sample>& samples,
                                   double ci_level,
                                   const RenderOptions& options) {
  if (samples.empty())
    throw input_error("individuals plot needs at least one sample");
  if (!(ci_level > 0.5 && ci_level < 1.0))
    throw std::domain_error("ci_level must be in (0.5, 1)");
  const std::size_t groups = samples.size();
  const double width = options.width;
  const double height = options.row_height * static_cast<double>(groups) + 2.0 * options.margin;
  const double left = 90.0;
  const double right = width - 60.0;
  const double top = options.margin;
  const double bottom = height - options.margin;

  double vlo = samples[0].values()[0], vhi = vlo;
  for (const auto& s : samples)
    for (double v : s.values()) {
      vlo = std::min(vlo, v);
      vhi = std::max(vhi, v);
    }
  if (vlo == vhi) { // constant data still needs a nonempty axis
    vlo -= 1.0;
    vhi += 1.0;
  }
  const double pad = 0.08 * (vhi - vlo);
  // Value axis is vertical: larger values sit higher on the canvas.
  const AxisMap ay{vlo - pad, vhi + pad, bottom, top};

  SvgWriter svg;
  svg.open(width, height, "individuals ci_level=" + shortest(ci_level));
  svg.line("axis", left, bottom, left, top, "stroke=\"#000000\" stroke-width=\"1\"");
  svg.text("axis-tick", left - 8.0, ay(vlo) + 4.0, format_fixed2(vlo),
           options.font_px, "text-anchor=\"end\"");
  svg.text("axis-tick", left - 8.0, ay(vhi) + 4.0, format_fixed2(vhi),
           options.font_px, "text-anchor=\"end\"");

  const double col_width = (right - left) / static_cast<double>(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    const auto& s = samples[g];
    const double cx = left + col_width * (static_cast<double>(g) + 0.5);
    for (std::size_t i = 0; i < s.size(); ++i) {
      // Deterministic jitter: cycle of five offsets by observation index.
      const double jitter = (static_cast<double>(i % 5) - 2.0) * 7.0;
      svg.circle("indiv-marker", cx + jitter, ay(s.values()[i]), 3.0,
                 "fill=\"#777777\" fill-opacity=\"0.7\"");
    }
    const double mean = descriptive::mean_of(s.values());
    double half = 0.0;
    if (s.size() >= 2) {
      const auto sum = descriptive::summarize(s);
      if (sum.sd > 0.0)
        half = specfun::t_quantile(0.5 * (1.0 + ci_level),
                                   static_cast<double>(sum.n) - 1.0) * sum.sem;
    }
    svg.out << "<g class=\"group-whisker\">\n";
    svg.line("whisker-span", cx + 24.0, ay(mean - half), cx + 24.0, ay(mean + half),
             "stroke=\"#b22222\" stroke-width=\"2\"");
    svg.line("whisker-mean", cx + 16.0, ay(mean), cx + 32.0, ay(mean),
             "stroke=\"#b22222\" stroke-width=\"2\"");
    svg.out << "</g>\n";
    svg.text("group-label", cx, bottom + 18.0, s.label(), options.font_px,
             "text-anchor=\"middle\"");
  }
  return svg.close();
}

std::string render_json(const ReportBundle& bundle) {
  bundle.validate();
  json comparisons = json::array();
  for (const auto& e : bundle.comparisons) {
    comparisons.push_back(json{{"name", e.name},
                               {"result", result_to_json(e.result)},
                               {"inference", inference_to_json(e.inference)}});
  }
  const json j{{"kind", "report_bundle"},
               {"comparisons", comparisons},
               {"scale",
                json{{"thresholds", bundle.scale.thresholds},
                     {"labels", bundle.scale.labels}}},
               {"ladder",
                json{{"boundaries", bundle.ladder.boundaries},
                     {"words", bundle.ladder.words}}},
               {"metadata",
                json{{"ci_level", bundle.metadata.ci_level},
                     {"swc", bundle.metadata.swc},
                     {"variance_model", bundle.metadata.variance_model},
                     {"use_log_scale", bundle.metadata.use_log_scale},
                     {"locale", bundle.metadata.locale},
                     {"unclear_positive", bundle.metadata.unclear_positive},
                     {"unclear_negative", bundle.metadata.unclear_negative},
                     {"standardizer", bundle.metadata.standardizer},
                     {"log_base", bundle.metadata.log_base},
                     {"notes", bundle.metadata.notes}}}};
  return j.dump(2) + "\n";
}

ReportBundle parse_bundle_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("bundle JSON parse failed: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "report_bundle")
      throw input_error("JSON is not a report_bundle");
    ReportBundle b;
    for (const auto& je : j.at("comparisons")) {
      ComparisonEntry e;
      e.name = je.at("name").get<std::string>();
      e.result = result_from_json(je.at("result"));
      e.inference = inference_from_json(je.at("inference"));
      b.comparisons.push_back(std::move(e));
    }
    b.scale.thresholds = j.at("scale").at("thresholds").get<std::vector<double>>();
    b.scale.labels = j.at("scale").at("labels").get<std::vector<std::string>>();
    b.ladder.boundaries = j.at("ladder").at("boundaries").get<std::vector<double>>();
    b.ladder.words = j.at("ladder").at("words").get<std::vector<std::string>>();
    const json& m = j.at("metadata");
    b.metadata.ci_level = m.at("ci_level").get<double>();
    b.metadata.swc = m.at("swc").get<double>();
    b.metadata.variance_model = m.at("variance_model").get<std::string>();
    b.metadata.use_log_scale = m.at("use_log_scale").get<bool>();
    b.metadata.locale = m.at("locale").get<std::string>();
    b.metadata.unclear_positive = m.at("unclear_positive").get<double>();
    b.metadata.unclear_negative = m.at("unclear_negative").get<double>();
    b.metadata.standardizer = m.at("standardizer").get<std::string>();
    b.metadata.log_base = m.at("log_base").get<std::string>();
    b.metadata.notes = m.at("notes").get<std::string>();
    b.validate();
    return b;
  } catch (const json::exception& e) {
    throw input_error(std::string("bundle JSON schema mismatch: ") + e.what());
  }
}

std::string dance_csv(const simulate::DanceResult& result) {
  std::ostringstream out;
  out << "index,diff,ci_low,ci_high,p_value,sig_category\n";
  for (const auto& r : result.records) {
    out << r.index << "," << shortest(r.diff) << "," << shortest(r.ci_low)
        << "," << shortest(r.ci_high) << "," << shortest(r.p_value) << ","
        << r.sig_category << "\n";
  }
  return out.str();
}

std::string dance_json(const simulate::DanceResult& result,
                       const simulate::DanceConfig& cfg) {
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back(json{{"index", r.index},
                           {"diff", r.diff},
                           {"ci_low", r.ci_low},
                           {"ci_high", r.ci_high},
                           {"p_value", r.p_value},
                           {"sig_category", r.sig_category}});
  }
  const json j{
      {"kind", "dance_result"},
      {"config",
       json{{"n_experiments", cfg.n_experiments},
            {"n_per_group", cfg.n_per_group},
            {"sigma", cfg.sigma},
            {"delta_mu", cfg.delta_mu},
            {"alpha", cfg.alpha},
            {"ci_level", cfg.ci_level},
            {"seed", cfg.seed},
            {"variance_model",
             cfg.variance_model == effects::VarianceModel::pooled ? "pooled"
                                                                  : "welch"}}},
      {"records", records},
      {"summary",
       json{{"count_significant", result.summary.count_significant},
            {"ci_capture_count", result.summary.ci_capture_count},
            {"mean_diff_of_diffs", result.summary.mean_diff_of_diffs}}}};
  return j.dump(2) + "\n";
}

std::pair<simulate::DanceResult, simulate::DanceConfig>
parse_dance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("dance JSON parse failed: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "dance_result")
      throw input_error("JSON is not a dance_result");
    simulate::DanceConfig cfg;
    const json& c = j.at("config");
    cfg.n_experiments = c.at("n_experiments").get<std::size_t>();
    cfg.n_per_group = c.at("n_per_group").get<std::size_t>();
    cfg.sigma = c.at("sigma").get<double>();
    cfg.delta_mu = c.at("delta_mu").get<double>();
    cfg.alpha = c.at("alpha").get<double>();
    cfg.ci_level = c.at("ci_level").get<double>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.variance_model = c.at("variance_model").get<std::string>() == "welch"
                             ? effects::VarianceModel::welch
                             : effects::VarianceModel::pooled;
    simulate::DanceResult res;
    for (const auto& jr : j.at("records")) {
      simulate::DanceRecord r;
      r.index = jr.at("index").get<std::size_t>();
      r.diff = jr.at("diff").get<double>();
      r.ci_low = jr.at("ci_low").get<double>();
      r.ci_high = jr.at("ci_high").get<double>();
      r.p_value = jr.at("p_value").get<double>();
      r.sig_category = jr.at("sig_category").get<std::string>();
      res.records.push_back(std::move(r));
    }
    const json& s = j.at("summary");
    res.summary.count_significant = s.at("count_significant").get<std::size_t>();
    res.summary.ci_capture_count = s.at("ci_capture_count").get<std::size_t>();
    res.summary.mean_diff_of_diffs = s.at("mean_diff_of_diffs").get<double>();
    return {std::move(res), cfg};
  } catch (const json::exception& e) {
    throw input_error(std::string("dance JSON schema mismatch: ") + e.what());
  }
}

} // namespace mbistat::report
