#include "tempoclust/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tempoclust/features.hpp"
#include "tempoclust/version.hpp"

#include "json.hpp"

namespace tempoclust {

using nlohmann::json;  // std::map keyed: object keys serialize sorted

double round_sig6(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

namespace {

json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return round_sig6(value);
}

std::string format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

// Left-justified columns separated by two spaces; fields contain no spaces,
// so a whitespace split recovers every cell.
std::string layout_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) {
        line.append(widths[i] - row[i].size() + 2, ' ');
      }
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

double nice_step(double range, int target_ticks) {
  if (range <= 0.0) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm <= 1.0) step = 1.0;
  else if (norm <= 2.0) step = 2.0;
  else if (norm <= 5.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

struct Palette {
  const char* slow;
  const char* mid;
  const char* fast;
};

Palette palette_by_name(const std::string& name) {
  if (name == "default") return {"#2ca02c", "#1f77b4", "#d62728"};
  if (name == "high-contrast") return {"#009e73", "#0072b2", "#d55e00"};
  throw DomainError("unknown palette '" + name + "'");
}

json fit_to_json(const std::optional<RegressionFit>& fit) {
  if (!fit) return nullptr;
  json j;
  j["slope"] = round_sig6(fit->slope);
  j["intercept"] = round_sig6(fit->intercept);
  j["r2"] = round_sig6(fit->r_squared);
  j["t"] = number_or_null(fit->t_stat);
  j["df"] = fit->df;
  j["p"] = round_sig6(fit->p_value);
  j["degenerate"] = fit->degenerate;
  j["n"] = fit->n;
  j["slope_se"] = round_sig6(fit->slope_se);
  return j;
}

std::optional<RegressionFit> fit_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  RegressionFit fit;
  fit.slope = j.at("slope").get<double>();
  fit.intercept = j.at("intercept").get<double>();
  fit.r_squared = j.at("r2").get<double>();
  fit.t_stat = j.at("t").is_null() ? std::nan("") : j.at("t").get<double>();
  fit.df = j.at("df").get<int>();
  fit.p_value = j.at("p").get<double>();
  fit.degenerate = j.at("degenerate").get<bool>();
  fit.n = j.at("n").get<int>();
  fit.slope_se = j.at("slope_se").get<double>();
  return fit;
}

}  // namespace

std::string emit_cluster_table(const std::vector<MovementReport>& reports,
                               Character character_filter) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Movement", "Cluster", "N", "MeanBPM", "Range", "R2"});
  bool any = false;
  for (const MovementReport& report : reports) {
    if (report.character != character_filter) continue;
    any = true;
    for (Label label : {Label::slow, Label::mid, Label::fast}) {
      const auto it =
          std::find_if(report.clusters.begin(), report.clusters.end(),
                       [&](const LabeledCluster& c) { return c.label == label; });
      if (it == report.clusters.end()) {
        rows.push_back(
            {report.movement_id, to_string(label), "0", "---", "---", "---"});
        continue;
      }
      rows.push_back({report.movement_id, to_string(label),
                      std::to_string(it->n), format("%.1f", it->mean_bpm),
                      format("%.1f", it->bpm_min) + "--" +
                          format("%.1f", it->bpm_max),
                      it->fit ? format("%.3f", it->fit->r_squared) : "---"});
    }
  }
  if (!any) {
    throw DomainError(std::string("no reports with character '") +
                      to_string(character_filter) + "'");
  }
  return layout_table(rows);
}

std::string emit_change_table(const std::vector<AggregateChange>& changes,
                              std::optional<double> correlation) {
  if (changes.empty()) {
    throw DomainError("emit_change_table requires at least one change");
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Movement", "Tempo%", "Duration%"});
  for (const AggregateChange& change : changes) {
    rows.push_back({change.movement_id,
                    format("%+.1f", change.tempo_pct) + "%",
                    format("%+.1f", change.duration_pct) + "%"});
  }
  std::string out = layout_table(rows);
  if (correlation) {
    out += "\n|r| = " + format("%.2f", std::fabs(*correlation)) + "\n";
  }
  return out;
}

std::string emit_scatter_svg(const MovementReport& report, const Corpus& corpus,
                             const SvgOptions& options) {
  if (report.clusters.empty()) {
    throw DomainError("emit_scatter_svg requires at least one cluster");
  }
  const Palette palette = palette_by_name(options.palette);
  auto color_of = [&](Label label) {
    switch (label) {
      case Label::slow: return palette.slow;
      case Label::mid: return palette.mid;
      case Label::fast: return palette.fast;
    }
    return palette.mid;
  };

  // Gather points in cluster order; coordinates come from the corpus.
  struct Dot { double year, bpm; };
  std::vector<std::pair<const LabeledCluster*, std::vector<Dot>>> groups;
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const LabeledCluster& cluster : report.clusters) {
    std::vector<Dot> dots;
    for (const std::string& id : cluster.member_ids) {
      auto it = corpus.recordings.find(id);
      if (it == corpus.recordings.end()) {
        throw DomainError("report member '" + id + "' is not in the corpus");
      }
      const Dot dot{static_cast<double>(it->second.year),
                    mean_bpm(it->second.bar_bpm)};
      x_min = std::min(x_min, dot.year);
      x_max = std::max(x_max, dot.year);
      y_min = std::min(y_min, dot.bpm);
      y_max = std::max(y_max, dot.bpm);
      dots.push_back(dot);
    }
    groups.emplace_back(&cluster, std::move(dots));
  }
  if (x_min == x_max) { x_min -= 1.0; x_max += 1.0; }
  if (y_min == y_max) { y_min -= 1.0; y_max += 1.0; }
  const double x_pad = 0.05 * (x_max - x_min);
  const double y_pad = 0.08 * (y_max - y_min);
  x_min -= x_pad; x_max += x_pad;
  y_min -= y_pad; y_max += y_pad;

  const double left = 64, right = 150, top = 48, bottom = 56;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto sy = [&](double y) {
    return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  const Movement* movement = nullptr;
  auto mv = corpus.movements.find(report.movement_id);
  if (mv != corpus.movements.end()) movement = &mv->second;
  const std::string title =
      movement ? movement->sonata_label + " " + movement->movement_name
               : report.movement_id;

  std::ostringstream svg;
  auto num = [](double v) { return format("%.2f", v); };
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << " " << options.height << "\" role=\"img\">\n";
  svg << "  <title>" << xml_escape(title) << "</title>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\""
      << options.height << "\" fill=\"#ffffff\"/>\n";
  svg << "  <text x=\"" << num(left + plot_w / 2) << "\" y=\"28\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
      << "fill=\"#111111\">" << xml_escape(title) << "</text>\n";

  // Axes and ticks.
  svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h)
      << "\" x2=\"" << num(left + plot_w) << "\" y2=\"" << num(top + plot_h)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\""
      << num(left) << "\" y2=\"" << num(top + plot_h)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  const double x_step = nice_step(x_max - x_min, 6);
  for (double tick = std::ceil(x_min / x_step) * x_step; tick <= x_max + 1e-9;
       tick += x_step) {
    svg << "  <line x1=\"" << num(sx(tick)) << "\" y1=\"" << num(top + plot_h)
        << "\" x2=\"" << num(sx(tick)) << "\" y2=\"" << num(top + plot_h + 5)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << num(sx(tick)) << "\" y=\""
        << num(top + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333333\">" << format("%g", tick)
        << "</text>\n";
  }
  const double y_step = nice_step(y_max - y_min, 6);
  for (double tick = std::ceil(y_min / y_step) * y_step; tick <= y_max + 1e-9;
       tick += y_step) {
    svg << "  <line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy(tick))
        << "\" x2=\"" << num(left) << "\" y2=\"" << num(sy(tick))
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << num(left - 9) << "\" y=\"" << num(sy(tick) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"#333333\">" << format("%g", tick)
        << "</text>\n";
  }
  svg << "  <text x=\"" << num(left + plot_w / 2) << "\" y=\""
      << num(top + plot_h + 42)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" fill=\"#111111\">Recording year</text>\n";
  svg << "  <text x=\"20\" y=\"" << num(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" fill=\"#111111\" transform=\"rotate(-90 20 "
      << num(top + plot_h / 2) << ")\">Mean BPM</text>\n";

  for (const auto& [cluster, dots] : groups) {
    svg << "  <g class=\"cluster-points\" fill=\"" << color_of(cluster->label)
        << "\" fill-opacity=\"0.85\">\n";
    for (const Dot& dot : dots) {
      svg << "    <circle cx=\"" << num(sx(dot.year)) << "\" cy=\""
          << num(sy(dot.bpm)) << "\" r=\"4\"/>\n";
    }
    svg << "  </g>\n";
  }

  // Dashed drift line for the mid cluster, spanning its member years.
  for (const auto& [cluster, dots] : groups) {
    if (cluster->label != Label::mid || !cluster->fit) continue;
    double year_lo = 1e300, year_hi = -1e300;
    for (const Dot& dot : dots) {
      year_lo = std::min(year_lo, dot.year);
      year_hi = std::max(year_hi, dot.year);
    }
    const RegressionFit& fit = *cluster->fit;
    svg << "  <line class=\"fit-line\" x1=\"" << num(sx(year_lo)) << "\" y1=\""
        << num(sy(fit.intercept + fit.slope * year_lo)) << "\" x2=\""
        << num(sx(year_hi)) << "\" y2=\""
        << num(sy(fit.intercept + fit.slope * year_hi)) << "\" stroke=\""
        << color_of(Label::mid)
        << "\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
  }

  double legend_y = top + 10;
  const double legend_x = left + plot_w + 18;
  for (const auto& [cluster, dots] : groups) {
    svg << "  <rect x=\"" << num(legend_x) << "\" y=\"" << num(legend_y - 9)
        << "\" width=\"11\" height=\"11\" fill=\"" << color_of(cluster->label)
        << "\"/>\n";
    svg << "  <text x=\"" << num(legend_x + 17) << "\" y=\"" << num(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111111\">"
        << to_string(cluster->label) << " (n=" << cluster->n << ")</text>\n";
    legend_y += 20;
  }

  svg << "</svg>\n";
  return svg.str();
}

std::string emit_json(const ReportBundle& bundle) {
  json root;
  json meta;
  meta["seed"] = bundle.meta.seed;
  meta["restarts"] = bundle.meta.restarts;
  meta["k_target"] = bundle.meta.k_target;
  meta["split_year"] = bundle.meta.split_year;
  meta["version"] = bundle.meta.version;
  json policy;
  policy["min_silhouette"] = round_sig6(bundle.meta.policy.min_silhouette);
  policy["min_cluster_size"] = bundle.meta.policy.min_cluster_size;
  policy["silhouette_slack"] = round_sig6(bundle.meta.policy.silhouette_slack);
  meta["policy"] = policy;
  root["meta"] = meta;

  json movements = json::array();
  for (const MovementReport& report : bundle.movements) {
    json m;
    m["movement_id"] = report.movement_id;
    m["character"] = to_string(report.character);
    json validity;
    validity["k_min"] = report.validity.k_min;
    validity["k_max"] = report.validity.k_max;
    json wcss;
    for (const auto& [k, v] : report.validity.wcss_by_k) {
      wcss[std::to_string(k)] = round_sig6(v);
    }
    validity["wcss_by_k"] = wcss;
    json sil;
    for (const auto& [k, v] : report.validity.mean_silhouette_by_k) {
      sil[std::to_string(k)] = round_sig6(v);
    }
    validity["mean_silhouette_by_k"] = sil;
    validity["supported_k"] = report.validity.supported_k;
    validity["three_way_supported"] = report.validity.three_way_supported;
    m["validity"] = validity;

    json clusters = json::array();
    for (const LabeledCluster& cluster : report.clusters) {
      json c;
      c["label"] = to_string(cluster.label);
      c["n"] = cluster.n;
      c["mean_bpm"] = round_sig6(cluster.mean_bpm);
      c["range"] = json::array({round_sig6(cluster.bpm_min),
                                round_sig6(cluster.bpm_max)});
      c["sd"] = round_sig6(cluster.sd_bpm);
      c["fit"] = fit_to_json(cluster.fit);
      c["members"] = cluster.member_ids;
      clusters.push_back(c);
    }
    m["clusters"] = clusters;

    json empty = json::array();
    for (Label label : {Label::slow, Label::mid, Label::fast}) {
      if (report.empty_labels.count(label)) empty.push_back(to_string(label));
    }
    m["empty_labels"] = empty;
    m["dominant_label"] = to_string(report.dominant_label);
    m["dominant_share"] = round_sig6(report.dominant_share);
    m["degenerate_columns"] = report.degenerate_columns;
    movements.push_back(m);
  }
  root["movements"] = movements;

  json changes = json::array();
  for (const AggregateChange& change : bundle.changes) {
    json c;
    c["movement_id"] = change.movement_id;
    c["split_year"] = change.split_year;
    c["tempo_pct"] = round_sig6(change.tempo_pct);
    c["duration_pct"] = round_sig6(change.duration_pct);
    c["n_early"] = change.n_early;
    c["n_late"] = change.n_late;
    changes.push_back(c);
  }
  root["changes"] = changes;
  root["correlation"] =
      bundle.correlation ? json(round_sig6(*bundle.correlation)) : json(nullptr);

  json associations = json::array();
  for (const AssociationResult& assoc : bundle.associations) {
    json a;
    a["category"] = assoc.category;
    a["labels"] = assoc.labels;
    a["values"] = assoc.values;
    a["counts"] = assoc.counts;
    a["chi_square"] = round_sig6(assoc.chi_square);
    a["df"] = assoc.df;
    a["p_value"] = round_sig6(assoc.p_value);
    a["cramers_v"] = round_sig6(assoc.cramers_v);
    associations.push_back(a);
  }
  root["associations"] = associations;

  return root.dump(2) + "\n";
}

ReportBundle parse_report_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
  try {
    ReportBundle bundle;
    const json& meta = root.at("meta");
    bundle.meta.seed = meta.at("seed").get<std::uint64_t>();
    bundle.meta.restarts = meta.at("restarts").get<int>();
    bundle.meta.k_target = meta.at("k_target").get<int>();
    bundle.meta.split_year = meta.at("split_year").get<int>();
    bundle.meta.version = meta.at("version").get<std::string>();
    const json& policy = meta.at("policy");
    bundle.meta.policy.min_silhouette =
        policy.at("min_silhouette").get<double>();
    bundle.meta.policy.min_cluster_size =
        policy.at("min_cluster_size").get<int>();
    bundle.meta.policy.silhouette_slack =
        policy.at("silhouette_slack").get<double>();

    for (const json& m : root.at("movements")) {
      MovementReport report;
      report.movement_id = m.at("movement_id").get<std::string>();
      report.character =
          character_from_string(m.at("character").get<std::string>());
      const json& validity = m.at("validity");
      report.validity.k_min = validity.at("k_min").get<int>();
      report.validity.k_max = validity.at("k_max").get<int>();
      for (const auto& [key, v] : validity.at("wcss_by_k").items()) {
        report.validity.wcss_by_k[std::stoi(key)] = v.get<double>();
      }
      for (const auto& [key, v] :
           validity.at("mean_silhouette_by_k").items()) {
        report.validity.mean_silhouette_by_k[std::stoi(key)] = v.get<double>();
      }
      report.validity.supported_k = validity.at("supported_k").get<int>();
      report.validity.three_way_supported =
          validity.at("three_way_supported").get<bool>();
      for (const json& c : m.at("clusters")) {
        LabeledCluster cluster;
        cluster.label = label_from_string(c.at("label").get<std::string>());
        cluster.n = c.at("n").get<int>();
        cluster.mean_bpm = c.at("mean_bpm").get<double>();
        cluster.bpm_min = c.at("range").at(0).get<double>();
        cluster.bpm_max = c.at("range").at(1).get<double>();
        cluster.sd_bpm = c.at("sd").get<double>();
        cluster.fit = fit_from_json(c.at("fit"));
        cluster.member_ids =
            c.at("members").get<std::vector<std::string>>();
        report.clusters.push_back(std::move(cluster));
      }
      for (const json& label : m.at("empty_labels")) {
        report.empty_labels.insert(
            label_from_string(label.get<std::string>()));
      }
      report.dominant_label =
          label_from_string(m.at("dominant_label").get<std::string>());
      report.dominant_share = m.at("dominant_share").get<double>();
      report.degenerate_columns =
          m.at("degenerate_columns").get<std::vector<std::string>>();
      bundle.movements.push_back(std::move(report));
    }

    for (const json& c : root.at("changes")) {
      AggregateChange change;
      change.movement_id = c.at("movement_id").get<std::string>();
      change.split_year = c.at("split_year").get<int>();
      change.tempo_pct = c.at("tempo_pct").get<double>();
      change.duration_pct = c.at("duration_pct").get<double>();
      change.n_early = c.at("n_early").get<int>();
      change.n_late = c.at("n_late").get<int>();
      bundle.changes.push_back(std::move(change));
    }
    if (!root.at("correlation").is_null()) {
      bundle.correlation = root.at("correlation").get<double>();
    }
    for (const json& a : root.at("associations")) {
      AssociationResult assoc;
      assoc.category = a.at("category").get<std::string>();
      assoc.labels = a.at("labels").get<std::vector<std::string>>();
      assoc.values = a.at("values").get<std::vector<std::string>>();
      assoc.counts = a.at("counts").get<std::vector<std::vector<int>>>();
      assoc.chi_square = a.at("chi_square").get<double>();
      assoc.df = a.at("df").get<int>();
      assoc.p_value = a.at("p_value").get<double>();
      assoc.cramers_v = a.at("cramers_v").get<double>();
      bundle.associations.push_back(std::move(assoc));
    }
    return bundle;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
}

std::string emit_clusters_csv(const std::vector<MovementReport>& reports) {
  std::string out =
      "movement_id,label,n,mean_bpm,bpm_min,bpm_max,sd_bpm,slope,intercept,"
      "r_squared,t,df,p,degenerate\n";
  auto g6 = [](double v) { return format("%.6g", v); };
  for (const MovementReport& report : reports) {
    for (const LabeledCluster& cluster : report.clusters) {
      out += report.movement_id;
      out += ',';
      out += to_string(cluster.label);
      out += ',' + std::to_string(cluster.n);
      out += ',' + g6(cluster.mean_bpm);
      out += ',' + g6(cluster.bpm_min);
      out += ',' + g6(cluster.bpm_max);
      out += ',' + g6(cluster.sd_bpm);
      if (cluster.fit) {
        const RegressionFit& fit = *cluster.fit;
        out += ',' + g6(fit.slope);
        out += ',' + g6(fit.intercept);
        out += ',' + g6(fit.r_squared);
        out += ',';
        if (!std::isnan(fit.t_stat)) out += g6(fit.t_stat);
        out += ',' + std::to_string(fit.df);
        out += ',' + g6(fit.p_value);
        out += cluster.fit->degenerate ? ",true" : ",false";
      } else {
        out += ",,,,,,,";
      }
      out += '\n';
    }
  }
  return out;
}

std::string emit_changes_csv(const std::vector<AggregateChange>& changes) {
  std::string out =
      "movement_id,split_year,n_early,n_late,tempo_pct,duration_pct\n";
  auto g6 = [](double v) { return format("%.6g", v); };
  for (const AggregateChange& change : changes) {
    out += change.movement_id;
    out += ',' + std::to_string(change.split_year);
    out += ',' + std::to_string(change.n_early);
    out += ',' + std::to_string(change.n_late);
    out += ',' + g6(change.tempo_pct);
    out += ',' + g6(change.duration_pct);
    out += '\n';
  }
  return out;
}

}  // namespace tempoclust
