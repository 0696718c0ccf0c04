#include "votenet/pipeline.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include "text_util.hpp"
#include "votenet/community.hpp"
#include "votenet/formats.hpp"
#include "votenet/ingest.hpp"
#include "votenet/temporal.hpp"
#include "votenet/tiestrength.hpp"

namespace votenet {

namespace pt = boost::property_tree;
using formats::write_file_atomic;

StageError::StageError(std::string stage, std::string window, const std::string& what)
    : std::runtime_error("stage '" + stage + "'" +
                         (window.empty() ? std::string{} : " failed for window '" + window + "'") +
                         ": " + what),
      stage_(std::move(stage)),
      window_(std::move(window)) {}

namespace {

double number_value(const std::string& key, const std::string& text) {
  const auto t = detail::trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("'" + key + "' must be a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t integer_value(const std::string& key, const std::string& text) {
  const auto t = detail::trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("'" + key + "' must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool bool_value(const std::string& key, const std::string& text) {
  const auto t = std::string(detail::trim(text));
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError("'" + key + "' must be true or false, got '" + text + "'");
}

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (const char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

PipelineConfig parse_config(std::istream& in, const fs::path& base_dir) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  pt::ptree tree;
  try {
    std::istringstream ss(text);
    pt::read_ini(ss, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  PipelineConfig cfg;
  cfg.source_text = text;
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  for (const auto& [key, node] : tree) {
    if (!node.empty()) {
      WindowConfig w;
      w.label = key;
      for (const auto& [wkey, wnode] : node) {
        const auto value = wnode.data();
        if (wkey == "format") w.format = std::string(detail::trim(value));
        else if (wkey == "inputs") {
          for (const auto& p : words(value)) w.inputs.push_back(resolve(p));
        } else if (wkey == "date_prefix") w.date_prefix = std::string(detail::trim(value));
        else if (wkey == "percentile") w.percentile = number_value(wkey, value);
        else if (wkey == "overlap_threshold") w.overlap_threshold = number_value(wkey, value);
        else if (wkey == "legislature") w.legislature = std::string(detail::trim(value));
        else if (wkey == "president") w.president = std::string(detail::trim(value));
        else throw ConfigError("unknown key '" + wkey + "' in window [" + key + "]");
      }
      cfg.windows.push_back(std::move(w));
      continue;
    }
    const auto value = node.data();
    if (key == "max_missed") cfg.max_missed = number_value(key, value);
    else if (key == "percentile") cfg.percentile = number_value(key, value);
    else if (key == "sweep") cfg.sweep = std::string(detail::trim(value));
    else if (key == "min_retained") cfg.min_retained = number_value(key, value);
    else if (key == "seed") cfg.seed = integer_value(key, value);
    else if (key == "restarts") cfg.restarts = static_cast<unsigned>(integer_value(key, value));
    else if (key == "output") cfg.output = resolve(std::string(detail::trim(value)));
    else if (key == "flow_churn") cfg.flow_churn = bool_value(key, value);
    else if (key == "leave_one_out") cfg.discipline.leave_one_out = bool_value(key, value);
    else if (key == "sample_sd") cfg.discipline.sample_sd = bool_value(key, value);
    else if (key == "path_averaging") {
      const auto v = std::string(detail::trim(value));
      if (v == "connected_pairs") cfg.path_averaging = PathAveraging::ConnectedPairs;
      else if (v == "per_component") cfg.path_averaging = PathAveraging::PerComponent;
      else throw ConfigError("path_averaging must be connected_pairs or per_component");
    } else if (key == "exclude_pairs") {
      for (const auto& pair : words(value)) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) {
          throw ConfigError("exclude_pairs entries look like 2006:2007, got '" + pair + "'");
        }
        cfg.exclude_pairs.emplace_back(pair.substr(0, colon), pair.substr(colon + 1));
      }
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return parse_config(in, path.parent_path());
}

void validate(const PipelineConfig& cfg) {
  std::set<std::string> labels;
  auto check_percentile = [](double p, const std::string& where) {
    if (!(p > 0.0 && p < 100.0)) throw ConfigError(where + ": percentile must lie in (0, 100)");
  };
  for (const auto& w : cfg.windows) {
    if (!labels.insert(w.label).second) throw ConfigError("duplicate window '" + w.label + "'");
    if (w.format != "canonical" && w.format != "camara" && w.format != "propublica") {
      throw ConfigError("window '" + w.label + "': unknown adapter '" + w.format + "'");
    }
    if (w.inputs.empty()) throw ConfigError("window '" + w.label + "' lists no inputs");
    if (w.percentile) check_percentile(*w.percentile, "window '" + w.label + "'");
    if (w.overlap_threshold && !(*w.overlap_threshold >= 0.0 && *w.overlap_threshold <= 1.0)) {
      throw ConfigError("window '" + w.label + "': overlap_threshold must lie in [0, 1]");
    }
  }
  if (!(cfg.max_missed >= 0.0 && cfg.max_missed <= 1.0)) {
    throw ConfigError("max_missed must lie in [0, 1]");
  }
  check_percentile(cfg.percentile, "config");
  if (!(cfg.min_retained >= 0.0 && cfg.min_retained <= 1.0)) {
    throw ConfigError("min_retained must lie in [0, 1]");
  }
  if (cfg.restarts == 0) throw ConfigError("restarts must be at least 1");
  try {
    parse_sweep_range(cfg.sweep);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
}

std::string config_hash(const PipelineConfig& cfg) { return hex(fnv1a(cfg.source_text)); }

fs::path with_suffix(const fs::path& prefix, const char* suffix) {
  fs::path p = prefix;
  p += suffix;
  return p;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Ingest: return "ingest";
    case Stage::Graph: return "graph";
    case Stage::Detect: return "detect";
    case Stage::Polarize: return "polarize";
    case Stage::Temporal: return "temporal";
    case Stage::Report: return "report";
  }
  return "?";
}

std::optional<Stage> stage_from_name(const std::string& name) {
  for (const auto s : {Stage::Ingest, Stage::Graph, Stage::Detect, Stage::Polarize,
                       Stage::Temporal, Stage::Report}) {
    if (name == stage_name(s)) return s;
  }
  return std::nullopt;
}

namespace {

VoteDataset load_dataset(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw formats::FormatError("cannot open dataset '" + path.string() + "'");
  return parse_canonical(in);
}

GraphStats stats_or_empty(const SimilarityGraph& g, PathAveraging averaging) {
  if (g.node_count() >= 2) return graph_stats(g, averaging);
  GraphStats s;
  s.node_count = g.node_count();
  s.connected_components = g.node_count();
  return s;
}

Partition detect(const SimilarityGraph& g, const PipelineConfig& cfg) {
  return louvain_best_of(g, cfg.seed, cfg.restarts);
}

void write_community_outputs(const fs::path& prefix, const SimilarityGraph& g, const Partition& p,
                             const VoteDataset& d, const PipelineConfig& cfg) {
  write_file_atomic(with_suffix(prefix, ".partition.tsv"),
                    [&](std::ostream& o) { formats::write_partition(o, p, g.window_label()); });
  const auto report = group_discipline(d, community_assignment(p), cfg.discipline);
  write_file_atomic(with_suffix(prefix, ".discipline.tsv"),
                    [&](std::ostream& o) { formats::write_discipline(o, report); });
}

}  // namespace

VoteDataset ingest_window(const WindowConfig& w, double max_missed) {
  std::vector<VoteDataset> parts;
  for (const auto& input : w.inputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw formats::FormatError("cannot open input '" + input.string() + "'");
    AdapterOptions options{w.label, w.date_prefix};
    try {
      if (w.format == "camara") parts.push_back(adapt_camara(in, options));
      else if (w.format == "propublica") parts.push_back(adapt_propublica(in, options));
      else parts.push_back(parse_canonical(in, w.label));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.line(), input.filename().string() + ": " + e.what());
    }
  }
  auto filtered = filter_low_attendance(merge_datasets(w.label, parts), max_missed);
  for (const auto& warning : filtered.warnings()) std::clog << "warning: " << warning << '\n';
  return filtered;
}

void stage_ingest(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout) {
  const auto filtered = ingest_window(w, cfg.max_missed);
  write_file_atomic(layout.dataset(w.label),
                    [&](std::ostream& o) { write_canonical(o, filtered); });
  const auto parties = group_discipline(filtered, party_assignment(filtered), cfg.discipline);
  write_file_atomic(layout.party_discipline(w.label),
                    [&](std::ostream& o) { formats::write_discipline(o, parties); });
}

void stage_graph(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout) {
  const auto d = load_dataset(layout.dataset(w.label));
  const auto full = build_graph(d);
  if (full.edge_count() == 0) throw std::runtime_error("similarity graph has no edges");
  write_file_atomic(layout.similarity_cdf(w.label), [&](std::ostream& o) {
    o << "# weight\tcumulative_fraction\n";
    for (const auto& p : weight_distribution(full)) {
      o << detail::format_exact(p.weight) << '\t' << detail::format_exact(p.cumulative) << '\n';
    }
  });
  const auto filtered = percentile_filter(full, w.percentile.value_or(cfg.percentile));
  formats::save_graph(layout.ideological(w.label), filtered);
  write_file_atomic(with_suffix(layout.ideological(w.label), ".stats.tsv"), [&](std::ostream& o) {
    formats::write_stats(o, stats_or_empty(filtered, cfg.path_averaging));
  });
}

void stage_detect(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout) {
  const auto d = load_dataset(layout.dataset(w.label));
  const auto g = formats::load_graph(layout.ideological(w.label));
  const auto p = detect(g, cfg);
  write_community_outputs(layout.ideological(w.label), g, p, d, cfg);
}

void stage_polarize(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout) {
  const auto d = load_dataset(layout.dataset(w.label));
  const auto g = formats::load_graph(layout.ideological(w.label));
  const auto thresholds = parse_sweep_range(cfg.sweep);
  const auto curve = threshold_sweep(g, thresholds, cfg.seed, cfg.restarts);
  const double threshold =
      w.overlap_threshold ? *w.overlap_threshold : select_threshold(curve, cfg.min_retained);
  write_file_atomic(layout.sweep(w.label),
                    [&](std::ostream& o) { formats::write_sweep(o, curve, threshold); });

  const auto strong = strong_tie_subgraph(g, classify_ties(g, threshold));
  formats::save_graph(layout.polarized(w.label), strong);
  write_file_atomic(with_suffix(layout.polarized(w.label), ".stats.tsv"), [&](std::ostream& o) {
    formats::write_stats(o, stats_or_empty(strong, cfg.path_averaging));
  });
  const auto p = detect(strong, cfg);
  write_community_outputs(layout.polarized(w.label), strong, p, d, cfg);
}

void write_temporal_outputs(const std::vector<WindowPartition>& windows, bool churn,
                            const fs::path& temporal, const fs::path& flows_path) {
  std::vector<formats::TemporalRow> rows;
  std::ostringstream flows;
  flows << "# window_x\tcommunity_x\twindow_x1\tcommunity_x1\tcount\n";
  for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
    const WindowPair wp{windows[i], windows[i + 1]};
    formats::TemporalRow row{windows[i].label, windows[i + 1].label, std::nullopt, std::nullopt};
    if (!windows[i].community.empty()) row.persistence = persistence(wp);
    const auto table = flow_table(wp);
    if (!table.rows.empty()) row.nmi = nmi(wp);
    formats::write_flow(flows, table, churn);
    rows.push_back(std::move(row));
  }
  write_file_atomic(temporal, [&](std::ostream& o) { formats::write_temporal(o, rows); });
  write_file_atomic(flows_path, [&](std::ostream& o) { o << flows.str(); });
}

void stage_temporal(const PipelineConfig& cfg, const RunLayout& layout) {
  std::vector<WindowPartition> windows;
  for (const auto& w : cfg.windows) {
    std::ifstream in(with_suffix(layout.polarized(w.label), ".partition.tsv"));
    if (!in) throw formats::FormatError("missing polarized partition for window '" + w.label + "'");
    auto file = formats::read_partition(in);
    windows.push_back(WindowPartition::from(w.label, file.partition));
  }
  write_temporal_outputs(windows, cfg.flow_churn, layout.temporal(), layout.flows());
}

void stage_report(const PipelineConfig& cfg, const RunLayout& layout) {
  for (const auto kind : {ReportKind::Datasets, ReportKind::Ideological, ReportKind::Polarized,
                          ReportKind::Temporal}) {
    const auto table = render_report(kind, cfg, layout);
    const auto base = layout.reports() / report_kind_name(kind);
    write_file_atomic(with_suffix(base, ".txt"), [&](std::ostream& o) { o << table.to_text(); });
    write_file_atomic(with_suffix(base, ".tsv"), [&](std::ostream& o) { o << table.to_tsv(); });
  }
}

void run_stage(const PipelineConfig& cfg, const RunLayout& layout, Stage stage) {
  using WindowStage = void (*)(const PipelineConfig&, const WindowConfig&, const RunLayout&);
  WindowStage fn = nullptr;
  switch (stage) {
    case Stage::Ingest: fn = stage_ingest; break;
    case Stage::Graph: fn = stage_graph; break;
    case Stage::Detect: fn = stage_detect; break;
    case Stage::Polarize: fn = stage_polarize; break;
    case Stage::Temporal:
    case Stage::Report:
      try {
        stage == Stage::Temporal ? stage_temporal(cfg, layout) : stage_report(cfg, layout);
      } catch (const std::exception& e) {
        throw StageError(stage_name(stage), "", e.what());
      }
      return;
  }

  std::vector<std::future<void>> jobs;
  for (const auto& w : cfg.windows) {
    jobs.push_back(std::async(std::launch::async, [&, fn] { fn(cfg, w, layout); }));
  }
  std::optional<StageError> first_error;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& label = cfg.windows[i].label;
    try {
      jobs[i].get();
      fs::remove(layout.partial_marker(label));
    } catch (const std::exception& e) {
      fs::create_directories(layout.window_dir(label));
      std::ofstream(layout.partial_marker(label)) << stage_name(stage) << '\t' << e.what() << '\n';
      if (!first_error) first_error.emplace(stage_name(stage), label, e.what());
    }
  }
  if (first_error) throw *first_error;
}

void write_manifest(const PipelineConfig& cfg, const RunLayout& layout) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(layout.root)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), layout.root);
    const auto name = rel.filename().string();
    if (rel == "manifest.tsv" || name == ".partial" || name.ends_with(".tmp")) continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
  write_file_atomic(layout.manifest(), [&](std::ostream& o) {
    o << "#@config_hash\t" << config_hash(cfg) << '\n';
    o << "#@seed\t" << cfg.seed << '\n';
    o << "#@restarts\t" << cfg.restarts << '\n';
    o << "# path\tbytes\tfnv1a64\n";
    for (const auto& f : files) {
      const auto bytes = formats::read_file(layout.root / f);
      o << f.generic_string() << '\t' << bytes.size() << '\t' << hex(fnv1a(bytes)) << '\n';
    }
  });
}

std::vector<fs::path> run_pipeline(const PipelineConfig& cfg) {
  validate(cfg);
  const RunLayout layout{cfg.output};
  fs::create_directories(layout.root);
  for (const auto stage : {Stage::Ingest, Stage::Graph, Stage::Detect, Stage::Polarize,
                           Stage::Temporal, Stage::Report}) {
    run_stage(cfg, layout, stage);
  }
  write_manifest(cfg, layout);

  std::vector<fs::path> artifacts;
  for (const auto& entry : fs::recursive_directory_iterator(layout.root)) {
    if (entry.is_regular_file()) artifacts.push_back(fs::relative(entry.path(), layout.root));
  }
  std::sort(artifacts.begin(), artifacts.end());
  return artifacts;
}

std::optional<ReportKind> report_kind_from_name(const std::string& name) {
  for (const auto k : {ReportKind::Datasets, ReportKind::Ideological, ReportKind::Polarized,
                       ReportKind::Temporal}) {
    if (name == report_kind_name(k)) return k;
  }
  return std::nullopt;
}

const char* report_kind_name(ReportKind k) {
  switch (k) {
    case ReportKind::Datasets: return "datasets";
    case ReportKind::Ideological: return "ideological";
    case ReportKind::Polarized: return "polarized";
    case ReportKind::Temporal: return "temporal";
  }
  return "?";
}

namespace {

std::string percent(const std::optional<double>& v) {
  return v ? detail::format_fixed(*v * 100.0, 2) + "%" : "-";
}
std::string points(const std::optional<double>& v) {
  return v ? detail::format_fixed(*v * 100.0, 2) : "-";
}
std::string real(double v) { return detail::format_fixed(v, 2); }

std::ifstream open_artifact(const fs::path& path, const std::string& window) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("missing artifact '" + path.filename().string() + "' for window '" +
                             window + "'");
  }
  return in;
}

std::vector<std::string> network_row(const std::string& label, const fs::path& prefix) {
  auto stats_in = open_artifact(with_suffix(prefix, ".stats.tsv"), label);
  auto part_in = open_artifact(with_suffix(prefix, ".partition.tsv"), label);
  auto disc_in = open_artifact(with_suffix(prefix, ".discipline.tsv"), label);
  const auto s = formats::read_stats(stats_in);
  const auto p = formats::read_partition(part_in);
  const auto d = formats::read_discipline(disc_in);
  return {label,
          std::to_string(s.node_count),
          std::to_string(s.edge_count),
          std::to_string(s.connected_components),
          real(s.avg_shortest_path),
          real(s.avg_degree),
          real(s.clustering_coefficient),
          real(s.density),
          std::to_string(p.partition.community_count),
          real(p.partition.modularity),
          percent(d.average_group_discipline()),
          points(d.group_discipline_sd())};
}

}  // namespace

ReportTable render_report(ReportKind kind, const PipelineConfig& cfg, const RunLayout& layout) {
  ReportTable t;
  switch (kind) {
    case ReportKind::Datasets:
      t.title = "Overview of datasets";
      t.columns = {"Leg.", "Year", "President (Party)", "# of Voting Sessions", "# of Votes",
                   "# of Parties", "# of Members", "Avg. PD", "SD PD"};
      for (const auto& w : cfg.windows) {
        auto data_in = open_artifact(layout.dataset(w.label), w.label);
        auto disc_in = open_artifact(layout.party_discipline(w.label), w.label);
        const auto d = parse_canonical(data_in);
        const auto r = formats::read_discipline(disc_in);
        t.rows.push_back({w.legislature.empty() ? "-" : w.legislature, w.label,
                          w.president.empty() ? "-" : w.president,
                          std::to_string(d.sessions().size()),
                          std::to_string(d.counted_vote_total()), std::to_string(d.party_count()),
                          std::to_string(d.members().size()), percent(r.average_group_discipline()),
                          points(r.group_discipline_sd())});
      }
      break;
    case ReportKind::Ideological:
    case ReportKind::Polarized:
      t.title = kind == ReportKind::Ideological
                    ? "Characterization of networks and ideological communities"
                    : "Characterization of strongly tied networks and polarized communities";
      t.columns = {"Year",  "# of Nodes", "# of Edges", "# of CC", "Avg. SPL", "Avg. Degree",
                   "Avg. Clustering", "Density", "# of Comm.", "Mod.", "Avg. PD", "SD PD"};
      for (const auto& w : cfg.windows) {
        t.rows.push_back(network_row(w.label, kind == ReportKind::Ideological
                                                  ? layout.ideological(w.label)
                                                  : layout.polarized(w.label)));
      }
      break;
    case ReportKind::Temporal: {
      t.title = "Temporal evolution of polarized communities";
      t.columns = {"Years", "Persistence", "NMI"};
      if (cfg.windows.size() < 2) break;
      auto in = open_artifact(layout.temporal(), "*");
      for (const auto& row : formats::read_temporal(in)) {
        const bool excluded =
            std::find(cfg.exclude_pairs.begin(), cfg.exclude_pairs.end(),
                      std::make_pair(row.earlier, row.later)) != cfg.exclude_pairs.end();
        if (excluded) continue;
        t.rows.push_back({row.earlier + " - " + row.later, percent(row.persistence),
                          row.nmi ? real(*row.nmi) : "-"});
      }
      break;
    }
  }
  return t;
}

std::string ReportTable::to_text() const {
  std::vector<std::size_t> width(columns.size(), 0);
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
    }
    out << '\n';
  };
  emit(columns);
  std::size_t total = 0;
  for (const auto w : width) total += w;
  out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::string ReportTable::to_tsv() const {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "\t" : "") << cells[c];
    out << '\n';
  };
  emit(columns);
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace votenet
