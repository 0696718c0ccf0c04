#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "votenet/community.hpp"
#include "votenet/formats.hpp"
#include "votenet/pipeline.hpp"
#include "votenet/synth.hpp"
#include "votenet/temporal.hpp"
#include "votenet/tiestrength.hpp"

namespace fs = std::filesystem;
using namespace votenet;

namespace {

// Each stage subcommand runs either over a whole config (`--config`) or on
// explicit files. These hold the union of both option sets.
struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> windows;

  std::string format = "canonical";
  std::vector<std::string> inputs;
  std::string label;
  std::string date_prefix;
  double max_missed = 1.0 / 3.0;

  std::string dataset;
  std::string groups = "party";
  bool leave_one_out = false;

  double percentile = 90.0;
  bool stats = false;
  bool dot = false;
  bool gexf = false;

  std::string graph;
  std::uint64_t seed = 0;
  unsigned restarts = 8;
  std::string sweep = "0:0.6:0.05";
  double min_retained = 0.5;
  std::optional<double> overlap_threshold;

  std::string partitions;
  bool churn = false;
};

PipelineConfig resolve_config(const Options& o) {
  auto cfg = load_config(o.config);
  if (!o.out.empty()) {
    cfg.output = o.out;
  } else if (const char* env = std::getenv("VOTENET_OUT"); env && *env) {
    cfg.output = env;
  }
  validate(cfg);
  if (!o.windows.empty()) {
    std::vector<WindowConfig> picked;
    for (const auto& label : o.windows) {
      auto it = std::find_if(cfg.windows.begin(), cfg.windows.end(),
                             [&](const WindowConfig& w) { return w.label == label; });
      if (it == cfg.windows.end()) throw ConfigError("no window named '" + label + "'");
      picked.push_back(*it);
    }
    cfg.windows = std::move(picked);
  }
  return cfg;
}

fs::path output_path(const Options& o, const char* fallback) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("VOTENET_OUT"); env && *env) return fs::path(env) / fallback;
  throw ConfigError("--out is required without --config");
}

fs::path graph_prefix(const std::string& arg) {
  constexpr std::string_view suffix = ".edges.tsv";
  if (arg.size() > suffix.size() && arg.ends_with(suffix)) {
    return arg.substr(0, arg.size() - suffix.size());
  }
  return arg;
}

VoteDataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw formats::FormatError("cannot open dataset '" + path + "'");
  return parse_canonical(in);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required without --config");
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

void ingest_files(const Options& o) {
  if (o.inputs.empty()) throw ConfigError("--input is required without --config");
  WindowConfig w;
  w.label = o.label.empty() ? fs::path(o.inputs.front()).stem().string() : o.label;
  w.format = o.format;
  w.date_prefix = o.date_prefix;
  PipelineConfig cfg;
  cfg.max_missed = o.max_missed;
  for (const auto& i : o.inputs) w.inputs.emplace_back(i);
  cfg.windows.push_back(w);
  validate(cfg);

  const auto d = ingest_window(w, o.max_missed);
  const auto out = output_path(o, "dataset.tsv");
  ensure_parent(out);
  formats::write_file_atomic(out, [&](std::ostream& s) { write_canonical(s, d); });
}

void discipline_files(const Options& o) {
  require(o.dataset, "--dataset");
  const auto d = read_dataset(o.dataset);
  GroupAssignment groups;
  if (o.groups == "party") {
    groups = party_assignment(d);
  } else {
    std::ifstream in(o.groups);
    if (!in) throw formats::FormatError("cannot open assignment file '" + o.groups + "'");
    groups = community_assignment(formats::read_partition(in).partition);
  }
  DisciplineOptions opts;
  opts.leave_one_out = o.leave_one_out;
  const auto report = group_discipline(d, groups, opts);
  const auto out = output_path(o, "discipline.tsv");
  ensure_parent(out);
  formats::write_file_atomic(out, [&](std::ostream& s) { formats::write_discipline(s, report); });
}

void graph_files(const Options& o) {
  require(o.dataset, "--dataset");
  const auto d = read_dataset(o.dataset);
  const auto g = percentile_filter(build_graph(d), o.percentile);
  const auto prefix = output_path(o, "graph");
  ensure_parent(prefix);
  formats::save_graph(prefix, g);
  if (o.stats) {
    formats::write_file_atomic(with_suffix(prefix, ".stats.tsv"), [&](std::ostream& s) {
      formats::write_stats(s, graph_stats(g));
    });
  }
  if (o.dot) {
    formats::write_file_atomic(with_suffix(prefix, ".dot"),
                               [&](std::ostream& s) { formats::write_dot(s, g); });
  }
  if (o.gexf) {
    formats::write_file_atomic(with_suffix(prefix, ".gexf"),
                               [&](std::ostream& s) { formats::write_gexf(s, g); });
  }
}

void detect_files(const Options& o) {
  require(o.graph, "--graph");
  const auto g = formats::load_graph(graph_prefix(o.graph));
  const auto p = louvain_best_of(g, o.seed, o.restarts);
  const auto out = output_path(o, "partition.tsv");
  ensure_parent(out);
  formats::write_file_atomic(
      out, [&](std::ostream& s) { formats::write_partition(s, p, g.window_label()); });
}

void polarize_files(const Options& o) {
  require(o.graph, "--graph");
  const auto g = formats::load_graph(graph_prefix(o.graph));
  const auto thresholds = parse_sweep_range(o.sweep);
  const auto curve = threshold_sweep(g, thresholds, o.seed, o.restarts);
  const double t = o.overlap_threshold ? *o.overlap_threshold : select_threshold(curve, o.min_retained);
  const auto strong = strong_tie_subgraph(g, classify_ties(g, t));
  const auto p = louvain_best_of(strong, o.seed, o.restarts);

  const auto prefix = output_path(o, "polarized");
  ensure_parent(prefix);
  formats::write_file_atomic(with_suffix(prefix, ".sweep.tsv"),
                             [&](std::ostream& s) { formats::write_sweep(s, curve, t); });
  formats::save_graph(prefix, strong);
  formats::write_file_atomic(with_suffix(prefix, ".partition.tsv"), [&](std::ostream& s) {
    formats::write_partition(s, p, strong.window_label());
  });
}

void temporal_files(const Options& o) {
  require(o.partitions, "--partitions");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.partitions)) {
    if (e.is_regular_file() && e.path().string().ends_with(".partition.tsv")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<WindowPartition> windows;
  for (const auto& f : files) {
    std::ifstream in(f);
    auto file = formats::read_partition(in);
    auto label = file.window_label.empty() ? f.filename().string() : file.window_label;
    windows.push_back(WindowPartition::from(label, file.partition));
  }

  const auto prefix = output_path(o, "temporal");
  ensure_parent(prefix);
  write_temporal_outputs(windows, o.churn, with_suffix(prefix, ".temporal.tsv"),
                         with_suffix(prefix, ".flows.tsv"));
}

void write_synth_fixture(const synth::BlocModel& base, unsigned windows, const fs::path& dir) {
  fs::create_directories(dir);
  std::ostringstream cfg;
  cfg << "seed = " << base.seed << "\n\n";
  const auto members = synth::default_members(base);
  for (unsigned i = 0; i < windows; ++i) {
    auto model = base;
    model.seed = base.seed + i;
    model.window_label = "w" + std::to_string(i + 1);
    const auto window = synth::generate(model, members);
    const auto file = model.window_label + ".tsv";
    formats::write_file_atomic(dir / file,
                               [&](std::ostream& o) { write_canonical(o, window.dataset); });
    cfg << "[" << model.window_label << "]\nformat = canonical\ninputs = " << file << "\n\n";
  }
  formats::write_file_atomic(dir / "votenet.ini", [&](std::ostream& o) { o << cfg.str(); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roll-call vote network analysis"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub, bool windows) {
    sub->add_option("--config,-c", o.config, "pipeline config; runs the stage for every window")
        ->check(CLI::ExistingFile);
    sub->add_option("--out,-o", o.out, "output path (run root with --config)");
    if (windows) sub->add_option("--window,-w", o.windows, "restrict to these window labels");
  };

  auto* ingest = app.add_subcommand("ingest", "parse raw vote files into a filtered canonical dataset");
  add_config(ingest, true);
  ingest->add_option("--format", o.format)
      ->check(CLI::IsMember({"canonical", "camara", "propublica"}))
      ->capture_default_str();
  ingest->add_option("--input,-i", o.inputs, "raw input files, merged in order");
  ingest->add_option("--label", o.label, "window label");
  ingest->add_option("--date-prefix", o.date_prefix, "keep sessions whose timestamp starts with this");
  ingest->add_option("--max-missed", o.max_missed)->check(CLI::Range(0.0, 1.0))->capture_default_str();

  auto* discipline = app.add_subcommand("discipline", "partisan discipline report for a dataset");
  discipline->add_option("--dataset", o.dataset)->required();
  discipline->add_option("--groups", o.groups, "'party' or a partition file")->capture_default_str();
  discipline->add_flag("--leave-one-out", o.leave_one_out, "exclude the member's own vote from the majority");
  discipline->add_option("--out,-o", o.out);

  auto* graph = app.add_subcommand("graph", "build a similarity graph and apply the percentile filter");
  add_config(graph, true);
  graph->add_option("--dataset", o.dataset);
  graph->add_option("--percentile", o.percentile)->check(CLI::Range(0.0, 100.0))->capture_default_str();
  graph->add_flag("--stats", o.stats, "also write <prefix>.stats.tsv");
  graph->add_flag("--dot", o.dot, "also write <prefix>.dot");
  graph->add_flag("--gexf", o.gexf, "also write <prefix>.gexf");

  auto* detect = app.add_subcommand("detect", "detect communities with Louvain");
  add_config(detect, true);
  detect->add_option("--graph", o.graph, "graph prefix or .edges.tsv file");
  detect->add_option("--seed", o.seed)->capture_default_str();
  detect->add_option("--restarts", o.restarts)->check(CLI::PositiveNumber)->capture_default_str();

  auto* polarize = app.add_subcommand("polarize", "remove weak ties and detect polarized communities");
  add_config(polarize, true);
  polarize->add_option("--graph", o.graph, "graph prefix or .edges.tsv file");
  polarize->add_option("--sweep", o.sweep, "start:stop:step")->capture_default_str();
  polarize->add_option("--min-retained", o.min_retained)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  polarize->add_option("--overlap-threshold", o.overlap_threshold, "skip automatic selection")
      ->check(CLI::Range(0.0, 1.0));
  polarize->add_option("--seed", o.seed)->capture_default_str();
  polarize->add_option("--restarts", o.restarts)->check(CLI::PositiveNumber)->capture_default_str();

  auto* temporal = app.add_subcommand("temporal", "persistence, NMI and flows between consecutive windows");
  add_config(temporal, false);
  temporal->add_option("--partitions", o.partitions, "directory of *.partition.tsv files, ordered by name");
  temporal->add_flag("--churn", o.churn, "add EXITED/ENTERED rows to the flow file");

  auto* report = app.add_subcommand("report", "render the report tables");
  add_config(report, false);
  report->get_option("--config")->required();
  std::string report_kind;
  bool print_tsv = false;
  report->add_option("--kind", report_kind, "print one table")
      ->check(CLI::IsMember({"datasets", "ideological", "polarized", "temporal"}));
  report->add_flag("--tsv", print_tsv, "print tab-separated values");

  auto* run = app.add_subcommand("run", "run the full pipeline");
  add_config(run, false);
  run->get_option("--config")->required();
  std::string only_stage;
  run->add_option("--stage", only_stage, "run a single stage")
      ->check(CLI::IsMember({"ingest", "graph", "detect", "polarize", "temporal", "report"}));

  auto* synth_cmd = app.add_subcommand("synth", "generate a planted-bloc fixture");
  synth::BlocModel model;
  unsigned windows = 1;
  std::string synth_out;
  synth_cmd->add_option("--config,-c", o.config, "ignored; accepted for uniformity");
  synth_cmd->add_option("--blocs", model.blocs)->capture_default_str();
  synth_cmd->add_option("--members", model.members)->capture_default_str();
  synth_cmd->add_option("--sessions", model.sessions)->capture_default_str();
  synth_cmd->add_option("--loyalty", model.loyalty)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--attendance", model.attendance)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--parties-per-bloc", model.parties_per_bloc)->capture_default_str();
  synth_cmd->add_option("--seed", model.seed)->capture_default_str();
  synth_cmd->add_option("--windows", windows, "one dataset per window plus a votenet.ini")
      ->capture_default_str();
  synth_cmd->add_option("dir", synth_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) {
      write_synth_fixture(model, windows, synth_out);
      std::cout << "wrote " << windows << " window(s) to " << synth_out << '\n';
      return 0;
    }
    if (discipline->parsed()) {
      discipline_files(o);
      return 0;
    }

    const std::map<CLI::App*, Stage> stages = {
        {ingest, Stage::Ingest},     {graph, Stage::Graph},   {detect, Stage::Detect},
        {polarize, Stage::Polarize}, {temporal, Stage::Temporal}, {report, Stage::Report}};
    if (o.config.empty()) {
      if (ingest->parsed()) ingest_files(o);
      else if (graph->parsed()) graph_files(o);
      else if (detect->parsed()) detect_files(o);
      else if (polarize->parsed()) polarize_files(o);
      else if (temporal->parsed()) temporal_files(o);
      return 0;
    }

    const auto cfg = resolve_config(o);
    const RunLayout layout{cfg.output};
    fs::create_directories(layout.root);
    if (run->parsed()) {
      if (only_stage.empty()) {
        const auto artifacts = run_pipeline(cfg);
        std::cout << artifacts.size() << " artifacts under " << layout.root.string() << '\n';
      } else {
        run_stage(cfg, layout, *stage_from_name(only_stage));
        write_manifest(cfg, layout);
      }
      return 0;
    }
    for (const auto& [sub, stage] : stages) {
      if (!sub->parsed()) continue;
      run_stage(cfg, layout, stage);
      if (stage == Stage::Report) {
        for (const auto kind : {ReportKind::Datasets, ReportKind::Ideological,
                                ReportKind::Polarized, ReportKind::Temporal}) {
          if (!report_kind.empty() && report_kind != report_kind_name(kind)) continue;
          const auto table = render_report(kind, cfg, layout);
          std::cout << (print_tsv ? table.to_tsv() : table.to_text()) << '\n';
        }
      }
      write_manifest(cfg, layout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
