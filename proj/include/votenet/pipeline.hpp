#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "votenet/discipline.hpp"
#include "votenet/graph.hpp"
#include "votenet/ingest.hpp"
#include "votenet/temporal.hpp"

namespace votenet {

namespace fs = std::filesystem;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string window, const std::string& what);
  const std::string& stage() const { return stage_; }
  const std::string& window() const { return window_; }

 private:
  std::string stage_;
  std::string window_;
};

struct WindowConfig {
  std::string label;
  std::string format = "canonical";  // canonical | camara | propublica
  std::vector<fs::path> inputs;
  std::string date_prefix;
  std::optional<double> percentile;
  std::optional<double> overlap_threshold;
  std::string legislature;
  std::string president;
};

struct PipelineConfig {
  std::vector<WindowConfig> windows;
  double max_missed = 1.0 / 3.0;
  double percentile = 90.0;
  std::string sweep = "0:0.6:0.05";
  double min_retained = 0.5;
  std::uint64_t seed = 0;
  unsigned restarts = 8;
  fs::path output = "votenet-out";
  std::vector<std::pair<std::string, std::string>> exclude_pairs;
  bool flow_churn = false;
  PathAveraging path_averaging = PathAveraging::ConnectedPairs;
  DisciplineOptions discipline;
  // Raw config text; its hash identifies a run in the manifest.
  std::string source_text;
};

// INI-style text: global `key = value` lines, then one `[label]` section per
// window. Relative input paths resolve against `base_dir`.
PipelineConfig parse_config(std::istream& in, const fs::path& base_dir = {});
PipelineConfig load_config(const fs::path& path);
void validate(const PipelineConfig& cfg);

std::string config_hash(const PipelineConfig& cfg);

// Artifact layout of a run rooted at `root`.
struct RunLayout {
  fs::path root;

  fs::path window_dir(const std::string& label) const { return root / "windows" / label; }
  fs::path dataset(const std::string& l) const { return window_dir(l) / "dataset.tsv"; }
  fs::path party_discipline(const std::string& l) const { return window_dir(l) / "party.discipline.tsv"; }
  fs::path similarity_cdf(const std::string& l) const { return window_dir(l) / "similarity.cdf.tsv"; }
  fs::path ideological(const std::string& l) const { return window_dir(l) / "ideological"; }
  fs::path polarized(const std::string& l) const { return window_dir(l) / "polarized"; }
  fs::path sweep(const std::string& l) const { return window_dir(l) / "sweep.tsv"; }
  fs::path partial_marker(const std::string& l) const { return window_dir(l) / ".partial"; }
  fs::path temporal() const { return root / "temporal.tsv"; }
  fs::path flows() const { return root / "flows.tsv"; }
  fs::path reports() const { return root / "reports"; }
  fs::path manifest() const { return root / "manifest.tsv"; }
};

// Suffixes appended to the ideological/polarized prefixes.
fs::path with_suffix(const fs::path& prefix, const char* suffix);

enum class Stage { Ingest, Graph, Detect, Polarize, Temporal, Report };
const char* stage_name(Stage s);
std::optional<Stage> stage_from_name(const std::string& name);

// Reads and merges a window's inputs, then drops low-attendance members.
VoteDataset ingest_window(const WindowConfig& w, double max_missed);

// Per-window stages; each reads the previous stage's files from `layout`.
void stage_ingest(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout);
void stage_graph(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout);
void stage_detect(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout);
void stage_polarize(const PipelineConfig& cfg, const WindowConfig& w, const RunLayout& layout);
// Persistence/NMI rows and flow tables for each consecutive pair of windows.
void write_temporal_outputs(const std::vector<WindowPartition>& windows, bool churn,
                            const fs::path& temporal, const fs::path& flows);

// Run-wide stages.
void stage_temporal(const PipelineConfig& cfg, const RunLayout& layout);
void stage_report(const PipelineConfig& cfg, const RunLayout& layout);

// Runs one stage for every window (or the run-wide stage) and wraps failures
// in StageError, leaving a `.partial` marker in the failing window.
void run_stage(const PipelineConfig& cfg, const RunLayout& layout, Stage stage);

// Full pipeline plus manifest. Returns the artifact paths relative to root.
std::vector<fs::path> run_pipeline(const PipelineConfig& cfg);

void write_manifest(const PipelineConfig& cfg, const RunLayout& layout);

enum class ReportKind { Datasets, Ideological, Polarized, Temporal };
std::optional<ReportKind> report_kind_from_name(const std::string& name);
const char* report_kind_name(ReportKind k);

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const;
  std::string to_tsv() const;
};

ReportTable render_report(ReportKind kind, const PipelineConfig& cfg, const RunLayout& layout);

}  // namespace votenet
