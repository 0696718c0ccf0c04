#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "votenet/community.hpp"
#include "votenet/discipline.hpp"
#include "votenet/graph.hpp"
#include "votenet/temporal.hpp"
#include "votenet/tiestrength.hpp"

// Text formats exchanged between pipeline stages. All are UTF-8,
// tab-separated, with '#' comment lines; `#@key<TAB>value` comment lines carry
// metadata that plain TSV readers can ignore.
namespace votenet::formats {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to `path` through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body);
std::string read_file(const std::filesystem::path& path);

// Edge list `member_a member_b weight co_attendance` plus a node side-file
// `member_id party`.
void write_edges(std::ostream& out, const SimilarityGraph& g);
void write_nodes(std::ostream& out, const SimilarityGraph& g);
SimilarityGraph read_graph(std::istream& edges, std::istream& nodes);

void save_graph(const std::filesystem::path& prefix, const SimilarityGraph& g);
SimilarityGraph load_graph(const std::filesystem::path& prefix);
std::filesystem::path edges_path(const std::filesystem::path& prefix);
std::filesystem::path nodes_path(const std::filesystem::path& prefix);

void write_dot(std::ostream& out, const SimilarityGraph& g);
void write_gexf(std::ostream& out, const SimilarityGraph& g);

// `member_id community_id` lines with a summary block of modularity and
// community sizes.
void write_partition(std::ostream& out, const Partition& p, const std::string& window_label);
struct PartitionFile {
  std::string window_label;
  Partition partition;
};
PartitionFile read_partition(std::istream& in);

void write_stats(std::ostream& out, const GraphStats& s);
GraphStats read_stats(std::istream& in);

// `member <id> <group> <pd|NA>` and `group <id> <members> <undefined> <mean> <sd>`
// rows plus `#@summary <avg> <sd>`.
void write_discipline(std::ostream& out, const DisciplineReport& r);
DisciplineReport read_discipline(std::istream& in);

// `threshold modularity retained_members communities`.
void write_sweep(std::ostream& out, const SweepCurve& c, std::optional<double> selected);
struct SweepFile {
  SweepCurve curve;
  std::optional<double> selected;
};
SweepFile read_sweep(std::istream& in);

// `window_x community_x window_x1 community_x1 count`; with churn enabled,
// EXITED/ENTERED pseudo-communities are added.
void write_flow(std::ostream& out, const FlowTable& t, bool include_churn = false);

struct TemporalRow {
  std::string earlier;
  std::string later;
  // Empty when undefined (no members in the earlier window, or none shared).
  std::optional<double> persistence;
  std::optional<double> nmi;
};
void write_temporal(std::ostream& out, const std::vector<TemporalRow>& rows);
std::vector<TemporalRow> read_temporal(std::istream& in);

}  // namespace votenet::formats
