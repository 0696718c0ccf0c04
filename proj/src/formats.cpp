#include "votenet/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "text_util.hpp"

namespace votenet::formats {

namespace fs = std::filesystem;
using detail::format_exact;
using detail::split_tabs;

namespace {

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line) + ": invalid number '" + s + "'");
  }
  return v;
}

std::size_t to_size(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line) + ": invalid count '" + s + "'");
  }
  return v;
}

// Calls `row` for data lines and `meta` for `#@` directives.
template <class Row, class Meta>
void scan(std::istream& in, Row&& row, Meta&& meta) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line.starts_with("#@")) {
      meta(split_tabs(line), n);
    } else if (line.front() != '#') {
      row(split_tabs(line), n);
    }
  }
}

void expect_fields(const std::vector<std::string>& f, std::size_t count, std::size_t line) {
  if (f.size() != count) {
    throw FormatError("line " + std::to_string(line) + ": expected " + std::to_string(count) +
                      " fields, found " + std::to_string(f.size()));
  }
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + tmp.string() + "' for writing");
    body(out);
    out.flush();
    if (!out) throw FormatError("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_edges(std::ostream& out, const SimilarityGraph& g) {
  out << "#@window\t" << g.window_label() << '\n';
  out << "# member_a\tmember_b\tweight\tco_attendance\n";
  for (const auto& e : g.edges()) {
    out << g.nodes()[e.a].id << '\t' << g.nodes()[e.b].id << '\t' << format_exact(e.weight) << '\t'
        << e.co_attendance << '\n';
  }
}

void write_nodes(std::ostream& out, const SimilarityGraph& g) {
  out << "#@window\t" << g.window_label() << '\n';
  out << "# member_id\tparty\n";
  for (const auto& n : g.nodes()) out << n.id << '\t' << n.party << '\n';
}

SimilarityGraph read_graph(std::istream& edges, std::istream& nodes) {
  std::string window;
  std::vector<Node> node_list;
  std::map<std::string, std::size_t> index;
  auto window_meta = [&](const std::vector<std::string>& f, std::size_t) {
    if (f[0] == "#@window" && f.size() >= 2) window = f[1];
  };
  scan(
      nodes,
      [&](const std::vector<std::string>& f, std::size_t line) {
        expect_fields(f, 2, line);
        if (!index.emplace(f[0], node_list.size()).second) {
          throw FormatError("line " + std::to_string(line) + ": duplicate node '" + f[0] + "'");
        }
        node_list.push_back({f[0], f[1]});
      },
      window_meta);

  std::vector<Edge> edge_list;
  scan(
      edges,
      [&](const std::vector<std::string>& f, std::size_t line) {
        expect_fields(f, 4, line);
        auto a = index.find(f[0]);
        auto b = index.find(f[1]);
        if (a == index.end() || b == index.end()) {
          throw FormatError("line " + std::to_string(line) + ": edge endpoint missing from node file");
        }
        const auto co = to_size(f[3], line);
        edge_list.push_back({a->second, b->second, to_double(f[2], line),
                             static_cast<std::uint32_t>(co)});
      },
      window_meta);
  try {
    return SimilarityGraph(window, std::move(node_list), std::move(edge_list));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

fs::path edges_path(const fs::path& prefix) {
  fs::path p = prefix;
  p += ".edges.tsv";
  return p;
}

fs::path nodes_path(const fs::path& prefix) {
  fs::path p = prefix;
  p += ".nodes.tsv";
  return p;
}

void save_graph(const fs::path& prefix, const SimilarityGraph& g) {
  write_file_atomic(edges_path(prefix), [&](std::ostream& o) { write_edges(o, g); });
  write_file_atomic(nodes_path(prefix), [&](std::ostream& o) { write_nodes(o, g); });
}

SimilarityGraph load_graph(const fs::path& prefix) {
  std::ifstream edges(edges_path(prefix));
  std::ifstream nodes(nodes_path(prefix));
  if (!edges || !nodes) {
    throw FormatError("cannot open graph files for prefix '" + prefix.string() + "'");
  }
  return read_graph(edges, nodes);
}

void write_dot(std::ostream& out, const SimilarityGraph& g) {
  out << "graph \"" << g.window_label() << "\" {\n";
  for (const auto& n : g.nodes()) {
    out << "  \"" << n.id << "\" [party=\"" << n.party << "\"];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  \"" << g.nodes()[e.a].id << "\" -- \"" << g.nodes()[e.b].id
        << "\" [weight=" << format_exact(e.weight) << "];\n";
  }
  out << "}\n";
}

void write_gexf(std::ostream& out, const SimilarityGraph& g) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.3\" version=\"1.3\">\n"
      << "  <graph defaultedgetype=\"undirected\">\n"
      << "    <attributes class=\"node\"><attribute id=\"0\" title=\"party\" type=\"string\"/></attributes>\n"
      << "    <nodes>\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto& n = g.nodes()[i];
    out << "      <node id=\"" << i << "\" label=\"" << xml_escape(n.id)
        << "\"><attvalues><attvalue for=\"0\" value=\"" << xml_escape(n.party)
        << "\"/></attvalues></node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto& e = g.edges()[k];
    out << "      <edge id=\"" << k << "\" source=\"" << e.a << "\" target=\"" << e.b
        << "\" weight=\"" << format_exact(e.weight) << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void write_partition(std::ostream& out, const Partition& p, const std::string& window_label) {
  out << "#@window\t" << window_label << '\n';
  out << "#@modularity\t" << format_exact(p.modularity) << '\n';
  out << "#@communities\t" << p.community_count << '\n';
  const auto sizes = p.community_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) out << "#@size\t" << c << '\t' << sizes[c] << '\n';
  out << "# member_id\tcommunity_id\n";
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    out << p.members[i] << '\t' << p.community[i] << '\n';
  }
}

PartitionFile read_partition(std::istream& in) {
  PartitionFile f;
  std::uint32_t max_id = 0;
  bool any = false;
  scan(
      in,
      [&](const std::vector<std::string>& row, std::size_t line) {
        expect_fields(row, 2, line);
        const auto c = static_cast<std::uint32_t>(to_size(row[1], line));
        f.partition.members.push_back(row[0]);
        f.partition.community.push_back(c);
        max_id = std::max(max_id, c);
        any = true;
      },
      [&](const std::vector<std::string>& meta, std::size_t line) {
        if (meta.size() < 2) return;
        if (meta[0] == "#@window") f.window_label = meta[1];
        if (meta[0] == "#@modularity") f.partition.modularity = to_double(meta[1], line);
      });
  f.partition.community_count = any ? max_id + 1 : 0;
  return f;
}

void write_stats(std::ostream& out, const GraphStats& s) {
  out << "nodes\t" << s.node_count << '\n'
      << "edges\t" << s.edge_count << '\n'
      << "connected_components\t" << s.connected_components << '\n'
      << "avg_shortest_path\t" << format_exact(s.avg_shortest_path) << '\n'
      << "avg_degree\t" << format_exact(s.avg_degree) << '\n'
      << "clustering_coefficient\t" << format_exact(s.clustering_coefficient) << '\n'
      << "avg_local_clustering\t" << format_exact(s.avg_local_clustering) << '\n'
      << "density\t" << format_exact(s.density) << '\n';
}

GraphStats read_stats(std::istream& in) {
  GraphStats s;
  scan(
      in,
      [&](const std::vector<std::string>& f, std::size_t line) {
        expect_fields(f, 2, line);
        const auto& k = f[0];
        if (k == "nodes") s.node_count = to_size(f[1], line);
        else if (k == "edges") s.edge_count = to_size(f[1], line);
        else if (k == "connected_components") s.connected_components = to_size(f[1], line);
        else if (k == "avg_shortest_path") s.avg_shortest_path = to_double(f[1], line);
        else if (k == "avg_degree") s.avg_degree = to_double(f[1], line);
        else if (k == "clustering_coefficient") s.clustering_coefficient = to_double(f[1], line);
        else if (k == "avg_local_clustering") s.avg_local_clustering = to_double(f[1], line);
        else if (k == "density") s.density = to_double(f[1], line);
      },
      [](const auto&, std::size_t) {});
  return s;
}

namespace {
std::string optional_number(const std::optional<double>& v) { return v ? format_exact(*v) : "NA"; }
}  // namespace

void write_discipline(std::ostream& out, const DisciplineReport& r) {
  out << "#@summary\t" << optional_number(r.average_group_discipline()) << '\t'
      << optional_number(r.group_discipline_sd()) << '\n';
  out << "# group\tgroup_id\tmembers\tundefined\tmean\tsd\n";
  for (const auto& [id, g] : r.per_group) {
    out << "group\t" << id << '\t' << g.members << '\t' << g.undefined << '\t'
        << optional_number(g.mean) << '\t' << optional_number(g.sd) << '\n';
  }
  out << "# member\tmember_id\tgroup_id\tpd\n";
  for (const auto& [member, group] : r.member_group) {
    auto it = r.per_member.find(member);
    out << "member\t" << member << '\t' << group << '\t'
        << (it == r.per_member.end() ? std::string("NA") : format_exact(it->second)) << '\n';
  }
}

DisciplineReport read_discipline(std::istream& in) {
  DisciplineReport r;
  auto optional_value = [](const std::string& s, std::size_t line) -> std::optional<double> {
    if (s == "NA") return std::nullopt;
    return to_double(s, line);
  };
  scan(
      in,
      [&](const std::vector<std::string>& f, std::size_t line) {
        if (f[0] == "group") {
          expect_fields(f, 6, line);
          r.per_group[f[1]] = {to_size(f[2], line), to_size(f[3], line),
                               optional_value(f[4], line), optional_value(f[5], line)};
        } else if (f[0] == "member") {
          expect_fields(f, 4, line);
          r.member_group[f[1]] = f[2];
          if (const auto pd = optional_value(f[3], line)) {
            r.per_member[f[1]] = *pd;
          } else {
            r.undefined_members.push_back(f[1]);
          }
        } else {
          throw FormatError("line " + std::to_string(line) + ": unknown row kind '" + f[0] + "'");
        }
      },
      [](const auto&, std::size_t) {});
  return r;
}

void write_sweep(std::ostream& out, const SweepCurve& c, std::optional<double> selected) {
  out << "#@base_members\t" << c.base_members << '\n';
  if (selected) out << "#@selected\t" << format_exact(*selected) << '\n';
  out << "# threshold\tmodularity\tretained_members\tcommunities\n";
  for (const auto& p : c.points) {
    out << format_exact(p.threshold) << '\t' << format_exact(p.modularity) << '\t'
        << p.retained_members << '\t' << p.communities << '\n';
  }
}

SweepFile read_sweep(std::istream& in) {
  SweepFile f;
  scan(
      in,
      [&](const std::vector<std::string>& row, std::size_t line) {
        if (row.size() != 3 && row.size() != 4) expect_fields(row, 4, line);
        SweepPoint p{to_double(row[0], line), to_double(row[1], line), to_size(row[2], line), 0};
        if (row.size() == 4) p.communities = to_size(row[3], line);
        f.curve.points.push_back(p);
      },
      [&](const std::vector<std::string>& meta, std::size_t line) {
        if (meta.size() < 2) return;
        if (meta[0] == "#@base_members") f.curve.base_members = to_size(meta[1], line);
        if (meta[0] == "#@selected") f.selected = to_double(meta[1], line);
      });
  return f;
}

void write_flow(std::ostream& out, const FlowTable& t, bool include_churn) {
  for (const auto& r : t.rows) {
    out << t.earlier_label << '\t' << r.from << '\t' << t.later_label << '\t' << r.to << '\t'
        << r.count << '\n';
  }
  if (!include_churn) return;
  for (const auto& [c, n] : t.exited_by_community) {
    out << t.earlier_label << '\t' << c << '\t' << t.later_label << "\tEXITED\t" << n << '\n';
  }
  for (const auto& [c, n] : t.entered_by_community) {
    out << t.earlier_label << "\tENTERED\t" << t.later_label << '\t' << c << '\t' << n << '\n';
  }
}

void write_temporal(std::ostream& out, const std::vector<TemporalRow>& rows) {
  out << "# window_x\twindow_x1\tpersistence\tnmi\n";
  for (const auto& r : rows) {
    out << r.earlier << '\t' << r.later << '\t' << optional_number(r.persistence) << '\t'
        << optional_number(r.nmi) << '\n';
  }
}

std::vector<TemporalRow> read_temporal(std::istream& in) {
  std::vector<TemporalRow> rows;
  scan(
      in,
      [&](const std::vector<std::string>& f, std::size_t line) {
        expect_fields(f, 4, line);
        auto value = [&](const std::string& v) -> std::optional<double> {
          if (v == "NA") return std::nullopt;
          return to_double(v, line);
        };
        rows.push_back({f[0], f[1], value(f[2]), value(f[3])});
      },
      [](const auto&, std::size_t) {});
  return rows;
}

}  // namespace votenet::formats
