#include "votenet/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace votenet {

WindowPartition WindowPartition::from(std::string label, const Partition& p) {
  WindowPartition w;
  w.label = std::move(label);
  for (std::size_t i = 0; i < p.members.size(); ++i) w.community.emplace(p.members[i], p.community[i]);
  return w;
}

double persistence(const WindowPair& wp) {
  if (wp.earlier.community.empty()) {
    throw std::invalid_argument("persistence: earlier window has no members");
  }
  std::size_t kept = 0;
  for (const auto& [member, _] : wp.earlier.community) kept += wp.later.community.contains(member);
  return static_cast<double>(kept) / static_cast<double>(wp.earlier.community.size());
}

namespace {

// Sums in ascending order so the result does not depend on how communities
// are labeled or which window comes first.
double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (const double t : terms) s += t;
  return s;
}

double entropy(const std::map<std::uint32_t, std::size_t>& counts, double n) {
  std::vector<double> terms;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    terms.push_back(-p * std::log(p));
  }
  return ordered_sum(std::move(terms));
}

}  // namespace

double nmi(const WindowPair& wp) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> joint;
  std::map<std::uint32_t, std::size_t> x_counts, y_counts;
  std::size_t n = 0;
  for (const auto& [member, x] : wp.earlier.community) {
    auto it = wp.later.community.find(member);
    if (it == wp.later.community.end()) continue;
    ++joint[{x, it->second}];
    ++x_counts[x];
    ++y_counts[it->second];
    ++n;
  }
  if (n == 0) throw std::invalid_argument("nmi: the two windows share no members");

  const double nd = static_cast<double>(n);
  const double hx = entropy(x_counts, nd);
  const double hy = entropy(y_counts, nd);
  const bool x_single = x_counts.size() == 1;
  const bool y_single = y_counts.size() == 1;
  if (x_single && y_single) return 1.0;
  if (x_single || y_single) return 0.0;

  std::vector<double> terms;
  for (const auto& [xy, c] : joint) {
    const double pxy = static_cast<double>(c) / nd;
    const double px = static_cast<double>(x_counts[xy.first]) / nd;
    const double py = static_cast<double>(y_counts[xy.second]) / nd;
    terms.push_back(pxy * std::log(pxy / (px * py)));
  }
  const double mi = ordered_sum(std::move(terms));
  return std::clamp(mi / std::sqrt(hx * hy), 0.0, 1.0);
}

FlowTable flow_table(const WindowPair& wp) {
  FlowTable t;
  t.earlier_label = wp.earlier.label;
  t.later_label = wp.later.label;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> cross;
  for (const auto& [member, x] : wp.earlier.community) {
    auto it = wp.later.community.find(member);
    if (it == wp.later.community.end()) {
      ++t.exited_count;
      ++t.exited_by_community[x];
      continue;
    }
    ++cross[{x, it->second}];
  }
  for (const auto& [member, y] : wp.later.community) {
    if (wp.earlier.community.contains(member)) continue;
    ++t.entered_count;
    ++t.entered_by_community[y];
  }
  for (const auto& [xy, c] : cross) t.rows.push_back({xy.first, xy.second, c});
  return t;
}

}  // namespace votenet
