#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "votenet/community.hpp"

namespace votenet {

// Polarized-community membership of one window: member_id -> community id.
struct WindowPartition {
  std::string label;
  std::map<std::string, std::uint32_t> community;

  static WindowPartition from(std::string label, const Partition& p);
};

struct WindowPair {
  const WindowPartition& earlier;
  const WindowPartition& later;
};

// |earlier ∩ later| / |earlier|.
double persistence(const WindowPair& wp);

// Normalized mutual information (geometric-mean normalization, natural log)
// of the two partitions restricted to their common members. When both
// restricted partitions have a single community the result is 1; when only
// one does it is 0.
double nmi(const WindowPair& wp);

struct FlowRow {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::size_t count = 0;
};

struct FlowTable {
  std::string earlier_label;
  std::string later_label;
  std::vector<FlowRow> rows;  // persisting members only, sorted by (from, to)
  std::size_t exited_count = 0;
  std::size_t entered_count = 0;
  std::map<std::uint32_t, std::size_t> exited_by_community;   // earlier communities
  std::map<std::uint32_t, std::size_t> entered_by_community;  // later communities
};

FlowTable flow_table(const WindowPair& wp);

}  // namespace votenet
