#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "votenet/ingest.hpp"

namespace votenet::synth {

// Planted-bloc voting model. In every session each bloc takes a position
// (Yes/No at random, occasionally Obstruction); members attend with
// probability `attendance` and follow their bloc with probability `loyalty`,
// otherwise casting a different option.
struct BlocModel {
  std::size_t blocs = 2;
  std::size_t members = 200;
  std::size_t sessions = 100;
  double loyalty = 0.95;
  double attendance = 1.0;
  double obstruction_rate = 0.0;
  std::size_t parties_per_bloc = 1;
  std::uint64_t seed = 0;
  std::string window_label = "synthetic";
};

struct MemberSpec {
  std::string id;
  std::string party;
  std::size_t bloc = 0;
};

struct SyntheticWindow {
  VoteDataset dataset;
  std::map<std::string, std::size_t> bloc_of;
};

// Members "m000".."m199" split into contiguous, equally sized blocs.
std::vector<MemberSpec> default_members(const BlocModel& model);

SyntheticWindow generate(const BlocModel& model);
SyntheticWindow generate(const BlocModel& model, const std::vector<MemberSpec>& members);

}  // namespace votenet::synth
