#include "votenet/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace votenet::synth {

namespace {

// Uniform in [0, 1) from the top 53 bits; stable across standard libraries.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

VoteOption other_than(VoteOption position, std::mt19937_64& rng) {
  switch (position) {
    case VoteOption::Yes: return VoteOption::No;
    case VoteOption::No: return VoteOption::Yes;
    default: return uniform(rng) < 0.5 ? VoteOption::Yes : VoteOption::No;
  }
}

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, static_cast<int>(width), value);
  return buf;
}

std::size_t digits(std::size_t n) {
  std::size_t d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

}  // namespace

std::vector<MemberSpec> default_members(const BlocModel& model) {
  if (model.blocs == 0 || model.members < model.blocs) {
    throw std::invalid_argument("need at least one member per bloc");
  }
  std::vector<MemberSpec> out;
  const auto width = std::max<std::size_t>(3, digits(model.members - 1));
  for (std::size_t i = 0; i < model.members; ++i) {
    const std::size_t bloc = i * model.blocs / model.members;
    const std::size_t party = i % std::max<std::size_t>(1, model.parties_per_bloc);
    std::string party_label = model.parties_per_bloc <= 1
                                  ? padded("P", bloc, 1)
                                  : padded("B", bloc, 1) + padded("P", party, 1);
    out.push_back({padded("m", i, width), std::move(party_label), bloc});
  }
  return out;
}

SyntheticWindow generate(const BlocModel& model) { return generate(model, default_members(model)); }

SyntheticWindow generate(const BlocModel& model, const std::vector<MemberSpec>& members) {
  if (!(model.loyalty >= 0.0 && model.loyalty <= 1.0) ||
      !(model.attendance >= 0.0 && model.attendance <= 1.0) ||
      !(model.obstruction_rate >= 0.0 && model.obstruction_rate <= 1.0)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  std::size_t blocs = model.blocs;
  for (const auto& m : members) blocs = std::max(blocs, m.bloc + 1);

  std::mt19937_64 rng(model.seed);
  const auto width = std::max<std::size_t>(3, digits(model.sessions));
  std::vector<Session> sessions;
  std::vector<VoteRecord> records;
  records.reserve(model.sessions * members.size());
  std::vector<VoteOption> position(blocs);
  for (std::size_t s = 0; s < model.sessions; ++s) {
    const std::string sid = padded("s", s, width);
    sessions.push_back({sid, {}});
    for (auto& p : position) {
      if (uniform(rng) < model.obstruction_rate) {
        p = VoteOption::Obstruction;
      } else {
        p = uniform(rng) < 0.5 ? VoteOption::Yes : VoteOption::No;
      }
    }
    for (const auto& m : members) {
      if (uniform(rng) >= model.attendance) continue;
      const VoteOption bloc_position = position[m.bloc];
      const VoteOption cast =
          uniform(rng) < model.loyalty ? bloc_position : other_than(bloc_position, rng);
      records.push_back({sid, m.id, m.party, cast});
    }
  }

  SyntheticWindow w;
  for (const auto& m : members) w.bloc_of.emplace(m.id, m.bloc);
  w.dataset = VoteDataset::build(model.window_label, std::move(sessions), std::move(records));
  return w;
}

}  // namespace votenet::synth
