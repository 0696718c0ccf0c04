#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"

namespace fixture {

inline int party_of(int member) { return member < 9 ? 0 : (member < 17 ? 1 : 2); }

// 3 parties, 20 members, 30 sessions with uneven loyalty, attendance gaps,
// obstruction and frequent ties inside the small party.
inline std::vector<oracle::Ballot> three_party(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* options[] = {"YES", "NO", "OBSTRUCTION"};
  std::vector<oracle::Ballot> ballots;
  for (int s = 0; s < 30; ++s) {
    int line[3];
    for (auto& l : line) l = static_cast<int>(rng() % 3);
    for (int m = 0; m < 20; ++m) {
      std::string opt;
      if (u(rng) < 0.15) opt = "NOT_COUNTED";
      else if (u(rng) < 0.8) opt = options[line[party_of(m)]];
      else opt = options[rng() % 3];
      ballots.push_back({"s" + std::to_string(s), "m" + std::to_string(m), opt});
    }
  }
  return ballots;
}

// Canonical TSV text for the ballots, with party "P<k>".
inline std::string three_party_text(const std::vector<oracle::Ballot>& ballots) {
  std::string text;
  for (const auto& b : ballots) {
    const auto party = "P" + std::to_string(party_of(std::stoi(b.member.substr(1))));
    text += b.session + "\t" + b.member + "\t" + party + "\t" + b.option + "\n";
  }
  return text;
}

}  // namespace fixture
