#include "votenet/discipline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace votenet {

namespace {

using Tally = std::array<std::uint32_t, 3>;

std::size_t slot(VoteOption o) { return static_cast<std::size_t>(o) - 1; }

std::optional<VoteOption> plurality(const Tally& t) {
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] > t[best]) {
      best = i;
      tied = false;
    } else if (t[i] == t[best]) {
      tied = true;
    }
  }
  if (t[best] == 0 || tied) return std::nullopt;
  return static_cast<VoteOption>(best + 1);
}

std::vector<std::size_t> resolve_members(const VoteDataset& d, std::span<const std::string> ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto m = d.member_index(id);
    if (!m) throw std::invalid_argument("member '" + id + "' is not in the dataset");
    out.push_back(*m);
  }
  return out;
}

// Per-session ballot counts of a group.
std::vector<Tally> tally_group(const VoteDataset& d, std::span<const std::size_t> members) {
  const auto observer = instrumentation::ballot_observer();
  std::vector<Tally> tallies(d.sessions().size(), Tally{0, 0, 0});
  for (const auto m : members) {
    const auto row = d.votes_of(m);
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (!is_counted(row[s])) continue;
      if (observer) observer(row[s]);
      ++tallies[s][slot(row[s])];
    }
  }
  return tallies;
}

struct Agreement {
  std::size_t agreed = 0;
  std::size_t eligible = 0;
};

Agreement agreement_with(const VoteDataset& d, std::size_t member, std::span<const Tally> tallies,
                         bool member_in_group, const DisciplineOptions& options) {
  const auto observer = instrumentation::ballot_observer();
  Agreement a;
  const auto row = d.votes_of(member);
  for (std::size_t s = 0; s < row.size(); ++s) {
    if (!is_counted(row[s])) continue;
    if (observer) observer(row[s]);
    Tally t = tallies[s];
    if (options.leave_one_out && member_in_group) --t[slot(row[s])];
    const auto majority = plurality(t);
    if (!majority) continue;
    ++a.eligible;
    if (*majority == row[s]) ++a.agreed;
  }
  return a;
}

}  // namespace

GroupAssignment party_assignment(const VoteDataset& d) {
  GroupAssignment out;
  for (const auto& m : d.members()) out.emplace(m.id, m.party);
  return out;
}

std::optional<VoteOption> majority_option(const VoteDataset& d,
                                          std::span<const std::string> group,
                                          std::string_view session_id) {
  if (group.empty()) throw std::invalid_argument("majority_option: empty group");
  const auto s = d.session_index(session_id);
  if (!s) throw std::invalid_argument("unknown session '" + std::string(session_id) + "'");
  const auto observer = instrumentation::ballot_observer();
  Tally t{0, 0, 0};
  for (const auto m : resolve_members(d, group)) {
    const auto o = d.vote(m, *s);
    if (!is_counted(o)) continue;
    if (observer) observer(o);
    ++t[slot(o)];
  }
  return plurality(t);
}

double partisan_discipline(const VoteDataset& d, std::string_view member,
                           std::span<const std::string> group, const DisciplineOptions& options) {
  const auto m = d.member_index(member);
  if (!m) throw std::invalid_argument("member '" + std::string(member) + "' is not in the dataset");
  const auto members = resolve_members(d, group);
  const bool in_group = std::find(members.begin(), members.end(), *m) != members.end();
  const auto tallies = tally_group(d, members);
  const auto a = agreement_with(d, *m, tallies, in_group, options);
  if (a.eligible == 0) {
    throw UndefinedDiscipline("member '" + std::string(member) +
                              "' has no session with a counted vote and a group majority");
  }
  return static_cast<double>(a.agreed) / static_cast<double>(a.eligible);
}

DisciplineReport group_discipline(const VoteDataset& d, const GroupAssignment& assignment,
                                  const DisciplineOptions& options) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (const auto& [member, group] : assignment) {
    const auto m = d.member_index(member);
    if (!m) throw std::invalid_argument("member '" + member + "' is not in the dataset");
    groups[group].push_back(*m);
  }

  DisciplineReport report;
  report.member_group = assignment;
  for (const auto& [group, members] : groups) {
    const auto tallies = tally_group(d, members);
    std::vector<double> values;
    GroupDiscipline summary;
    for (const auto m : members) {
      const auto a = agreement_with(d, m, tallies, true, options);
      const auto& id = d.members()[m].id;
      if (a.eligible == 0) {
        report.undefined_members.push_back(id);
        ++summary.undefined;
        continue;
      }
      const double pd = static_cast<double>(a.agreed) / static_cast<double>(a.eligible);
      report.per_member.emplace(id, pd);
      values.push_back(pd);
    }
    summary.members = values.size();
    if (!values.empty()) {
      double sum = 0.0;
      for (const double v : values) sum += v;
      const double mean = sum / static_cast<double>(values.size());
      double sq = 0.0;
      for (const double v : values) sq += (v - mean) * (v - mean);
      const double denom = options.sample_sd && values.size() > 1
                               ? static_cast<double>(values.size() - 1)
                               : static_cast<double>(values.size());
      summary.mean = mean;
      summary.sd = std::sqrt(sq / denom);
    }
    report.per_group.emplace(group, summary);
  }
  return report;
}

std::optional<double> DisciplineReport::average_group_discipline() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [_, g] : per_group) {
    if (!g.mean) continue;
    sum += *g.mean;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> DisciplineReport::group_discipline_sd(bool sample) const {
  const auto mean = average_group_discipline();
  if (!mean) return std::nullopt;
  double sq = 0.0;
  std::size_t n = 0;
  for (const auto& [_, g] : per_group) {
    if (!g.mean) continue;
    sq += (*g.mean - *mean) * (*g.mean - *mean);
    ++n;
  }
  const double denom = sample && n > 1 ? static_cast<double>(n - 1) : static_cast<double>(n);
  return std::sqrt(sq / denom);
}

}  // namespace votenet
