#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votenet/ingest.hpp"

namespace votenet {

// member_id -> group_id, where a group is a party or a detected community.
using GroupAssignment = std::map<std::string, std::string>;

GroupAssignment party_assignment(const VoteDataset& d);

class UndefinedDiscipline : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DisciplineOptions {
  // Exclude the member's own ballot when computing their group's majority.
  bool leave_one_out = false;
  // Divide by M-1 instead of M for the per-group standard deviation.
  bool sample_sd = false;
};

struct GroupDiscipline {
  std::size_t members = 0;   // members with a defined discipline value
  std::size_t undefined = 0; // members excluded for lack of eligible sessions
  std::optional<double> mean;
  std::optional<double> sd;
};

struct DisciplineReport {
  std::map<std::string, double> per_member;
  std::map<std::string, std::string> member_group;
  std::map<std::string, GroupDiscipline> per_group;
  std::vector<std::string> undefined_members;

  // Mean and standard deviation of the per-group means over groups that have
  // a value; these are the Avg. PD / SD PD summary columns.
  std::optional<double> average_group_discipline() const;
  std::optional<double> group_discipline_sd(bool sample = false) const;
};

// Strict plurality among the group's counted ballots in one session; nullopt
// when the top count is tied or nobody in the group cast a counted vote.
std::optional<VoteOption> majority_option(const VoteDataset& d,
                                          std::span<const std::string> group,
                                          std::string_view session_id);

// Fraction of eligible sessions in which `member` voted with the group's
// majority. A session is eligible when the member cast a counted vote and the
// group has a strict majority there.
double partisan_discipline(const VoteDataset& d, std::string_view member,
                           std::span<const std::string> group,
                           const DisciplineOptions& options = {});

DisciplineReport group_discipline(const VoteDataset& d, const GroupAssignment& assignment,
                                  const DisciplineOptions& options = {});

}  // namespace votenet
