#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace votenet {

// Only Yes, No and Obstruction carry a position. NotCounted covers absence,
// abstention and "not voting" and never reaches a similarity or discipline
// computation.
enum class VoteOption : std::uint8_t { NotCounted = 0, Yes = 1, No = 2, Obstruction = 3 };

constexpr bool is_counted(VoteOption o) { return o != VoteOption::NotCounted; }

std::string_view to_token(VoteOption o);
std::optional<VoteOption> option_from_token(std::string_view token);

struct VoteRecord {
  std::string session_id;
  std::string member_id;
  std::string party;
  VoteOption option = VoteOption::NotCounted;
};

struct Session {
  std::string id;
  // Sortable timestamp ("YYYY-MM-DDTHH:MM"), empty when unknown.
  std::string when;
};

struct Member {
  std::string id;
  std::string party;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Malformed, DuplicateVote, UnknownOption, UnknownStructure };

  ParseError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  // 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Normalized roll-call votes for one time window. Immutable once built; all
// accessors are safe for concurrent readers.
class VoteDataset {
 public:
  VoteDataset() = default;

  // Validates (session, member) uniqueness, adds sessions that only appear
  // in records, and resolves each member's party to the label on their most
  // recent record (session order). Conflicting labels produce a warning.
  static VoteDataset build(std::string window_label, std::vector<Session> sessions,
                           std::vector<VoteRecord> records);

  const std::string& window_label() const { return window_label_; }
  std::span<const Session> sessions() const { return sessions_; }
  std::span<const Member> members() const { return members_; }
  std::span<const VoteRecord> records() const { return records_; }
  std::span<const std::string> warnings() const { return warnings_; }

  std::optional<std::size_t> member_index(std::string_view id) const;
  std::optional<std::size_t> session_index(std::string_view id) const;

  // Dense member-by-session view; missing records read as NotCounted.
  VoteOption vote(std::size_t member, std::size_t session) const {
    return votes_[member * sessions_.size() + session];
  }
  std::span<const VoteOption> votes_of(std::size_t member) const {
    return {votes_.data() + member * sessions_.size(), sessions_.size()};
  }

  // Number of sessions in which the member cast a counted vote.
  std::size_t attended(std::size_t member) const;
  std::size_t counted_vote_total() const;
  std::size_t party_count() const;

 private:
  std::string window_label_;
  std::vector<Session> sessions_;
  std::vector<Member> members_;
  std::vector<VoteRecord> records_;
  std::vector<VoteOption> votes_;
  std::vector<std::string> warnings_;
  std::unordered_map<std::string, std::size_t> member_lookup_;
  std::unordered_map<std::string, std::size_t> session_lookup_;
};

// Canonical line format: `session_id \t member_id \t party \t option`.
// Lines starting with '#' are comments; `#@window` and `#@session` comment
// directives carry the window label and the full ordered session list.
VoteDataset parse_canonical(std::istream& in, std::string default_window_label = {});
void write_canonical(std::ostream& out, const VoteDataset& d);

struct AdapterOptions {
  std::string window_label;
  // Keeps only sessions whose timestamp starts with this prefix (e.g. "2017").
  std::string date_prefix;
};

VoteDataset adapt_camara(std::istream& in, const AdapterOptions& options = {});
VoteDataset adapt_propublica(std::istream& in, const AdapterOptions& options = {});

// Concatenates datasets of one window. Sessions are ordered by timestamp when
// every session has one, otherwise by first appearance.
VoteDataset merge_datasets(std::string window_label, std::span<const VoteDataset> parts);

// Removes members whose missed fraction is strictly greater than
// `max_missed_fraction`, together with their records. Sessions are kept.
VoteDataset filter_low_attendance(const VoteDataset& d, double max_missed_fraction = 1.0 / 3.0);

namespace instrumentation {

// Test hook: when installed, every ballot consumed by a similarity or
// discipline computation is reported to the observer.
using BallotObserver = void (*)(VoteOption);
void set_ballot_observer(BallotObserver observer);
BallotObserver ballot_observer();

}  // namespace instrumentation

}  // namespace votenet
