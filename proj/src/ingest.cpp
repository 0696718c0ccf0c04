#include "votenet/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <unordered_set>

#include "text_util.hpp"

namespace votenet {

std::string_view to_token(VoteOption o) {
  switch (o) {
    case VoteOption::Yes: return "YES";
    case VoteOption::No: return "NO";
    case VoteOption::Obstruction: return "OBSTRUCTION";
    case VoteOption::NotCounted: return "NOT_COUNTED";
  }
  return "NOT_COUNTED";
}

std::optional<VoteOption> option_from_token(std::string_view token) {
  if (token == "YES") return VoteOption::Yes;
  if (token == "NO") return VoteOption::No;
  if (token == "OBSTRUCTION") return VoteOption::Obstruction;
  if (token == "NOT_COUNTED") return VoteOption::NotCounted;
  return std::nullopt;
}

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

VoteDataset VoteDataset::build(std::string window_label, std::vector<Session> sessions,
                               std::vector<VoteRecord> records) {
  VoteDataset d;
  d.window_label_ = std::move(window_label);

  for (auto& s : sessions) {
    if (d.session_lookup_.emplace(s.id, d.sessions_.size()).second) {
      d.sessions_.push_back(std::move(s));
    }
  }
  for (const auto& r : records) {
    if (d.session_lookup_.emplace(r.session_id, d.sessions_.size()).second) {
      d.sessions_.push_back({r.session_id, {}});
    }
    if (d.member_lookup_.emplace(r.member_id, d.members_.size()).second) {
      d.members_.push_back({r.member_id, {}});
    }
  }

  const std::size_t n_sessions = d.sessions_.size();
  d.votes_.assign(d.members_.size() * n_sessions, VoteOption::NotCounted);

  std::vector<char> seen(d.votes_.size(), 0);
  // Session index of the record that currently defines the member's party.
  std::vector<std::size_t> label_session(d.members_.size(), 0);
  std::vector<char> has_label(d.members_.size(), 0);
  std::vector<char> conflicting(d.members_.size(), 0);

  for (const auto& r : records) {
    const std::size_t m = d.member_lookup_.at(r.member_id);
    const std::size_t s = d.session_lookup_.at(r.session_id);
    const std::size_t cell = m * n_sessions + s;
    if (seen[cell]) {
      throw ParseError(ParseError::Kind::DuplicateVote, 0,
                       "duplicate vote for member '" + r.member_id + "' in session '" +
                           r.session_id + "'");
    }
    seen[cell] = 1;
    d.votes_[cell] = r.option;

    Member& member = d.members_[m];
    if (!has_label[m]) {
      member.party = r.party;
      label_session[m] = s;
      has_label[m] = 1;
    } else {
      if (r.party != member.party) conflicting[m] = 1;
      if (s >= label_session[m]) {
        member.party = r.party;
        label_session[m] = s;
      }
    }
  }

  for (std::size_t m = 0; m < d.members_.size(); ++m) {
    if (conflicting[m]) {
      d.warnings_.push_back("member '" + d.members_[m].id +
                            "' has several party labels in window '" + d.window_label_ +
                            "'; using most recent '" + d.members_[m].party + "'");
    }
  }

  // Records are rewritten with the resolved party so that every consumer sees
  // exactly one label per member.
  d.records_ = std::move(records);
  for (auto& r : d.records_) r.party = d.members_[d.member_lookup_.at(r.member_id)].party;
  return d;
}

std::optional<std::size_t> VoteDataset::member_index(std::string_view id) const {
  auto it = member_lookup_.find(std::string(id));
  if (it == member_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> VoteDataset::session_index(std::string_view id) const {
  auto it = session_lookup_.find(std::string(id));
  if (it == session_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VoteDataset::attended(std::size_t member) const {
  const auto row = votes_of(member);
  return static_cast<std::size_t>(
      std::count_if(row.begin(), row.end(), [](VoteOption o) { return is_counted(o); }));
}

std::size_t VoteDataset::counted_vote_total() const {
  return static_cast<std::size_t>(
      std::count_if(votes_.begin(), votes_.end(), [](VoteOption o) { return is_counted(o); }));
}

std::size_t VoteDataset::party_count() const {
  std::unordered_set<std::string> parties;
  for (const auto& m : members_) parties.insert(m.party);
  return parties.size();
}

VoteDataset parse_canonical(std::istream& in, std::string default_window_label) {
  std::string window = std::move(default_window_label);
  std::vector<Session> sessions;
  std::vector<VoteRecord> records;
  // (session, member) -> line of first occurrence, for line-accurate errors.
  std::unordered_map<std::string, std::size_t> first_line;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line.front() == '#') {
      const auto fields = detail::split_tabs(line);
      if (fields[0] == "#@window" && fields.size() >= 2) {
        window = fields[1];
      } else if (fields[0] == "#@session" && fields.size() >= 2) {
        sessions.push_back({fields[1], fields.size() >= 3 ? fields[2] : std::string{}});
      }
      continue;
    }

    const auto fields = detail::split_tabs(line);
    if (fields.size() != 4) {
      throw ParseError(ParseError::Kind::Malformed, line_no,
                       "expected 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      if (f.empty()) throw ParseError(ParseError::Kind::Malformed, line_no, "empty field");
    }
    const auto option = option_from_token(fields[3]);
    if (!option) {
      throw ParseError(ParseError::Kind::UnknownOption, line_no,
                       "unknown vote option '" + fields[3] + "'");
    }
    std::string key = fields[0];
    key.push_back('\t');
    key += fields[1];
    if (auto [it, inserted] = first_line.emplace(std::move(key), line_no); !inserted) {
      throw ParseError(ParseError::Kind::DuplicateVote, line_no,
                       "duplicate vote for member '" + fields[1] + "' in session '" + fields[0] +
                           "' (first seen on line " + std::to_string(it->second) + ")");
    }
    records.push_back({fields[0], fields[1], fields[2], *option});
  }
  return VoteDataset::build(std::move(window), std::move(sessions), std::move(records));
}

void write_canonical(std::ostream& out, const VoteDataset& d) {
  out << "#@window\t" << d.window_label() << '\n';
  for (const auto& s : d.sessions()) {
    out << "#@session\t" << s.id;
    if (!s.when.empty()) out << '\t' << s.when;
    out << '\n';
  }
  for (const auto& r : d.records()) {
    out << r.session_id << '\t' << r.member_id << '\t' << r.party << '\t' << to_token(r.option)
        << '\n';
  }
}

VoteDataset merge_datasets(std::string window_label, std::span<const VoteDataset> parts) {
  std::vector<Session> sessions;
  std::vector<VoteRecord> records;
  for (const auto& p : parts) {
    sessions.insert(sessions.end(), p.sessions().begin(), p.sessions().end());
    records.insert(records.end(), p.records().begin(), p.records().end());
  }
  const bool all_timed = std::all_of(sessions.begin(), sessions.end(),
                                     [](const Session& s) { return !s.when.empty(); });
  if (all_timed) {
    std::stable_sort(sessions.begin(), sessions.end(),
                     [](const Session& a, const Session& b) { return a.when < b.when; });
  }
  return VoteDataset::build(std::move(window_label), std::move(sessions), std::move(records));
}

VoteDataset filter_low_attendance(const VoteDataset& d, double max_missed_fraction) {
  if (!(max_missed_fraction >= 0.0 && max_missed_fraction <= 1.0)) {
    throw std::invalid_argument("max_missed_fraction must lie in [0, 1]");
  }
  const auto n_sessions = d.sessions().size();
  std::unordered_set<std::string> removed;
  for (std::size_t m = 0; m < d.members().size(); ++m) {
    if (n_sessions == 0) break;
    const auto missed = n_sessions - d.attended(m);
    // Divide rather than scale the threshold: 1.0/3.0 must compare equal to a
    // missed fraction of exactly one third.
    if (static_cast<double>(missed) / static_cast<double>(n_sessions) > max_missed_fraction) {
      removed.insert(d.members()[m].id);
    }
  }

  std::vector<VoteRecord> kept;
  kept.reserve(d.records().size());
  for (const auto& r : d.records()) {
    if (!removed.contains(r.member_id)) kept.push_back(r);
  }
  std::vector<Session> sessions(d.sessions().begin(), d.sessions().end());
  return VoteDataset::build(d.window_label(), std::move(sessions), std::move(kept));
}

namespace instrumentation {

namespace {
std::atomic<BallotObserver> g_observer{nullptr};
}

void set_ballot_observer(BallotObserver observer) { g_observer.store(observer); }
BallotObserver ballot_observer() { return g_observer.load(std::memory_order_relaxed); }

}  // namespace instrumentation

}  // namespace votenet
