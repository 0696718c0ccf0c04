// Format adapters for downloaded roll-call dumps. Layouts accepted here are
// documented in docs/formats.md.

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"
#include "text_util.hpp"
#include "votenet/ingest.hpp"

namespace votenet {

namespace {

using nlohmann::json;
namespace pt = boost::property_tree;

struct Collector {
  const AdapterOptions& options;
  std::vector<Session> sessions;
  std::vector<VoteRecord> records;
  std::map<std::string, int> id_uses;

  bool accepts(const std::string& when) const {
    return options.date_prefix.empty() || when.starts_with(options.date_prefix);
  }

  // Returns a session id unique within this dump.
  std::string add_session(std::string id, std::string when) {
    const int uses = id_uses[id]++;
    if (uses > 0) id += "#" + std::to_string(uses + 1);
    sessions.push_back({id, std::move(when)});
    return id;
  }

  VoteDataset finish() {
    const bool all_timed = std::all_of(sessions.begin(), sessions.end(),
                                       [](const Session& s) { return !s.when.empty(); });
    if (all_timed) {
      std::stable_sort(sessions.begin(), sessions.end(),
                       [](const Session& a, const Session& b) { return a.when < b.when; });
    }
    return VoteDataset::build(options.window_label, std::move(sessions), std::move(records));
  }
};

std::string trimmed(std::string_view s) { return std::string(detail::trim(s)); }

VoteOption map_camara_option(const std::string& raw) {
  const std::string token = trimmed(raw);
  if (token == "Sim") return VoteOption::Yes;
  if (token == "Não" || token == "Nao") return VoteOption::No;
  if (token == "Obstrução" || token == "Obstrucao") return VoteOption::Obstruction;
  if (token == "Abstenção" || token == "Abstencao" || token == "Art. 17" ||
      token == "Artigo 17" || token == "Ausente" || token == "-" || token.empty()) {
    return VoteOption::NotCounted;
  }
  throw ParseError(ParseError::Kind::UnknownOption, 0, "unmapped vote option '" + token + "'");
}

// "8/4/2003" + "19:33" -> "2003-04-08T19:33"
std::string camara_timestamp(const std::string& date, const std::string& time) {
  int day = 0, month = 0, year = 0;
  if (std::sscanf(date.c_str(), "%d/%d/%d", &day, &month, &year) != 3) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  std::string out = buf;
  const auto t = trimmed(time);
  if (!t.empty()) out += "T" + t;
  return out;
}

void collect_votacao_elements(const pt::ptree& node, std::vector<const pt::ptree*>& out,
                              bool& saw_container) {
  for (const auto& [name, child] : node) {
    if (name == "Votacao") {
      out.push_back(&child);
    } else if (name != "<xmlattr>") {
      if (name == "Votacoes" || name == "proposicao") saw_container = true;
      collect_votacao_elements(child, out, saw_container);
    }
  }
}

VoteDataset camara_xml(std::istream& in, const AdapterOptions& options) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(ParseError::Kind::UnknownStructure, e.line(),
                     std::string("invalid XML: ") + e.message());
  }

  std::vector<const pt::ptree*> votacoes;
  bool saw_container = false;
  collect_votacao_elements(doc, votacoes, saw_container);
  if (votacoes.empty() && !saw_container) {
    throw ParseError(ParseError::Kind::UnknownStructure, 0,
                     "no <Votacao> elements and no <proposicao>/<Votacoes> container found");
  }

  Collector c{options, {}, {}, {}};
  for (const auto* v : votacoes) {
    const auto& attrs = v->get_child("<xmlattr>", pt::ptree{});
    const std::string cod = trimmed(attrs.get<std::string>("codSessao", ""));
    const std::string date = trimmed(attrs.get<std::string>("Data", ""));
    const std::string time = trimmed(attrs.get<std::string>("Hora", ""));
    const std::string when = camara_timestamp(date, time);
    if (!c.accepts(when)) continue;

    const std::string session = c.add_session(cod + ":" + date + ":" + time, when);
    for (const auto& [name, dep] : v->get_child("votos", pt::ptree{})) {
      if (name != "Deputado") continue;
      const auto& d = dep.get_child("<xmlattr>", pt::ptree{});
      std::string id = trimmed(d.get<std::string>("ideCadastro", ""));
      if (id.empty()) id = trimmed(d.get<std::string>("Nome", ""));
      if (id.empty()) {
        throw ParseError(ParseError::Kind::UnknownStructure, 0,
                         "<Deputado> without ideCadastro or Nome in session " + session);
      }
      c.records.push_back({session, std::move(id), trimmed(d.get<std::string>("Partido", "")),
                           map_camara_option(d.get<std::string>("Voto", ""))});
    }
  }
  return c.finish();
}

std::string json_text(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || j[key].is_null()) return {};
  const auto& v = j[key];
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// "2017-02-01T16:04:13" -> "2017-02-01T16:04"
std::string iso_minutes(std::string s) {
  if (s.size() > 16) s.resize(16);
  return s;
}

VoteDataset camara_json(const json& doc, const AdapterOptions& options) {
  const json* list = nullptr;
  if (doc.is_array()) {
    list = &doc;
  } else if (doc.is_object()) {
    for (const char* key : {"dados", "votacoes"}) {
      if (doc.contains(key) && doc[key].is_array()) {
        list = &doc[key];
        break;
      }
    }
  }
  if (list == nullptr) {
    throw ParseError(ParseError::Kind::UnknownStructure, 0,
                     "expected a JSON array or an object with a 'dados' or 'votacoes' array");
  }

  Collector c{options, {}, {}, {}};
  // Flat vote rows (one object per deputy vote) are grouped by idVotacao.
  std::map<std::string, std::string> flat_sessions;

  for (const auto& item : *list) {
    if (!item.is_object()) {
      throw ParseError(ParseError::Kind::UnknownStructure, 0, "array entries must be objects");
    }
    if (item.contains("votos")) {
      const std::string when = iso_minutes(
          json_text(item, "dataHoraRegistro").empty() ? json_text(item, "data")
                                                      : json_text(item, "dataHoraRegistro"));
      if (!c.accepts(when)) continue;
      const std::string session = c.add_session(json_text(item, "id"), when);
      for (const auto& voto : item["votos"]) {
        const auto& dep = voto.value("deputado_", json::object());
        c.records.push_back({session, json_text(dep, "id"), trimmed(json_text(dep, "siglaPartido")),
                             map_camara_option(json_text(voto, "tipoVoto"))});
      }
    } else if (item.contains("idVotacao")) {
      const std::string id = json_text(item, "idVotacao");
      const std::string when = iso_minutes(json_text(item, "dataHoraVoto"));
      auto it = flat_sessions.find(id);
      if (it == flat_sessions.end()) {
        if (!c.accepts(when)) continue;
        it = flat_sessions.emplace(id, c.add_session(id, when)).first;
      }
      const auto& dep = item.value("deputado_", json::object());
      c.records.push_back({it->second, json_text(dep, "id"),
                           trimmed(json_text(dep, "siglaPartido")),
                           map_camara_option(json_text(item, "voto"))});
    } else {
      throw ParseError(ParseError::Kind::UnknownStructure, 0,
                       "entry has neither 'votos' nor 'idVotacao'");
    }
  }
  return c.finish();
}

VoteOption map_propublica_position(const std::string& raw) {
  const std::string token = trimmed(raw);
  if (token == "Yes" || token == "Aye") return VoteOption::Yes;
  if (token == "No" || token == "Nay") return VoteOption::No;
  if (token == "Not Voting" || token == "Present") return VoteOption::NotCounted;
  throw ParseError(ParseError::Kind::UnknownOption, 0, "unmapped vote position '" + token + "'");
}

const json* find_vote_object(const json& doc) {
  if (!doc.is_object()) return nullptr;
  if (doc.contains("positions")) return &doc;
  if (doc.contains("results") && doc["results"].is_object()) {
    const auto& results = doc["results"];
    if (results.contains("votes") && results["votes"].is_object() &&
        results["votes"].contains("vote")) {
      return &results["votes"]["vote"];
    }
    if (results.contains("vote")) return &results["vote"];
  }
  if (doc.contains("vote") && doc["vote"].is_object()) return &doc["vote"];
  return nullptr;
}

std::vector<json> read_json_documents(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<json> docs;
  if (detail::trim(text).empty()) return docs;
  json whole = json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    docs.push_back(std::move(whole));
    return docs;
  }
  // JSON Lines: one document per non-empty line.
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw ParseError(ParseError::Kind::UnknownStructure, line_no, "invalid JSON document");
    }
    docs.push_back(std::move(j));
  }
  return docs;
}

}  // namespace

VoteDataset adapt_camara(std::istream& in, const AdapterOptions& options) {
  in >> std::ws;
  const int first = in.peek();
  if (first == '<') return camara_xml(in, options);
  if (first == std::char_traits<char>::eof()) {
    throw ParseError(ParseError::Kind::UnknownStructure, 0, "empty input");
  }
  const auto docs = read_json_documents(in);
  if (docs.size() != 1) {
    throw ParseError(ParseError::Kind::UnknownStructure, 0,
                     "expected a single JSON document or an XML document");
  }
  return camara_json(docs.front(), options);
}

VoteDataset adapt_propublica(std::istream& in, const AdapterOptions& options) {
  const auto docs = read_json_documents(in);
  std::vector<const json*> votes;
  for (const auto& doc : docs) {
    if (doc.is_array()) {
      for (const auto& item : doc) {
        const json* v = find_vote_object(item);
        if (v == nullptr) {
          throw ParseError(ParseError::Kind::UnknownStructure, 0,
                           "array entry is not a roll-call vote document");
        }
        votes.push_back(v);
      }
    } else {
      const json* v = find_vote_object(doc);
      if (v == nullptr) {
        throw ParseError(ParseError::Kind::UnknownStructure, 0,
                         "expected results.votes.vote with a 'positions' array");
      }
      votes.push_back(v);
    }
  }

  Collector c{options, {}, {}, {}};
  for (const json* v : votes) {
    std::string when = json_text(*v, "date");
    const std::string time = json_text(*v, "time");
    if (!when.empty() && !time.empty()) when += "T" + time.substr(0, 5);
    if (!c.accepts(when)) continue;
    const std::string id =
        json_text(*v, "congress") + "-" + json_text(*v, "session") + "-" + json_text(*v, "roll_call");
    const std::string session = c.add_session(id, when);
    if (!v->contains("positions") || !(*v)["positions"].is_array()) {
      throw ParseError(ParseError::Kind::UnknownStructure, 0,
                       "roll call " + id + " has no 'positions' array");
    }
    for (const auto& p : (*v)["positions"]) {
      c.records.push_back({session, json_text(p, "member_id"), trimmed(json_text(p, "party")),
                           map_propublica_position(json_text(p, "vote_position"))});
    }
  }
  return c.finish();
}

}  // namespace votenet
