#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgg/arena.hpp"
#include "rgg/matrix_game.hpp"
#include "rgg/strategy.hpp"

namespace rgg {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string path;  // field location, e.g. "positions[3].owner"
  std::string message;
};

template <class T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty() && value.has_value(); }
};

namespace io_detail {

inline void reject_unknown(const Json& obj, const std::string& path,
                           std::initializer_list<const char*> known,
                           std::vector<Diagnostic>& diags) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) diags.push_back({path + "." + key, "unknown field"});
  }
}

inline std::optional<std::uint64_t> get_uint(const Json& obj, const char* key,
                                             const std::string& path,
                                             std::vector<Diagnostic>& diags) {
  if (!obj.contains(key)) return std::nullopt;
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    diags.push_back({path + "." + key, "expected a nonnegative integer"});
    return std::nullopt;
  }
  return v.get<std::uint64_t>();
}

inline std::optional<std::string> get_string(const Json& obj, const char* key,
                                             const std::string& path,
                                             std::vector<Diagnostic>& diags) {
  if (!obj.contains(key)) {
    diags.push_back({path, std::string("missing field '") + key + "'"});
    return std::nullopt;
  }
  if (!obj.at(key).is_string()) {
    diags.push_back({path + "." + key, "expected a string"});
    return std::nullopt;
  }
  return obj.at(key).get<std::string>();
}

}  // namespace io_detail

// Arena document format (version 1):
//   {
//     "version": 1,
//     "initial": "A",
//     "positions": [
//       {"id": "A", "owner": 1},
//       {"id": "T", "owner": 2, "target1": true, "weight1": 3}
//     ],
//     "edges": [{"from": "A", "to": "T", "w1": 3, "w2": 0}]
//   }
// Edge weights default to 0. A position-level "weight<i>" requires the
// matching target flag and stamps every incoming edge for that player;
// edges may restate it but must agree.
inline Parsed<ArenaData> parse_arena_document(const std::string& text) {
  Parsed<ArenaData> out;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    out.diagnostics.push_back(
        {"byte " + std::to_string(e.byte), "syntax error: " + std::string(e.what())});
    return out;
  }
  auto& diags = out.diagnostics;
  if (!doc.is_object()) {
    diags.push_back({"", "document must be an object"});
    return out;
  }
  io_detail::reject_unknown(doc, "$", {"version", "initial", "positions", "edges"},
                            diags);
  const auto version = io_detail::get_uint(doc, "version", "$", diags);
  if (version && *version != 1)
    diags.push_back({"$.version", "unsupported version"});

  ArenaData data;
  std::map<std::string, std::pair<std::optional<std::uint64_t>,
                                  std::optional<std::uint64_t>>>
      node_weights;

  if (!doc.contains("positions") || !doc.at("positions").is_array()) {
    diags.push_back({"$.positions", "expected an array of positions"});
  } else {
    std::size_t k = 0;
    for (const auto& p : doc.at("positions")) {
      const std::string path = "positions[" + std::to_string(k++) + "]";
      if (!p.is_object()) {
        diags.push_back({path, "expected an object"});
        continue;
      }
      io_detail::reject_unknown(
          p, path, {"id", "owner", "target1", "target2", "weight1", "weight2"},
          diags);
      ArenaData::Position pos;
      if (auto id = io_detail::get_string(p, "id", path, diags)) pos.id = *id;
      const auto owner = io_detail::get_uint(p, "owner", path, diags);
      if (!owner || (*owner != 1 && *owner != 2))
        diags.push_back({path + ".owner", "owner must be 1 or 2"});
      else
        pos.owner = *owner == 1 ? PlayerId::p1 : PlayerId::p2;
      for (const char* flag : {"target1", "target2"}) {
        if (!p.contains(flag)) continue;
        if (!p.at(flag).is_boolean()) {
          diags.push_back({path + "." + flag, "expected a boolean"});
          continue;
        }
        (flag == std::string("target1") ? pos.target1 : pos.target2) =
            p.at(flag).get<bool>();
      }
      const auto w1 = io_detail::get_uint(p, "weight1", path, diags);
      const auto w2 = io_detail::get_uint(p, "weight2", path, diags);
      if (w1 && !pos.target1)
        diags.push_back({path + ".weight1", "weight on a non-target position"});
      if (w2 && !pos.target2)
        diags.push_back({path + ".weight2", "weight on a non-target position"});
      node_weights[pos.id] = {w1, w2};
      data.positions.push_back(pos);
    }
  }

  if (auto initial = io_detail::get_string(doc, "initial", "$", diags))
    data.initial = *initial;

  if (doc.contains("edges")) {
    if (!doc.at("edges").is_array()) {
      diags.push_back({"$.edges", "expected an array of edges"});
    } else {
      std::size_t k = 0;
      for (const auto& e : doc.at("edges")) {
        const std::string path = "edges[" + std::to_string(k++) + "]";
        if (!e.is_object()) {
          diags.push_back({path, "expected an object"});
          continue;
        }
        io_detail::reject_unknown(e, path, {"from", "to", "w1", "w2"}, diags);
        ArenaData::Edge edge;
        if (auto from = io_detail::get_string(e, "from", path, diags))
          edge.from = *from;
        if (auto to = io_detail::get_string(e, "to", path, diags)) edge.to = *to;
        const auto w1 = io_detail::get_uint(e, "w1", path, diags);
        const auto w2 = io_detail::get_uint(e, "w2", path, diags);
        edge.w1 = w1.value_or(0);
        edge.w2 = w2.value_or(0);
        const auto nw = node_weights.find(edge.to);
        if (nw != node_weights.end()) {
          if (nw->second.first) {
            if (w1 && *w1 != *nw->second.first)
              diags.push_back({path + ".w1", "conflicts with the target weight"});
            edge.w1 = *nw->second.first;
          }
          if (nw->second.second) {
            if (w2 && *w2 != *nw->second.second)
              diags.push_back({path + ".w2", "conflicts with the target weight"});
            edge.w2 = *nw->second.second;
          }
        }
        data.edges.push_back(edge);
      }
    }
  }

  for (const auto& v : validate(data))
    diags.push_back({v.subject, v.message});
  if (diags.empty()) out.value = std::move(data);
  return out;
}

inline Json arena_to_json(const ArenaData& data) {
  Json doc;
  doc["version"] = 1;
  doc["initial"] = data.initial;
  doc["positions"] = Json::array();
  for (const auto& p : data.positions) {
    Json j;
    j["id"] = p.id;
    j["owner"] = p.owner == PlayerId::p1 ? 1 : 2;
    if (p.target1) j["target1"] = true;
    if (p.target2) j["target2"] = true;
    doc["positions"].push_back(j);
  }
  doc["edges"] = Json::array();
  for (const auto& e : data.edges) {
    Json j;
    j["from"] = e.from;
    j["to"] = e.to;
    if (e.w1) j["w1"] = e.w1;
    if (e.w2) j["w2"] = e.w2;
    doc["edges"].push_back(j);
  }
  return doc;
}

// Matrix document: {"version": 1, "rows": [[[2,1],[3,4]],[[1,2],[4,3]]]}.
inline Parsed<MatrixGame> parse_matrix_document(const std::string& text) {
  Parsed<MatrixGame> out;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    out.diagnostics.push_back(
        {"byte " + std::to_string(e.byte), "syntax error: " + std::string(e.what())});
    return out;
  }
  auto& diags = out.diagnostics;
  if (!doc.is_object()) {
    diags.push_back({"", "document must be an object"});
    return out;
  }
  io_detail::reject_unknown(doc, "$", {"version", "rows"}, diags);
  const auto version = io_detail::get_uint(doc, "version", "$", diags);
  if (version && *version != 1)
    diags.push_back({"$.version", "unsupported version"});
  MatrixGame m;
  if (!doc.contains("rows") || !doc.at("rows").is_array()) {
    diags.push_back({"$.rows", "expected an array of rows"});
    return out;
  }
  std::size_t r = 0;
  for (const auto& row : doc.at("rows")) {
    const std::string rpath = "rows[" + std::to_string(r++) + "]";
    if (!row.is_array()) {
      diags.push_back({rpath, "expected an array of penalty pairs"});
      continue;
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
    std::size_t c = 0;
    for (const auto& cell : row) {
      const std::string cpath = rpath + "[" + std::to_string(c++) + "]";
      if (!cell.is_array() || cell.size() != 2 ||
          !cell[0].is_number_unsigned() || !cell[1].is_number_unsigned()) {
        diags.push_back({cpath, "expected [penalty1, penalty2]"});
        continue;
      }
      cells.push_back({cell[0].get<std::uint64_t>(), cell[1].get<std::uint64_t>()});
    }
    m.cells.push_back(std::move(cells));
  }
  if (diags.empty()) {
    try {
      m.check();
      out.value = std::move(m);
    } catch (const InputError& e) {
      diags.push_back({"$.rows", e.what()});
    }
  }
  return out;
}

// Stable content fingerprint (FNV-1a 64) of the canonical serialization.
inline std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

inline std::string arena_digest(const ArenaData& data) {
  return digest(arena_to_json(data).dump());
}

// Witness serialization: memory alphabet, initial state, and transition
// tables over reachable pairs only.
inline Json strategy_to_json(const Strategy& s, const Arena& arena) {
  Json j;
  j["player"] = s.player == PlayerId::p1 ? 1 : 2;
  j["memory"] = s.memory_labels;
  j["initial_memory"] = s.memory_labels[s.initial_memory];
  j["moves"] = Json::array();
  for (const auto& [key, succ] : s.move_table) {
    Json m;
    m["memory"] = s.memory_labels[key.first];
    m["at"] = arena.id(key.second);
    m["go"] = arena.id(succ);
    j["moves"].push_back(m);
  }
  j["updates"] = Json::array();
  for (const auto& [key, mem] : s.update_table) {
    Json u;
    u["memory"] = s.memory_labels[std::get<0>(key)];
    u["from"] = arena.id(std::get<1>(key));
    u["to"] = arena.id(std::get<2>(key));
    u["next_memory"] = s.memory_labels[mem];
    j["updates"].push_back(u);
  }
  return j;
}

inline Json diagnostics_to_json(const std::vector<Diagnostic>& diags) {
  Json arr = Json::array();
  for (const auto& d : diags) {
    Json j;
    j["path"] = d.path;
    j["message"] = d.message;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace rgg
