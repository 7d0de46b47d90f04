#pragma once

// JSON encoding of instances and plans.
//
// Instance: {"dim": d, "boxes": [{"lo": [..], "hi": [..]}, ...]}
// Plan:     {"constant": "<decimal>", "claimed_class": "<tag>",
//            "terms": [{"coeff": c, "instance": <instance>}, ...]}
//
// Coordinates are JSON numbers while |x| <= 2^53 - 1 and decimal strings
// beyond; volumes are always decimal strings.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kleebox/core.hpp"
#include "kleebox/plan.hpp"

namespace kleebox::io {

using nlohmann::json;

inline constexpr Coord kMaxSafeJsonInteger = (Coord{1} << 53) - 1;

inline json coord_to_json(Coord x) {
  if (x >= -kMaxSafeJsonInteger && x <= kMaxSafeJsonInteger) return x;
  return std::to_string(x);
}

inline Coord coord_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ValidationError("coordinate out of range");
    }
    return j.get<Coord>();
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Coord v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ValidationError("coordinate '" + s + "' is not a decimal integer in range");
    }
    return v;
  }
  throw ValidationError("coordinate must be an integer or a decimal string");
}

inline std::string volume_to_string(const ExactVolume& v) { return v.str(); }

inline ExactVolume volume_from_string(const std::string& s) {
  const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
    throw ValidationError("volume '" + s + "' is not a decimal integer");
  }
  return ExactVolume(s);
}

inline json box_to_json(const AxisBox& b) {
  json lo = json::array(), hi = json::array();
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo.push_back(coord_to_json(b.lo(i)));
    hi.push_back(coord_to_json(b.hi(i)));
  }
  return {{"lo", std::move(lo)}, {"hi", std::move(hi)}};
}

inline json instance_to_json(const BoxSet& m) {
  json boxes = json::array();
  for (const auto& b : m) boxes.push_back(box_to_json(b));
  return {{"dim", m.dim()}, {"boxes", std::move(boxes)}};
}

inline BoxSet instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("boxes")) {
    throw ValidationError("instance needs \"dim\" and \"boxes\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ValidationError("instance \"dim\" must be a positive integer");
  }
  if (!j["boxes"].is_array()) throw ValidationError("instance \"boxes\" must be an array");
  BoxSet m(j["dim"].get<std::size_t>());
  for (const auto& jb : j["boxes"]) {
    if (!jb.is_object() || !jb.contains("lo") || !jb.contains("hi") || !jb["lo"].is_array() ||
        !jb["hi"].is_array()) {
      throw ValidationError("box needs \"lo\" and \"hi\" arrays");
    }
    std::vector<Coord> lo, hi;
    for (const auto& x : jb["lo"]) lo.push_back(coord_from_json(x));
    for (const auto& x : jb["hi"]) hi.push_back(coord_from_json(x));
    m.push_back(AxisBox(std::move(lo), std::move(hi)));
  }
  return m;
}

inline json plan_to_json(const VolumePlan& p) {
  json terms = json::array();
  for (const auto& t : p.terms) terms.push_back({{"coeff", t.coeff}, {"instance", instance_to_json(t.instance)}});
  return {{"constant", volume_to_string(p.constant)},
          {"claimed_class", p.claimed_class.to_string()},
          {"terms", std::move(terms)}};
}

inline VolumePlan plan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("constant") || !j.contains("claimed_class") || !j.contains("terms")) {
    throw ValidationError("plan needs \"constant\", \"claimed_class\" and \"terms\"");
  }
  if (!j["constant"].is_string() || !j["claimed_class"].is_string() || !j["terms"].is_array()) {
    throw ValidationError("plan fields have wrong types");
  }
  VolumePlan p;
  p.constant = volume_from_string(j["constant"].get<std::string>());
  p.claimed_class = ClassTag::parse(j["claimed_class"].get<std::string>());
  for (const auto& jt : j["terms"]) {
    if (!jt.is_object() || !jt.contains("coeff") || !jt["coeff"].is_number_integer() ||
        !jt.contains("instance")) {
      throw ValidationError("plan term needs integer \"coeff\" and \"instance\"");
    }
    p.terms.push_back({jt["coeff"].get<std::int64_t>(), instance_from_json(jt["instance"])});
  }
  return p;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump() << '\n';
}

}  // namespace kleebox::io
