#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rotcalc/errors.hpp"
#include "rotcalc/pl_lift.hpp"

namespace rotcalc {

// Map file format (bit-exact): {"l":"1","offset":0,"pieces":[{"x":"0",
// "v":"2/3","slope":"2/3"}, ...]} with all rationals as canonical strings.
// `offset` shifts every value by offset*l on load.

inline PLLift map_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("l") || !j.contains("pieces"))
    throw ParseError("map object requires fields 'l' and 'pieces'");
  Rat l;
  mpz_class offset = 0;
  std::vector<Piece> raw;
  try {
    l = parse_rat(j.at("l").get<std::string>());
    if (j.contains("offset")) {
      if (!j.at("offset").is_number_integer())
        throw ParseError("'offset' must be an integer");
      offset = mpz_class(static_cast<long>(j.at("offset").get<long long>()));
    }
    if (!j.at("pieces").is_array() || j.at("pieces").empty())
      throw ParseError("'pieces' must be a nonempty array");
    for (const auto& pj : j.at("pieces")) {
      raw.push_back(Piece{parse_rat(pj.at("x").get<std::string>()),
                          parse_rat(pj.at("v").get<std::string>()),
                          parse_rat(pj.at("slope").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed map object: ") + e.what());
  }
  if (offset != 0) {
    Rat shift = Rat(offset) * l;
    for (auto& p : raw) p.v += shift;
  }
  try {
    return PLLift::normalize(std::move(raw), l);
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw InvalidMap(e.name() + std::string(": ") + e.what());
  }
}

inline PLLift parse_map(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return map_from_json(j);
}

inline PLLift load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open map file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

inline nlohmann::ordered_json map_to_json(const PLLift& F) {
  const Rat& l = F.circumference();
  mpz_class offset = rat_floor_div(F.pieces()[0].v, l);
  if (!offset.fits_slong_p())
    throw InvalidMap("translation offset too large to serialize");
  Rat shift = Rat(offset) * l;
  nlohmann::ordered_json j;
  j["l"] = rat_str(l);
  j["offset"] = offset.get_si();
  j["pieces"] = nlohmann::ordered_json::array();
  for (const Piece& p : F.pieces()) {
    nlohmann::ordered_json pj;
    pj["x"] = rat_str(p.x);
    pj["v"] = rat_str(Rat(p.v - shift));
    pj["slope"] = rat_str(p.slope);
    j["pieces"].push_back(std::move(pj));
  }
  return j;
}

inline std::string serialize_map(const PLLift& F) {
  return map_to_json(F).dump();
}

inline void save_map_file(const PLLift& F, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write map file '" + path + "'");
  out << serialize_map(F) << "\n";
}

}  // namespace rotcalc
