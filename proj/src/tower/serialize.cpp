#include <json.hpp>

#include "arbor/error.hpp"
#include "data.hpp"

namespace arbor {

std::string NumberTower::serialize() const {
  nlohmann::json j;
  j["minimal_poly"] = d_->minpoly.to_string('x');
  j["degree"] = d_->degree;
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& rec : d_->history) {
    nlohmann::json src = nlohmann::json::array();
    for (const auto& c : rec.source) src.push_back(c.to_string('t'));
    hist.push_back({{"source", src}, {"root", rec.root.to_string('t')}});
  }
  j["history"] = hist;
  return j.dump();
}

NumberTower NumberTower::deserialize(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed tower record: ") + e.what());
  }
  if (!j.is_object() || !j.contains("minimal_poly") || !j.contains("history")) {
    throw InvalidArgument("tower record needs minimal_poly and history");
  }
  const QPoly m = parse_polynomial(j["minimal_poly"].get<std::string>(), 'x');
  std::vector<AdjunctionRecord> history;
  for (const auto& h : j["history"]) {
    AdjunctionRecord rec;
    for (const auto& c : h.at("source")) rec.source.push_back(parse_polynomial(c.get<std::string>(), 't'));
    rec.root = parse_polynomial(h.at("root").get<std::string>(), 't');
    history.push_back(std::move(rec));
  }
  return from_minimal_poly(m, std::move(history));
}

}  // namespace arbor
