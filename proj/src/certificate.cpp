#include "lca/certificate.hpp"

namespace lca {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<double> Certificate::margin(std::string_view key) const {
  for (const auto& [k, v] : margins)
    if (k == key) return v;
  return std::nullopt;
}

std::optional<std::string> Certificate::fact(std::string_view key) const {
  for (const auto& [k, v] : facts)
    if (k == key) return v;
  return std::nullopt;
}

const Certificate* Certificate::find(std::string_view sub_claim) const {
  for (const auto& c : sub)
    if (c.claim == sub_claim) return &c;
  return nullptr;
}

Certificate& Certificate::set_margin(std::string key, double value) {
  for (auto& [k, v] : margins)
    if (k == key) {
      v = value;
      return *this;
    }
  margins.emplace_back(std::move(key), value);
  return *this;
}

Certificate& Certificate::set_fact(std::string key, std::string value) {
  for (auto& [k, v] : facts)
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  facts.emplace_back(std::move(key), std::move(value));
  return *this;
}

}  // namespace lca
