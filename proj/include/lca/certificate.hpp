#pragma once

#include "lca/polynomial.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lca {

enum class Status { Pass, Fail, Inconclusive };

std::string_view status_name(Status s);

struct Certificate {
  std::string claim;
  Status status = Status::Fail;
  std::string verdict;  // short token, matched by the CLI's --expect
  std::string reason;
  std::vector<std::pair<std::string, double>> margins;
  std::vector<std::pair<std::string, std::string>> facts;  // exact values, kept verbatim
  std::vector<nlohmann::ordered_json> witnesses;
  std::optional<PolynomialFn> fitted_q;
  std::vector<Certificate> sub;

  bool pass() const { return status == Status::Pass; }
  std::optional<double> margin(std::string_view key) const;
  std::optional<std::string> fact(std::string_view key) const;
  const Certificate* find(std::string_view sub_claim) const;

  Certificate& set_margin(std::string key, double value);
  Certificate& set_fact(std::string key, std::string value);
};

}  // namespace lca
