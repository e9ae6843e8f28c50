#include "lorentz/certificate.hpp"

#include <algorithm>

namespace lorentz {

std::string to_string(Verdict v) { return v == Verdict::kPass ? "pass" : "fail"; }

void to_json(nlohmann::json& j, const Certificate& c) {
  j = nlohmann::json{{"name", c.name},
                     {"verdict", to_string(c.verdict)},
                     {"tolerance", c.tolerance},
                     {"samples_checked", c.samples_checked},
                     {"seed", c.seed},
                     {"details", c.details}};
  j["witness"] = c.witness ? *c.witness : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, Certificate& c) {
  c.name = j.at("name").get<std::string>();
  c.verdict = j.at("verdict").get<std::string>() == "pass" ? Verdict::kPass : Verdict::kFail;
  c.tolerance = j.at("tolerance").get<double>();
  c.samples_checked = j.at("samples_checked").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.details = j.value("details", nlohmann::json::object());
  if (j.contains("witness") && !j["witness"].is_null()) {
    c.witness = j["witness"];
  } else {
    c.witness.reset();
  }
}

bool all_passed(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.passed(); });
}

}  // namespace lorentz
