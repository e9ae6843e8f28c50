#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lorentz {

enum class Verdict { kPass, kFail };

/// Machine-checkable outcome of one hypothesis or conclusion check.
///
/// A failing certificate always carries a witness (the offending points,
/// encoded by the owning space) that can be replayed against the same
/// predicate.
struct Certificate {
  std::string name;
  Verdict verdict = Verdict::kPass;
  double tolerance = 0.0;
  std::optional<nlohmann::json> witness;
  std::size_t samples_checked = 0;
  std::uint64_t seed = 0;
  // Check-specific extras (per-pair best c, observed ratios, slack, ...).
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return verdict == Verdict::kPass; }
};

std::string to_string(Verdict v);

void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);

/// True iff every certificate passed.
bool all_passed(const std::vector<Certificate>& certs);

}  // namespace lorentz
