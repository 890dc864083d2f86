#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace walksparse {

/// Run summary shared by every sparsifying entry point. Serialises as a flat
/// JSON object; `extra` holds routine-specific keys merged at the top level.
struct SparsifyReport {
  std::size_t n = 0;
  std::size_t m_in = 0;
  std::size_t m_out = 0;
  std::uint64_t samples = 0;  // N
  double sum_tau = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> kappa_measured;
  double elapsed_ms = 0.0;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const SparsifyReport& report);
std::string to_json_string(const SparsifyReport& report);

}  // namespace walksparse
