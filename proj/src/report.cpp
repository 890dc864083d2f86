#include "walksparse/report.hpp"

namespace walksparse {

nlohmann::ordered_json to_json(const SparsifyReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["m_in"] = report.m_in;
  j["m_out"] = report.m_out;
  j["N"] = report.samples;
  j["sum_tau"] = report.sum_tau;
  j["epsilon"] = report.epsilon;
  j["seed"] = report.seed;
  if (report.kappa_measured) j["kappa_measured"] = *report.kappa_measured;
  j["elapsed_ms"] = report.elapsed_ms;
  for (const auto& [key, value] : report.extra.items()) j[key] = value;
  return j;
}

std::string to_json_string(const SparsifyReport& report) { return to_json(report).dump(2); }

}  // namespace walksparse
