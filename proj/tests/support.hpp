#pragma once

#include <string>
#include <vector>

#include "meadow/algebra.hpp"
#include "meadow/term.hpp"

namespace meadow::test {

inline std::string data_path(const std::string& rel) { return std::string(MEADOW_SOURCE_DIR) + "/data/" + rel; }

inline const std::vector<std::string>& table_files() {
  static const std::vector<std::string> files = {
      "tables/gcm_f2_chain.json", "tables/gcm_f3_chain.json", "tables/gcm_f2_split.json",
      "tables/gcm_idempotents.json"};
  return files;
}

inline Element num(std::int64_t v) { return Element::of(v); }
inline Element rat(const char* text) { return Element::of(Rational::parse(text)); }
inline Term T(const char* text) { return parse(text); }

/// Every finite total algebra the suites run over: Z_n for small n and the
/// shipped tables.
inline std::vector<TotalPtr> finite_instances(std::int64_t max_n = 12) {
  std::vector<TotalPtr> out;
  for (std::int64_t n = 2; n <= max_n; ++n) out.push_back(make_zn_inverse_division(n));
  for (const auto& f : table_files()) out.push_back(TableAlgebra::load(data_path(f)));
  return out;
}

}  // namespace meadow::test
