#include "oracles.hpp"

#include <string>

namespace csa::testkit {

bool ean13_valid_oracle(std::string_view s) {
  if (s.size() != 13) return false;
  int sum = 0;
  for (std::size_t i = 0; i < 13; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    const int weight = (i % 2 == 0) ? 1 : 3;
    sum += weight * (s[i] - '0');
  }
  return sum % 10 == 0;
}

int ean13_check_oracle(std::string_view twelve) {
  if (twelve.size() != 12) return -1;
  for (int c = 0; c <= 9; ++c) {
    std::string candidate(twelve);
    candidate.push_back(static_cast<char>('0' + c));
    if (ean13_valid_oracle(candidate)) return c;
  }
  return -1;
}

double thermal_rise_oracle(double power_watts, double efficiency, double seconds, double grams,
                           double specific_heat_j_per_kg_k) {
  return power_watts * efficiency * seconds / ((grams / 1000.0) * specific_heat_j_per_kg_k);
}

}  // namespace csa::testkit
