#pragma once
// Reference computations written independently of the library code they
// check. Keep them naive.

#include <cstdint>
#include <string_view>

namespace csa::testkit {

/// True iff `s` is 13 ASCII digits whose weighted digit sum (1,3,1,3,...)
/// is a multiple of ten.
bool ean13_valid_oracle(std::string_view s);

/// Tries every candidate 0..9 against ean13_valid_oracle. -1 if `twelve`
/// is not 12 digits.
int ean13_check_oracle(std::string_view twelve);

/// Heat absorbed without losses: P * eta * t / (m * c), in kelvin.
double thermal_rise_oracle(double power_watts, double efficiency, double seconds, double grams,
                           double specific_heat_j_per_kg_k);

}  // namespace csa::testkit
