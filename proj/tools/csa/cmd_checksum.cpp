#include <algorithm>
#include <ostream>

#include "commands.hpp"
#include "csa/dsl/barcode.hpp"

namespace csa::cli {

int cmd_checksum(const std::string& digits, std::ostream& out) {
  const bool all_digits =
      !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (digits.size() == 12 && all_digits) {
    const int check = dsl::ean13_check_digit(digits);
    out << "check digit " << check << " -> " << digits << check << "\n";
    return kOk;
  }
  try {
    dsl::validate_barcode(digits);
    out << "VALID\n";
    return kOk;
  } catch (const dsl::BarcodeError& e) {
    out << "INVALID " << dsl::to_string(e.fault()) << ": " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace csa::cli
