#include "csa/dsl/barcode.hpp"

#include <algorithm>

namespace csa::dsl {

std::string_view to_string(BarcodeFault fault) noexcept {
  switch (fault) {
    case BarcodeFault::WrongLength: return "WrongLength";
    case BarcodeFault::NonDigit: return "NonDigit";
    case BarcodeFault::ChecksumMismatch: return "ChecksumMismatch";
  }
  return "?";
}

namespace {
bool is_digit(char c) { return c >= '0' && c <= '9'; }
}  // namespace

int ean13_check_digit(std::string_view payload) {
  if (payload.size() != 12 || !std::all_of(payload.begin(), payload.end(), is_digit)) {
    throw std::invalid_argument("EAN-13 payload must be 12 decimal digits");
  }
  int odd = 0;
  int even = 0;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    // Positions are 1-based in the symbology: index 0 is position 1 (odd).
    (i % 2 == 0 ? odd : even) += payload[i] - '0';
  }
  return (10 - (odd + 3 * even) % 10) % 10;
}

Barcode validate_barcode(std::string_view text) {
  if (text.size() != 13) {
    throw BarcodeError(BarcodeFault::WrongLength,
                       "barcode must be 13 digits, got " + std::to_string(text.size()));
  }
  auto bad = std::find_if_not(text.begin(), text.end(), is_digit);
  if (bad != text.end()) {
    throw BarcodeError(BarcodeFault::NonDigit,
                       "barcode has a non-digit at position " +
                           std::to_string(bad - text.begin() + 1));
  }
  const int expected = ean13_check_digit(text.substr(0, 12));
  if (text[12] - '0' != expected) {
    throw BarcodeError(BarcodeFault::ChecksumMismatch,
                       "barcode check digit is " + std::string(1, text[12]) + ", expected " +
                           std::to_string(expected));
  }
  return Barcode(std::string(text));
}

}  // namespace csa::dsl
