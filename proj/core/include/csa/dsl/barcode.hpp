#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace csa::dsl {

enum class BarcodeFault { WrongLength, NonDigit, ChecksumMismatch };

std::string_view to_string(BarcodeFault fault) noexcept;

class BarcodeError : public std::invalid_argument {
 public:
  BarcodeError(BarcodeFault fault, const std::string& what)
      : std::invalid_argument(what), fault_(fault) {}
  BarcodeFault fault() const noexcept { return fault_; }

 private:
  BarcodeFault fault_;
};

/// An EAN-13 product code. Only constructible through validate_barcode, so a
/// Barcode value always carries a correct check digit.
class Barcode {
 public:
  const std::string& digits() const noexcept { return digits_; }

  friend bool operator==(const Barcode&, const Barcode&) = default;
  friend auto operator<=>(const Barcode&, const Barcode&) = default;

 private:
  explicit Barcode(std::string digits) : digits_(std::move(digits)) {}
  friend Barcode validate_barcode(std::string_view text);

  std::string digits_;
};

/// Check digit for the first 12 digits of an EAN-13 code. `payload` must be
/// exactly 12 decimal digits.
int ean13_check_digit(std::string_view payload);

/// Throws BarcodeError naming the first rule that fails, checked in the order
/// length, digit class, checksum.
Barcode validate_barcode(std::string_view text);

}  // namespace csa::dsl
