#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace criticut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attacker effort for one component: a nonnegative decimal with at most
/// three fractional digits, or +infinity.
///
/// Finite values are stored as an integer count of thousandths so sums are
/// exact ("2" + "1.2" is exactly 3200 milli-units, never 3.1999...).
class Cost {
 public:
  static constexpr std::int64_t kScale = 1000;
  /// Largest finite magnitude accepted (in milli-units); keeps sums of
  /// millions of costs inside int64.
  static constexpr std::int64_t kMaxMilli = std::int64_t{1} << 52;

  constexpr Cost() = default;

  static Cost infinite() {
    Cost c;
    c.infinite_ = true;
    return c;
  }
  static Cost from_milli(std::int64_t milli);
  static Cost from_units(std::int64_t units) { return from_milli(units * kScale); }

  /// Parses "12", "3.2", "0.125" or "inf". Rejects signs, exponents,
  /// whitespace and more than three fractional digits.
  static Cost parse(std::string_view text);
  /// Like parse() but returns nullopt instead of throwing.
  static std::optional<Cost> try_parse(std::string_view text);
  /// Rounds a double to the nearest milli-unit; rejects negatives and NaN.
  static Cost from_double(double value);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && milli_ == 0; }

  /// Milli-units; throws Error on an infinite cost.
  std::int64_t milli() const;
  double to_double() const;

  /// Canonical file-format text: "2", "3.2", "0.125", "inf".
  std::string to_string() const;
  /// Report text: always at least one fractional digit ("4.0", "3.2"), or
  /// exactly `precision` digits (0..3, rounded half up) when given.
  std::string to_display(std::optional<int> precision = std::nullopt) const;

  friend Cost operator+(Cost a, Cost b);
  Cost& operator+=(Cost other) { return *this = *this + other; }

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.milli_ == b.milli_);
  }
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.milli_ <=> b.milli_;
  }

 private:
  std::int64_t milli_ = 0;
  bool infinite_ = false;
};

}  // namespace criticut
