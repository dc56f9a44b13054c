#include "criticut/cost.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace criticut {

Cost Cost::from_milli(std::int64_t milli) {
  if (milli < 0) throw Error(fmt::format("negative cost ({} milli-units)", milli));
  if (milli > kMaxMilli) throw Error("cost exceeds the representable range");
  Cost c;
  c.milli_ = milli;
  return c;
}

std::optional<Cost> Cost::try_parse(std::string_view text) {
  if (text == "inf") return infinite();
  if (text.empty()) return std::nullopt;

  std::int64_t whole = 0;
  std::size_t i = 0;
  std::size_t int_digits = 0;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++int_digits) {
    whole = whole * 10 + (text[i] - '0');
    if (whole > kMaxMilli / kScale) return std::nullopt;
  }
  if (int_digits == 0) return std::nullopt;

  std::int64_t frac = 0;
  if (i < text.size()) {
    if (text[i] != '.') return std::nullopt;
    ++i;
    std::size_t frac_digits = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++frac_digits) {
      if (frac_digits == 3) return std::nullopt;
      frac = frac * 10 + (text[i] - '0');
    }
    if (frac_digits == 0 || i != text.size()) return std::nullopt;
    for (; frac_digits < 3; ++frac_digits) frac *= 10;
  }
  const std::int64_t milli = whole * kScale + frac;
  if (milli > kMaxMilli) return std::nullopt;
  return from_milli(milli);
}

Cost Cost::parse(std::string_view text) {
  if (auto c = try_parse(text)) return *c;
  throw Error(fmt::format(
      "invalid cost \"{}\": expected a nonnegative decimal with at most 3 fractional digits or "
      "\"inf\"",
      text));
}

Cost Cost::from_double(double value) {
  if (std::isinf(value) && value > 0) return infinite();
  if (!std::isfinite(value) || value < 0) throw Error(fmt::format("invalid cost {}", value));
  const double milli = std::round(value * static_cast<double>(kScale));
  if (milli > static_cast<double>(kMaxMilli)) throw Error("cost exceeds the representable range");
  return from_milli(static_cast<std::int64_t>(milli));
}

std::int64_t Cost::milli() const {
  if (infinite_) throw Error("infinite cost has no finite magnitude");
  return milli_;
}

double Cost::to_double() const {
  if (infinite_) return HUGE_VAL;
  return static_cast<double>(milli_) / static_cast<double>(kScale);
}

std::string Cost::to_string() const {
  if (infinite_) return "inf";
  const std::int64_t whole = milli_ / kScale;
  std::int64_t frac = milli_ % kScale;
  if (frac == 0) return fmt::format("{}", whole);
  int digits = 3;
  while (frac % 10 == 0) {
    frac /= 10;
    --digits;
  }
  return fmt::format("{}.{:0{}}", whole, frac, digits);
}

std::string Cost::to_display(std::optional<int> precision) const {
  if (infinite_) return "inf";
  if (precision) {
    const int digits = std::clamp(*precision, 0, 3);
    std::int64_t step = 1;
    for (int i = digits; i < 3; ++i) step *= 10;
    const std::int64_t scaled = (milli_ + step / 2) / step;
    std::int64_t unit = 1;
    for (int i = 0; i < digits; ++i) unit *= 10;
    if (digits == 0) return fmt::format("{}", scaled);
    return fmt::format("{}.{:0{}}", scaled / unit, scaled % unit, digits);
  }
  std::string s = to_string();
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

Cost operator+(Cost a, Cost b) {
  if (a.infinite_ || b.infinite_) return Cost::infinite();
  return Cost::from_milli(a.milli_ + b.milli_);
}

}  // namespace criticut
