#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lorentz {

/// Nonnegative extended real used for time separations.
///
/// Infinity is a distinct state rather than a large double, so sums and
/// comparisons stay totally ordered without overflow.
class Extended {
 public:
  constexpr Extended() = default;
  constexpr Extended(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws on infinity.
  constexpr double value() const {
    if (infinite_) throw std::domain_error("Extended::value() on infinity");
    return value_;
  }

  /// Value as a double, mapping infinity to IEEE +inf (for output only).
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr Extended operator+(Extended a, Extended b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Extended(a.value_ + b.value_);
  }

  friend constexpr bool operator==(Extended a, Extended b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(Extended a, Extended b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, Extended e) {
    if (e.infinite_) return os << "inf";
    return os << e.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace lorentz
