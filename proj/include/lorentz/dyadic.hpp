#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace lorentz {

/// Deepest supported dyadic level.
inline constexpr int kMaxDyadicDepth = 40;

/// The dyadic rational k / 2^n, kept in lowest terms (k odd or n == 0).
class DyadicKey {
 public:
  DyadicKey() = default;
  /// Reduces k / 2^n. Throws InvalidArgument for n outside [0, kMaxDyadicDepth]
  /// or k > 2^n.
  DyadicKey(std::uint64_t k, int n);

  std::uint64_t k() const { return k_; }
  int n() const { return n_; }
  double value() const;

  /// Numerator over the common denominator 2^depth (depth >= n).
  std::uint64_t scaled(int depth) const { return k_ << (depth - n_); }

  friend bool operator==(const DyadicKey&, const DyadicKey&) = default;
  friend std::strong_ordering operator<=>(const DyadicKey& a, const DyadicKey& b) {
    const int m = a.n_ > b.n_ ? a.n_ : b.n_;
    return a.scaled(m) <=> b.scaled(m);
  }

  std::string str() const;

 private:
  std::uint64_t k_ = 0;
  int n_ = 0;
};

/// floor(t * 2^n) / 2^n for t in [0, 1].
DyadicKey truncate_dyadic(double t, int n);

}  // namespace lorentz
