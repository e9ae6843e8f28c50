#include "lorentz/dyadic.hpp"

#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz {

DyadicKey::DyadicKey(std::uint64_t k, int n) {
  if (n < 0 || n > kMaxDyadicDepth) {
    throw Error(ErrorCode::kInvalidArgument, "dyadic level " + std::to_string(n) + " out of range");
  }
  if (k > (std::uint64_t{1} << n)) {
    throw Error(ErrorCode::kInvalidArgument, "dyadic " + std::to_string(k) + "/2^" +
                                                 std::to_string(n) + " exceeds 1");
  }
  while (n > 0 && k % 2 == 0) {
    k /= 2;
    --n;
  }
  k_ = k;
  n_ = n;
}

double DyadicKey::value() const { return std::ldexp(static_cast<double>(k_), -n_); }

std::string DyadicKey::str() const { return std::to_string(k_) + "/2^" + std::to_string(n_); }

DyadicKey truncate_dyadic(double t, int n) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "parameter outside [0, 1]");
  const auto k = static_cast<std::uint64_t>(std::floor(std::ldexp(t, n)));
  return DyadicKey(k, n);
}

}  // namespace lorentz
