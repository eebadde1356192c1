#include "attrpriv/rng.hpp"

#include <cmath>

#include "attrpriv/normal.hpp"

namespace attrpriv {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::for_stream(std::uint64_t seed, std::string_view name) {
  std::uint64_t s = seed ^ fnv1a(name);
  splitmix(s);
  return Rng(s);
}

std::uint64_t Rng::next_u64() { return splitmix(state_); }

double Rng::next_uniform() {
  // 53-bit mantissa, shifted to the cell midpoint so u is in (0,1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double Rng::next_gaussian(double sigma) {
  return sigma * normal_inverse_cdf(next_uniform());
}

double Rng::next_laplace(double scale) {
  if (scale == 0.0) return 0.0;
  double u = next_uniform() - 0.5;
  double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

}  // namespace attrpriv
