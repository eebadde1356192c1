#pragma once

#include <cstdint>
#include <string_view>

namespace attrpriv {

// Counter-style generator built on splitmix64. Every mechanism derives its
// own stream from (seed, stream name), so streams stay stable when new
// mechanisms are added. Output is reproducible across platforms: no
// std::distribution involved, noise comes from inverse-CDF transforms of
// 53-bit uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream derivation: seed XOR FNV-1a(name), then one splitmix step to
  // decorrelate nearby seeds.
  static Rng for_stream(std::uint64_t seed, std::string_view name);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns an endpoint.
  double next_uniform();

  // N(0, sigma^2) via inverse-CDF transform.
  double next_gaussian(double sigma);

  // Laplace with density (1/2b) exp(-|x|/b).
  double next_laplace(double scale);

 private:
  std::uint64_t state_;
};

}  // namespace attrpriv
