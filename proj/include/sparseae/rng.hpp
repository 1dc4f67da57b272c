#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>

namespace sparseae {

/// Seeded random stream. Every stochastic operation in the library draws
/// from one of these, so any run is reproducible from a single integer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(gen_);
  }

  bool bernoulli(double p) { return std::bernoulli_distribution(p)(gen_); }

  template <class It>
  void shuffle(It first, It last) {
    std::shuffle(first, last, gen_);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

/// splitmix64-style mixer for deriving independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace sparseae
