#include "kuramoto/rng.hpp"

#include <stdexcept>

namespace kuramoto {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  splitmix64(state);  // whiten the raw seed first
  state ^= (stream + 1) * 0x9E3779B97F4A7C15ULL;
  splitmix64(state);
  return splitmix64(state);
}

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Vec draw_uniform(int n, double lo, double hi, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("negative draw count");
  if (!(lo < hi)) throw std::invalid_argument("need lo < hi");
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = dist(rng);
  return out;
}

Vec draw_normal(int n, double sigma, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("negative draw count");
  if (sigma < 0.0) throw std::invalid_argument("negative sigma");
  if (sigma == 0.0) return Vec::Zero(n);
  std::normal_distribution<double> dist(0.0, sigma);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = dist(rng);
  return out;
}

}  // namespace kuramoto
