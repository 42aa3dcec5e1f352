#pragma once

#include <cstdint>
#include <random>

#include "kuramoto/graph.hpp"

namespace kuramoto {

/// splitmix64 step; advances state and returns the next word.
std::uint64_t splitmix64(std::uint64_t& state);

/// Decorrelated seed for a named substream of a base seed. Distinct streams
/// give independent-looking generators even for adjacent base seeds.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

std::mt19937_64 make_rng(std::uint64_t seed);

Vec draw_uniform(int n, double lo, double hi, std::mt19937_64& rng);
Vec draw_normal(int n, double sigma, std::mt19937_64& rng);

}  // namespace kuramoto
