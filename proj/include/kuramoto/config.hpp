#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kuramoto/graph.hpp"

namespace kuramoto {

/// Raised for malformed specs, files, and option values. Mapped to the
/// configuration exit code by the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  std::string graph_spec;      // path or gen:<name>:<n>
  std::string omega_spec = "zero";  // path | normal:<sigma> | zero
  std::string k_spec;          // single value or lo:hi:steps; empty = unset
  std::optional<std::uint64_t> seed;
  int seeds = 1;               // number of seed replicates (sweep)
  std::string out_dir;
  double step = 0.01;
  double t_end = 0.0;          // 0 = choose automatically
  int record_every = 10;
  double tail_fraction = 0.2;
  double residual_tol = 1e-7;
  double tol_k = 0.01;
  double picard_tol = 1e-10;
  int picard_max_iter = 500;
  int infnorm_samples = 1000;
  std::string format = "json";  // json | csv (per-command meaning)
  int jobs = 0;                 // 0 = hardware concurrency

  std::uint64_t effective_seed() const { return seed.value_or(0); }
};

/// Builds a graph from "gen:<name>:<n>" (complete/path/cycle/star) or reads
/// an edge-list file at the given path.
OrientedGraph make_graph(const std::string& spec);

enum class OmegaKind { zero, normal, file };

struct OmegaSpec {
  OmegaKind kind = OmegaKind::zero;
  double sigma = 0.0;     // normal only
  std::string path;       // file only
};

OmegaSpec parse_omega_spec(const std::string& spec);

/// Draws or loads omega for a graph of n vertices. normal uses the rng
/// substream reserved for frequency draws under the given seed.
Vec realize_omega(const OmegaSpec& spec, int n, std::uint64_t seed);

/// "lo:hi:steps" -> linearly spaced values (inclusive endpoints).
std::vector<double> parse_k_range(const std::string& spec);
/// Single positive value.
double parse_k_single(const std::string& spec);
/// Either form; singletons come back as one-element vectors.
std::vector<double> parse_k_values(const std::string& spec);

/// Whitespace-separated doubles; throws ConfigError on parse failure.
Vec load_vector_file(const std::string& path);

}  // namespace kuramoto
