#pragma once

#include <iosfwd>

#include "kuramoto/config.hpp"

namespace kuramoto {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Each runner writes one JSON document to out and human-readable progress
/// or tables to err, returning a process exit code. File outputs (trace CSV,
/// sweep CSV) land in cfg.out_dir when set.
int run_simulate(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err);
int run_bounds(const ExperimentConfig& cfg, std::ostream& out,
               std::ostream& err);
int run_fixedpoint(const ExperimentConfig& cfg, std::ostream& out,
                   std::ostream& err);
int run_threshold(const ExperimentConfig& cfg, std::ostream& out,
                  std::ostream& err);
int run_spectrum(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err);
int run_sweep(const ExperimentConfig& cfg, std::ostream& out,
              std::ostream& err);

}  // namespace kuramoto
