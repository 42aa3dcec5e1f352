#include "kuramoto/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kuramoto/rng.hpp"

namespace kuramoto {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + ": '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(value)) {
    throw ConfigError("cannot parse " + what + ": '" + s + "'");
  }
  return value;
}

int to_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + ": '" + s + "'");
  }
  if (pos != s.size()) {
    throw ConfigError("cannot parse " + what + ": '" + s + "'");
  }
  return value;
}

}  // namespace

OrientedGraph make_graph(const std::string& spec) {
  if (spec.empty()) throw ConfigError("graph spec is required");
  if (spec.rfind("gen:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw ConfigError("generator spec must look like gen:<name>:<n>");
    }
    const std::string& name = parts[1];
    const int n = to_int(parts[2], "generator size");
    if (n < 1) throw ConfigError("generator size must be positive");
    try {
      if (name == "complete") return OrientedGraph::complete(n);
      if (name == "path") return OrientedGraph::path(n);
      if (name == "cycle") return OrientedGraph::cycle(n);
      if (name == "star") return OrientedGraph::star(n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    throw ConfigError("unknown graph generator: " + name);
  }
  try {
    return OrientedGraph::from_edge_list_file(spec);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

OmegaSpec parse_omega_spec(const std::string& spec) {
  OmegaSpec out;
  if (spec.empty() || spec == "zero") {
    out.kind = OmegaKind::zero;
    return out;
  }
  if (spec.rfind("normal:", 0) == 0) {
    out.kind = OmegaKind::normal;
    out.sigma = to_double(spec.substr(7), "omega sigma");
    if (out.sigma < 0.0) throw ConfigError("omega sigma must be >= 0");
    return out;
  }
  out.kind = OmegaKind::file;
  out.path = spec;
  return out;
}

Vec realize_omega(const OmegaSpec& spec, int n, std::uint64_t seed) {
  switch (spec.kind) {
    case OmegaKind::zero:
      return Vec::Zero(n);
    case OmegaKind::normal: {
      auto rng = make_rng(substream_seed(seed, 0));
      return draw_normal(n, spec.sigma, rng);
    }
    case OmegaKind::file: {
      Vec omega = load_vector_file(spec.path);
      if (omega.size() != n) {
        throw ConfigError("omega file holds " + std::to_string(omega.size()) +
                          " values but the graph has " + std::to_string(n) +
                          " vertices");
      }
      return omega;
    }
  }
  throw ConfigError("unhandled omega kind");
}

std::vector<double> parse_k_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) {
    throw ConfigError("coupling range must look like lo:hi:steps");
  }
  const double lo = to_double(parts[0], "coupling range low end");
  const double hi = to_double(parts[1], "coupling range high end");
  const int steps = to_int(parts[2], "coupling range step count");
  if (steps < 1) throw ConfigError("coupling range needs at least one step");
  if (steps == 1) {
    if (lo != hi) {
      throw ConfigError("a one-step coupling range needs lo == hi");
    }
    return {lo};
  }
  if (!(hi > lo)) throw ConfigError("coupling range needs hi > lo");
  std::vector<double> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    out.push_back(lo + (hi - lo) * i / (steps - 1));
  }
  return out;
}

double parse_k_single(const std::string& spec) {
  const double k = to_double(spec, "coupling");
  if (!(k > 0.0)) throw ConfigError("coupling must be positive");
  return k;
}

std::vector<double> parse_k_values(const std::string& spec) {
  if (spec.empty()) throw ConfigError("coupling is required");
  if (spec.find(':') != std::string::npos) return parse_k_range(spec);
  return {parse_k_single(spec)};
}

Vec load_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) values.push_back(to_double(tok, "vector entry"));
  }
  if (values.empty()) {
    throw ConfigError("no numbers found in file: " + path);
  }
  Vec out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = values[i];
  }
  return out;
}

}  // namespace kuramoto
