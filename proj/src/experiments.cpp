#include "kuramoto/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kuramoto/bounds.hpp"
#include "kuramoto/dynamics.hpp"
#include "kuramoto/io.hpp"
#include "kuramoto/observables.hpp"
#include "kuramoto/rng.hpp"
#include "kuramoto/spectral.hpp"

namespace kuramoto {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// RNG substreams: 0 = omega draw, 1 = theta0 draw, 2 = infinity-norm
// sampling, 1000+i = per-seed-replicate omega, 5000+row = per-row theta0.
constexpr std::uint64_t kStreamTheta0 = 1;
constexpr std::uint64_t kStreamSweepOmega = 1000;
constexpr std::uint64_t kStreamSweepTheta0 = 5000;

struct Instance {
  OrientedGraph g;
  Vec omega;      // as specified (uncentered)
  Vec centered;   // mean-zero part
  double mean = 0.0;
};

void require_seed_if_random(const ExperimentConfig& cfg,
                            const OmegaSpec& spec) {
  if (spec.kind == OmegaKind::normal && !cfg.seed.has_value()) {
    throw ConfigError("--seed is required when omega is drawn randomly");
  }
}

Instance make_instance(const ExperimentConfig& cfg) {
  OrientedGraph g = make_graph(cfg.graph_spec);
  const OmegaSpec spec = parse_omega_spec(cfg.omega_spec);
  require_seed_if_random(cfg, spec);
  Vec omega = realize_omega(spec, g.n_vertices(), cfg.effective_seed());
  auto [centered, mean] = center_frequencies(omega);
  return {std::move(g), std::move(omega), std::move(centered), mean};
}

double single_coupling(const ExperimentConfig& cfg) {
  const auto ks = parse_k_values(cfg.k_spec);
  if (ks.size() != 1) {
    throw ConfigError("this command takes a single coupling, not a range");
  }
  return ks[0];
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json graph_to_json(const OrientedGraph& g) {
  return {{"n", g.n_vertices()}, {"e", g.n_edges()}};
}

json bounds_to_json(const BoundReport& r) {
  json out;
  out["k_necessary_maxdeg"] = r.k_necessary_maxdeg;
  out["k_necessary_pinv"] = r.k_necessary_pinv;
  if (r.k_tree_tight.has_value()) {
    out["k_tree_tight"] = *r.k_tree_tight;
  } else {
    out["k_tree_tight"] = nullptr;
  }
  out["k_sufficient_2norm"] = r.k_sufficient_2norm;
  out["k_sufficient_infnorm_estimate"] = r.k_sufficient_infnorm_estimate;
  out["k_contraction"] = r.k_contraction;
  out["lambda2"] = r.lambda2;
  out["lambda_max"] = r.lambda_max;
  return out;
}

json seed_to_json(const ExperimentConfig& cfg) {
  if (cfg.seed.has_value()) return json(*cfg.seed);
  return json(nullptr);
}

void print_bounds_table(std::ostream& err, const BoundReport& r) {
  auto line = [&err](const char* name, double v) {
    err << "  " << std::left << std::setw(32) << name << format_double(v)
        << "\n";
  };
  line("k_necessary_maxdeg", r.k_necessary_maxdeg);
  line("k_necessary_pinv", r.k_necessary_pinv);
  if (r.k_tree_tight.has_value()) line("k_tree_tight", *r.k_tree_tight);
  line("k_sufficient_2norm", r.k_sufficient_2norm);
  line("k_sufficient_infnorm_estimate", r.k_sufficient_infnorm_estimate);
  line("k_contraction", r.k_contraction);
  line("lambda2", r.lambda2);
  line("lambda_max", r.lambda_max);
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
  }
  return dir;
}

SimulationConfig simulation_config(const ExperimentConfig& cfg, double k,
                                   double lambda2, int n) {
  SimulationConfig sim;
  sim.coupling = k;
  sim.step = cfg.step;
  sim.record_every = cfg.record_every;
  sim.t_end = cfg.t_end > 0.0 ? cfg.t_end : default_t_end(k, n, lambda2);
  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return sim;
}

void check_trace_long_enough(const ExperimentConfig& cfg,
                             const SimulationConfig& sim) {
  const long long n_steps = std::llround(sim.t_end / sim.step);
  const long long samples = n_steps / sim.record_every + 1;
  if (std::ceil(cfg.tail_fraction * static_cast<double>(samples)) < 10.0) {
    throw ConfigError(
        "trace would be too short for sync detection; raise --t-end or "
        "lower --record-every");
  }
}

struct RowResult {
  double coupling = 0.0;
  int seed_index = 0;
  bool synchronized = false;
  double r_final = 0.0;
  double big_r_final = 0.0;
  double rate_estimate = 0.0;
  double residual = 0.0;
};

}  // namespace

int run_simulate(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  const Instance inst = make_instance(cfg);
  const double k = single_coupling(cfg);
  const auto spec = spectrum(inst.g.laplacian());
  const SimulationConfig sim =
      simulation_config(cfg, k, spec.lambda2, inst.g.n_vertices());
  check_trace_long_enough(cfg, sim);

  auto rng = make_rng(substream_seed(cfg.effective_seed(), kStreamTheta0));
  const Vec theta0 =
      draw_uniform(inst.g.n_vertices(), -kPi / 4.0, kPi / 4.0, rng);

  // Integrate in the frame rotating at mean(omega): same phase differences,
  // bounded trajectories.
  const SimulationTrace trace =
      integrate(inst.g, inst.centered, sim, theta0, Frame::full);
  const auto observables = compute_observables(inst.g, trace);
  const SyncVerdict verdict = detect_sync(inst.g, inst.centered, k, trace,
                                          cfg.tail_fraction, cfg.residual_tol);
  const BoundReport bounds = bound_report(
      inst.g, inst.omega, cfg.infnorm_samples, cfg.effective_seed());
  const auto r_cap = asymptotic_r_bound(inst.g, inst.omega, k);

  json doc;
  doc["command"] = "simulate";
  doc["graph"] = graph_to_json(inst.g);
  doc["coupling"] = k;
  doc["seed"] = seed_to_json(cfg);
  doc["omega"] = vec_to_json(inst.omega);
  doc["omega_mean"] = inst.mean;
  doc["rotating_frame"] = true;
  doc["theta0"] = vec_to_json(theta0);
  doc["step"] = sim.step;
  doc["t_end"] = sim.t_end;
  doc["record_every"] = sim.record_every;
  doc["samples"] = trace.size();
  doc["sync"] = {{"synchronized", verdict.synchronized},
                 {"residual", verdict.residual},
                 {"rate_estimate", verdict.rate_estimate}};
  const auto& last = observables.back();
  doc["final"] = {{"R", last.classic_r},
                  {"psi", last.mean_phase},
                  {"r", std::sqrt(std::max(0.0, last.r2))},
                  {"r2", last.r2},
                  {"u1", last.u1},
                  {"u2", last.u2}};
  doc["bounds"] = bounds_to_json(bounds);
  if (r_cap.has_value()) {
    doc["asymptotic_r_bound"] = *r_cap;
  } else {
    doc["asymptotic_r_bound"] = nullptr;
  }

  if (!cfg.out_dir.empty()) {
    const auto dir = prepare_out_dir(cfg);
    const auto path = dir / "trace.csv";
    std::ofstream csv(path);
    if (!csv) throw ConfigError("cannot write " + path.string());
    write_trace_csv(csv, trace, observables);
    doc["trace_csv"] = path.string();
  } else {
    doc["trace_csv"] = nullptr;
  }

  out << doc.dump(2) << "\n";
  err << "simulate: synchronized="
      << (verdict.synchronized ? "true" : "false")
      << " residual=" << format_double(verdict.residual)
      << " rate=" << format_double(verdict.rate_estimate)
      << " r_final=" << format_double(std::sqrt(std::max(0.0, last.r2)))
      << "\n";
  return kExitOk;
}

int run_bounds(const ExperimentConfig& cfg, std::ostream& out,
               std::ostream& err) {
  const Instance inst = make_instance(cfg);
  const BoundReport report = bound_report(
      inst.g, inst.omega, cfg.infnorm_samples, cfg.effective_seed());

  json doc;
  doc["command"] = "bounds";
  doc["graph"] = graph_to_json(inst.g);
  doc["seed"] = seed_to_json(cfg);
  doc["omega"] = vec_to_json(inst.omega);
  doc["omega_mean"] = inst.mean;
  doc["infnorm_samples"] = cfg.infnorm_samples;
  doc["bounds"] = bounds_to_json(report);
  out << doc.dump(2) << "\n";

  err << "bounds (omega centered; mean " << format_double(inst.mean)
      << " removed):\n";
  print_bounds_table(err, report);
  return kExitOk;
}

int run_fixedpoint(const ExperimentConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  const Instance inst = make_instance(cfg);
  const double k = single_coupling(cfg);
  if (inst.g.n_vertices() < 2) {
    throw ConfigError("fixedpoint needs at least two oscillators");
  }
  const Vec start = Vec::Zero(inst.g.n_vertices() - 1);
  const FixedPointResult fp =
      solve_fixed_point(inst.g, inst.omega, k, start, cfg.picard_tol,
                        cfg.picard_max_iter);

  json doc;
  doc["command"] = "fixedpoint";
  doc["graph"] = graph_to_json(inst.g);
  doc["coupling"] = k;
  doc["seed"] = seed_to_json(cfg);
  doc["omega"] = vec_to_json(inst.omega);
  doc["omega_mean"] = inst.mean;
  doc["status"] = to_string(fp.status);
  doc["converged"] = fp.converged;
  doc["clamped"] = fp.clamped;
  doc["iterations"] = fp.iterations;
  doc["residual"] = fp.residual;
  doc["certified_stable"] = fp.certified_stable;
  doc["certified_unique"] = fp.certified_unique;
  doc["theta_star"] = vec_to_json(fp.theta_star);
  doc["phi_star"] = vec_to_json(fp.phi_star);
  out << doc.dump(2) << "\n";

  err << "fixedpoint: status=" << to_string(fp.status)
      << " iterations=" << fp.iterations
      << " residual=" << format_double(fp.residual)
      << " certified_stable=" << (fp.certified_stable ? "true" : "false")
      << "\n";
  return kExitOk;
}

int run_threshold(const ExperimentConfig& cfg, std::ostream& out,
                  std::ostream& err) {
  const Instance inst = make_instance(cfg);
  double lo = 0.0;
  double hi = 0.0;
  if (cfg.k_spec.empty()) {
    // Default bracket: the 2-norm bound guarantees a locked state above it.
    hi = 1.05 * bound_sufficient_2norm(inst.g, inst.omega);
    if (hi <= 0.0) hi = 1.0;  // identical frequencies; threshold is 0
  } else {
    const auto ks = parse_k_values(cfg.k_spec);
    if (ks.size() < 2) {
      throw ConfigError("threshold needs a coupling bracket --k lo:hi:steps");
    }
    lo = ks.front();
    hi = ks.back();
  }

  ThresholdResult th;
  try {
    th = empirical_threshold(inst.g, inst.omega, lo, hi, cfg.tol_k);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const BoundReport bounds = bound_report(
      inst.g, inst.omega, cfg.infnorm_samples, cfg.effective_seed());

  json doc;
  doc["command"] = "threshold";
  doc["graph"] = graph_to_json(inst.g);
  doc["seed"] = seed_to_json(cfg);
  doc["omega"] = vec_to_json(inst.omega);
  doc["omega_mean"] = inst.mean;
  doc["bracket"] = {{"lo", lo}, {"hi", hi}};
  doc["tol_k"] = cfg.tol_k;
  doc["k_hat"] = th.k_hat;
  doc["monotone"] = th.monotone;
  json probes = json::array();
  for (const auto& p : th.probes) {
    probes.push_back({{"coupling", p.coupling}, {"exists", p.exists}});
  }
  doc["probes"] = probes;
  doc["bounds"] = bounds_to_json(bounds);

  if (!cfg.out_dir.empty()) {
    const auto dir = prepare_out_dir(cfg);
    const auto path = dir / "probes.csv";
    std::ofstream csv(path);
    if (!csv) throw ConfigError("cannot write " + path.string());
    csv << "coupling,exists\n";
    for (const auto& p : th.probes) {
      csv << format_double(p.coupling) << ',' << (p.exists ? 1 : 0) << '\n';
    }
    doc["probes_csv"] = path.string();
  } else {
    doc["probes_csv"] = nullptr;
  }

  out << doc.dump(2) << "\n";
  err << "threshold: k_hat=" << format_double(th.k_hat)
      << " monotone=" << (th.monotone ? "true" : "false") << " probes:\n";
  for (const auto& p : th.probes) {
    err << "  " << format_double(p.coupling) << "  "
        << (p.exists ? "locked" : "running") << "\n";
  }
  return kExitOk;
}

int run_spectrum(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  const OrientedGraph g = make_graph(cfg.graph_spec);
  const Mat l = g.laplacian();
  const auto spec = spectrum(l);
  const double pinv_norm = infinity_norm(pseudoinverse(l));

  if (cfg.format == "csv") {
    out << "quantity,value\n";
    out << "lambda2," << format_double(spec.lambda2) << "\n";
    out << "lambda_max," << format_double(spec.lambda_max) << "\n";
    out << "pinv_inf_norm," << format_double(pinv_norm) << "\n";
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      out << "eigenvalue_" << i << ','
          << format_double(spec.eigenvalues[i]) << "\n";
    }
  } else if (cfg.format == "json") {
    json doc;
    doc["command"] = "spectrum";
    doc["graph"] = graph_to_json(g);
    doc["eigenvalues"] = vec_to_json(spec.eigenvalues);
    doc["lambda2"] = spec.lambda2;
    doc["lambda_max"] = spec.lambda_max;
    doc["pinv_inf_norm"] = pinv_norm;
    out << doc.dump(2) << "\n";
  } else {
    throw ConfigError("unknown format: " + cfg.format);
  }
  err << "spectrum: lambda2=" << format_double(spec.lambda2)
      << " lambda_max=" << format_double(spec.lambda_max) << "\n";
  return kExitOk;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& out,
              std::ostream& err) {
  OrientedGraph g = make_graph(cfg.graph_spec);
  const OmegaSpec omega_spec = parse_omega_spec(cfg.omega_spec);
  require_seed_if_random(cfg, omega_spec);
  if (cfg.seeds < 1) throw ConfigError("--seeds must be at least 1");
  const auto ks = parse_k_values(cfg.k_spec);
  const auto spec = spectrum(g.laplacian());
  const std::uint64_t base_seed = cfg.effective_seed();
  const int n_seeds = cfg.seeds;

  // One omega per seed replicate, shared across the whole coupling range so
  // the synchronized column flips monotonically along K for a fixed seed.
  std::vector<Vec> omegas;
  std::vector<BoundReport> seed_bounds;
  for (int is = 0; is < n_seeds; ++is) {
    Vec omega(g.n_vertices());
    if (omega_spec.kind == OmegaKind::normal) {
      auto rng = make_rng(substream_seed(base_seed, kStreamSweepOmega + is));
      omega = draw_normal(g.n_vertices(), omega_spec.sigma, rng);
    } else {
      omega = realize_omega(omega_spec, g.n_vertices(), base_seed);
    }
    seed_bounds.push_back(bound_report(g, omega, cfg.infnorm_samples,
                                       substream_seed(base_seed, is)));
    omegas.push_back(std::move(omega));
  }

  for (double k : ks) {
    const SimulationConfig sim =
        simulation_config(cfg, k, spec.lambda2, g.n_vertices());
    check_trace_long_enough(cfg, sim);
  }

  const int n_rows = static_cast<int>(ks.size()) * n_seeds;
  std::vector<RowResult> rows(n_rows);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int row = next.fetch_add(1);
      if (row >= n_rows) return;
      try {
        const int ik = row / n_seeds;
        const int is = row % n_seeds;
        const double k = ks[ik];
        const Vec& omega = omegas[is];
        const Vec centered = (omega.array() - omega.mean()).matrix();
        auto rng =
            make_rng(substream_seed(base_seed, kStreamSweepTheta0 + row));
        const Vec theta0 =
            draw_uniform(g.n_vertices(), -kPi / 4.0, kPi / 4.0, rng);
        const SimulationConfig sim =
            simulation_config(cfg, k, spec.lambda2, g.n_vertices());
        const SimulationTrace trace =
            integrate(g, centered, sim, theta0, Frame::full);
        const SyncVerdict verdict =
            detect_sync(g, centered, k, trace, cfg.tail_fraction,
                        cfg.residual_tol);
        RowResult& r = rows[row];
        r.coupling = k;
        r.seed_index = is;
        r.synchronized = verdict.synchronized;
        r.rate_estimate = verdict.rate_estimate;
        r.residual = verdict.residual;
        const Vec& last = trace.states.back();
        r.r_final =
            std::sqrt(std::max(0.0, order_parameter_general(g, last)));
        r.big_r_final = order_parameter_classic(last).magnitude;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs
                          : static_cast<int>(
                                std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, n_rows);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  auto csv_row = [&](std::ostream& os, const RowResult& r) {
    const BoundReport& b = seed_bounds[r.seed_index];
    os << format_double(r.coupling) << ',' << r.seed_index << ','
       << (r.synchronized ? 1 : 0) << ',' << format_double(r.r_final) << ','
       << format_double(r.big_r_final) << ','
       << format_double(r.rate_estimate) << ','
       << format_double(r.residual) << ','
       << format_double(b.k_necessary_maxdeg) << ','
       << format_double(b.k_necessary_pinv) << ','
       << (b.k_tree_tight ? format_double(*b.k_tree_tight) : std::string())
       << ',' << format_double(b.k_sufficient_2norm) << ','
       << format_double(b.k_sufficient_infnorm_estimate) << ','
       << format_double(b.k_contraction) << '\n';
  };
  const char* csv_header =
      "k,seed,synchronized,r_final,R_final,rate_estimate,residual,"
      "k_necessary_maxdeg,k_necessary_pinv,k_tree_tight,"
      "k_sufficient_2norm,k_sufficient_infnorm_estimate,k_contraction\n";

  json doc;
  doc["command"] = "sweep";
  doc["graph"] = graph_to_json(g);
  doc["seed"] = seed_to_json(cfg);
  doc["seeds"] = n_seeds;
  doc["couplings"] = ks;
  json jrows = json::array();
  for (const auto& r : rows) {
    const BoundReport& b = seed_bounds[r.seed_index];
    json jr;
    jr["k"] = r.coupling;
    jr["seed"] = r.seed_index;
    jr["synchronized"] = r.synchronized;
    jr["r_final"] = r.r_final;
    jr["R_final"] = r.big_r_final;
    jr["rate_estimate"] = r.rate_estimate;
    jr["residual"] = r.residual;
    jr["bounds"] = bounds_to_json(b);
    jrows.push_back(jr);
  }
  doc["rows"] = jrows;

  if (!cfg.out_dir.empty()) {
    const auto dir = prepare_out_dir(cfg);
    const auto path = dir / "sweep.csv";
    std::ofstream csv(path);
    if (!csv) throw ConfigError("cannot write " + path.string());
    csv << csv_header;
    for (const auto& r : rows) csv_row(csv, r);
    doc["sweep_csv"] = path.string();
  } else {
    doc["sweep_csv"] = nullptr;
  }

  out << doc.dump(2) << "\n";
  err << "sweep: " << n_rows << " rows (" << ks.size() << " couplings x "
      << n_seeds << " seeds)\n";
  return kExitOk;
}

}  // namespace kuramoto
