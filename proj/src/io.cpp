#include "kuramoto/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace kuramoto {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const SimulationTrace& trace,
                     const std::vector<ObservableRow>& observables) {
  if (observables.size() != trace.states.size()) {
    throw std::invalid_argument("observables do not align with the trace");
  }
  const auto n = trace.states.empty() ? 0 : trace.states[0].size();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i) os << ",theta_" << i;
  os << ",R,psi,r2,U1,U2\n";
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    os << format_double(trace.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ',' << format_double(trace.states[k][i]);
    }
    const auto& row = observables[k];
    os << ',' << format_double(row.classic_r) << ','
       << format_double(row.mean_phase) << ',' << format_double(row.r2) << ','
       << format_double(row.u1) << ',' << format_double(row.u2) << '\n';
  }
}

}  // namespace kuramoto
