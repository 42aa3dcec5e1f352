#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kuramoto/dynamics.hpp"
#include "kuramoto/observables.hpp"

namespace kuramoto {

/// Shortest round-trip decimal representation ("%.17g").
std::string format_double(double x);

/// CSV with header t,theta_0..theta_{N-1},R,psi,r2,U1,U2; one row per
/// recorded sample. observables must align with trace.
void write_trace_csv(std::ostream& os, const SimulationTrace& trace,
                     const std::vector<ObservableRow>& observables);

}  // namespace kuramoto
