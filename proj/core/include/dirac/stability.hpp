#pragma once

#include <string>

#include "dirac/grid.hpp"
#include "dirac/potential.hpp"

namespace dirac {

enum class Method { EWI, SEWI, TSFP };

/// Config-facing spellings: "ewi-fp", "sewi-fp", "tsfp".
std::string method_name(Method m);
/// Parses the spellings above (plus the short aliases "ewi"/"sewi");
/// ConfigError otherwise.
Method method_from_name(const std::string& name);

/// Sum of sup-norm bounds of the potential components, the constant C of the
/// symmetric scheme's stability condition. Declared bounds are used verbatim;
/// undeclared components fall back to sampling on a 4x refined grid at
/// t in {0, horizon/2, horizon} (a heuristic for time-dependent potentials:
/// the underlying stability result assumes constant potentials).
double potential_sup_sum(const PotentialSpec& spec, const Grid& grid, double horizon);

struct GateResult {
    enum class Status { Ok, Warning, Rejected };
    Status status = Status::Ok;
    std::string message; // empty for a clean pass
    double bound = 0.0;  // the evaluated bound on tau (inf if unconstrained)

    bool ok() const { return status != Status::Rejected; }
};

/// Time-step admissibility per method, evaluated on |tau| (the symmetric
/// scheme is also stepped backwards):
///  - sEWI: |tau| < min(pi/(3*delta_max), (2-sqrt(3))/(2*C)) with
///    delta_max = max_l sqrt(1+|mu_l|^2) from the grid and C = eps-independent
///    potential sup sum; violation => Rejected with the evaluated bound.
///  - EWI: |tau| <= 1; violation => Warning only.
///  - TSFP: unconditionally Ok.
GateResult stability_gate(Method method, double tau, const Grid& grid, double c_sum);

} // namespace dirac
