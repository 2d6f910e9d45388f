#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qgrad/polylog.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

enum class BoundaryKind { Periodic, Copy };
enum class InitialProfile { Riemann, Smooth };

const char* boundary_name(BoundaryKind b);
BoundaryKind parse_boundary(const std::string& s);
const char* profile_name(InitialProfile p);
InitialProfile parse_profile(const std::string& s);

// Equilibrium data for one side of the initial condition (sigma11 = q1 = 0).
struct SideState {
    double z = 0.5;
    double u1 = 0.0;
    double T = 1.0;
};

struct SimConfig {
    GasStatistics theta = GasStatistics::Fermion;
    int cells = 400;
    double length = 1.0;
    double cfl = 0.9;
    double tau = 1.0;
    double t_end = 0.1;
    BoundaryKind boundary = BoundaryKind::Copy;
    InitialProfile profile = InitialProfile::Riemann;
    SideState left;
    SideState right;
    double hhat = 1.0;
    int snapshots = 10;  // evenly spaced in time, plus the initial state
    unsigned threads = 1;

    void validate() const;  // throws DomainError
    double dx() const { return length / cells; }
    double cell_center(int i) const { return (i + 0.5) * dx(); }
};

struct SimState {
    double time = 0.0;
    std::vector<MomentState5> cells;
};

struct LedgerRow {
    double time;
    double mass;
    double momentum;
    double energy;
};

struct RunResult {
    std::vector<SimState> snapshots;
    std::vector<LedgerRow> ledger;  // one row per snapshot
    long steps = 0;
};

MomentState5 side_to_state(const SideState& side, GasStatistics theta, double hhat = 1.0);
SimState initial_state(const SimConfig& config);

// Largest local |lambda| of the reduced regularized matrix at each cell.
std::vector<double> local_speeds(const SimState& state, const SimConfig& config);
double stable_time_step(const SimState& state, const SimConfig& config);

// One transport + relaxation step; the CFL step is capped at dt_max.
SimState step(const SimState& state, const SimConfig& config,
              double dt_max = std::numeric_limits<double>::infinity());

LedgerRow ledger_row(const SimState& state, const SimConfig& config);
double state_norm(const SimState& state);  // max |w| over cells and components

RunResult run(const SimConfig& config);
RunResult run_from(const SimState& initial, const SimConfig& config);

}  // namespace qgrad
