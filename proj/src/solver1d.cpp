#include "qgrad/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgrad/errors.hpp"
#include "qgrad/matrices.hpp"
#include "qgrad/parallel.hpp"
#include "qgrad/spectral.hpp"

namespace qgrad {

const char* boundary_name(BoundaryKind b) { return b == BoundaryKind::Periodic ? "periodic" : "copy"; }

BoundaryKind parse_boundary(const std::string& s) {
    if (s == "periodic") return BoundaryKind::Periodic;
    if (s == "copy") return BoundaryKind::Copy;
    throw DomainError("unknown boundary '" + s + "'");
}

const char* profile_name(InitialProfile p) { return p == InitialProfile::Riemann ? "riemann" : "smooth"; }

InitialProfile parse_profile(const std::string& s) {
    if (s == "riemann") return InitialProfile::Riemann;
    if (s == "smooth") return InitialProfile::Smooth;
    throw DomainError("unknown profile '" + s + "'");
}

void SimConfig::validate() const {
    if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("cfl must lie in (0, 1)");
    if (cells < 4) throw DomainError("need at least 4 cells");
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("length must be positive");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be finite and non-negative");
    if (snapshots < 1) throw DomainError("need at least one snapshot");
    side_to_state(left, theta, hhat);
    side_to_state(right, theta, hhat);
}

MomentState5 side_to_state(const SideState& side, GasStatistics theta, double hhat) {
    EquilibriumParams eq;
    eq.theta = theta;
    eq.z = side.z;
    eq.u = Vec3(side.u1, 0.0, 0.0);
    eq.T = side.T;
    eq.hhat = hhat;
    eq.validate();
    const RhoP rp = equilibrium_rho_p(eq);
    return {rp.rho, side.u1, rp.p, 0.0, rp.p};
}

SimState initial_state(const SimConfig& config) {
    config.validate();
    SimState s;
    s.cells.resize(config.cells);
    if (config.profile == InitialProfile::Riemann) {
        const MomentState5 L = side_to_state(config.left, config.theta, config.hhat);
        const MomentState5 R = side_to_state(config.right, config.theta, config.hhat);
        for (int i = 0; i < config.cells; ++i) s.cells[i] = config.cell_center(i) < 0.5 * config.length ? L : R;
        return s;
    }
    // Smooth bump between the two sides; periodic-compatible.
    for (int i = 0; i < config.cells; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * config.cell_center(i) / config.length));
        SideState mid;
        mid.z = std::exp((1.0 - w) * std::log(config.left.z) + w * std::log(config.right.z));
        mid.u1 = (1.0 - w) * config.left.u1 + w * config.right.u1;
        mid.T = (1.0 - w) * config.left.T + w * config.right.T;
        s.cells[i] = side_to_state(mid, config.theta, config.hhat);
    }
    return s;
}

namespace {

Mat5 transport_matrix(const MomentState5& c, const SimConfig& config) {
    const EquilibriumParams eq = equilibrium_of(c, config.theta, config.hhat);
    return reduce_to_1d(SystemKind::FinalR13, c, eq);
}

double spectral_radius(const Mat5& A) {
    const EigenResult e = eigendecompose(A);
    return e.values.cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<double> local_speeds(const SimState& state, const SimConfig& config) {
    std::vector<double> alpha(state.cells.size());
    parallel_for(state.cells.size(), config.threads, [&](std::size_t i) {
        alpha[i] = spectral_radius(transport_matrix(state.cells[i], config));
    });
    return alpha;
}

double stable_time_step(const SimState& state, const SimConfig& config) {
    const std::vector<double> alpha = local_speeds(state, config);
    const double amax = *std::max_element(alpha.begin(), alpha.end());
    const double dt = config.cfl * config.dx() / amax;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw CFLViolation("non-positive time step");
    return dt;
}

SimState step(const SimState& state, const SimConfig& config, double dt_max) {
    const int n = static_cast<int>(state.cells.size());
    std::vector<Mat5> A(n);
    std::vector<double> alpha(n);
    parallel_for(n, config.threads, [&](std::size_t i) {
        A[i] = transport_matrix(state.cells[i], config);
        alpha[i] = spectral_radius(A[i]);
    });
    const double dt = std::min(dt_max, config.cfl * config.dx() / *std::max_element(alpha.begin(), alpha.end()));
    if (!(dt > 0.0) || !std::isfinite(dt)) throw CFLViolation("non-positive time step");

    std::vector<Vec5> w(n);
    for (int i = 0; i < n; ++i) w[i] = state.cells[i].to_vector();
    auto neighbour = [&](int i) -> const Vec5& {
        if (config.boundary == BoundaryKind::Periodic) return w[(i + n) % n];
        return w[std::clamp(i, 0, n - 1)];
    };

    const double r = dt / config.dx();
    const double decay = std::exp(-dt / config.tau);
    SimState next;
    next.time = state.time + dt;
    next.cells.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vec5& wl = neighbour(i - 1);
        const Vec5& wr = neighbour(i + 1);
        Vec5 u = w[i] - 0.5 * r * (A[i] * (wr - wl)) + 0.5 * r * alpha[i] * (wr - 2.0 * w[i] + wl);
        // The source only touches sigma11 and q1 and is integrated exactly.
        u[slot5::p11] = u[slot5::p] + (u[slot5::p11] - u[slot5::p]) * decay;
        u[slot5::q1] *= decay;
        const MomentState5 c = MomentState5::from_vector(u);
        if (!c.admissible() || !is_admissible(c.lift(), config.theta, config.hhat))
            throw InadmissibleCell("cell " + std::to_string(i) + " left the admissible set at t=" +
                                       std::to_string(next.time),
                                   i);
        next.cells[i] = c;
    }
    return next;
}

LedgerRow ledger_row(const SimState& state, const SimConfig& config) {
    LedgerRow row{state.time, 0.0, 0.0, 0.0};
    for (const MomentState5& c : state.cells) {
        row.mass += c.rho;
        row.momentum += c.rho * c.u1;
        row.energy += 1.5 * c.p + 0.5 * c.rho * c.u1 * c.u1;
    }
    row.mass *= config.dx();
    row.momentum *= config.dx();
    row.energy *= config.dx();
    return row;
}

double state_norm(const SimState& state) {
    double m = 0.0;
    for (const MomentState5& c : state.cells) m = std::max(m, c.to_vector().cwiseAbs().maxCoeff());
    return m;
}

RunResult run_from(const SimState& initial, const SimConfig& config) {
    config.validate();
    RunResult out;
    out.snapshots.push_back(initial);
    out.ledger.push_back(ledger_row(initial, config));
    SimState s = initial;
    for (int k = 1; k <= config.snapshots; ++k) {
        const double target = initial.time + config.t_end * k / config.snapshots;
        while (s.time < target) {
            s = step(s, config, target - s.time);
            // Snap to the snapshot time when the last step was capped.
            if (target - s.time < 1e-12 * std::max(1.0, target)) s.time = target;
            ++out.steps;
        }
        out.snapshots.push_back(s);
        out.ledger.push_back(ledger_row(s, config));
    }
    return out;
}

RunResult run(const SimConfig& config) { return run_from(initial_state(config), config); }

}  // namespace qgrad
