#include "qgrad/random.hpp"

#include <cmath>
#include <numbers>

namespace qgrad {

Vec3 random_unit_vector(CounterRng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Mat3 random_rotation(CounterRng& rng) {
    // Uniform unit quaternion.
    const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double t1 = 2.0 * std::numbers::pi * u2, t2 = 2.0 * std::numbers::pi * u3;
    const Eigen::Quaterniond q(b * std::cos(t2), a * std::sin(t1), a * std::cos(t1), b * std::sin(t2));
    return q.normalized().toRotationMatrix();
}

double random_fugacity(GasStatistics theta, CounterRng& rng, const RandomStateOptions& opt) {
    double lo = opt.z_min, hi = opt.z_max;
    if (!(lo > 0.0 && hi > lo)) {
        switch (theta) {
            case GasStatistics::Boson: lo = 0.01; hi = 0.95; break;
            case GasStatistics::Classical: lo = 0.05; hi = 5.0; break;
            case GasStatistics::Fermion: lo = 0.05; hi = 50.0; break;
        }
    }
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

RandomState random_admissible_state(GasStatistics theta, CounterRng& rng, const RandomStateOptions& opt) {
    EquilibriumParams eq;
    eq.theta = theta;
    eq.z = random_fugacity(theta, rng, opt);
    eq.T = rng.uniform(opt.T_min, opt.T_max);
    for (int i = 0; i < 3; ++i) eq.u[i] = rng.uniform(-opt.u_max, opt.u_max);
    const RhoP rp = equilibrium_rho_p(eq);

    Vec3 weights;
    for (int i = 0; i < 3; ++i) weights[i] = rng.uniform(opt.anisotropy_floor, 1.0);
    weights *= 3.0 / weights.sum();
    const Mat3 R = random_rotation(rng);

    RandomState out;
    out.eq = eq;
    out.state.rho = rp.rho;
    out.state.u = eq.u;
    out.state.p_ij = rp.p * R * weights.asDiagonal() * R.transpose();
    out.state.p_ij = 0.5 * (out.state.p_ij + out.state.p_ij.transpose()).eval();
    // Restore the exact trace so (rho, p) and hence the fitted equilibrium are unchanged.
    out.state.p_ij += (rp.p - out.state.pressure()) * Mat3::Identity();
    for (int i = 0; i < 3; ++i) out.state.q[i] = rng.uniform(-opt.q_hat_max, opt.q_hat_max) * rp.p * std::sqrt(eq.T);
    return out;
}

}  // namespace qgrad
