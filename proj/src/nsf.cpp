#include "qgrad/analysis.hpp"
#include "qgrad/coefficients.hpp"

namespace qgrad {

double fourier_target(const PolylogSet& li, double p, double tau) {
    return 2.5 * tau * p * (3.5 * li.li(7) / li.li(5) - 2.5 * li.li(5) / li.li(3));
}

NSFReport maxwellian_iteration_nsf(SystemKind kind, double z, GasStatistics theta, double T, double tau,
                                   double hhat) {
    EquilibriumParams eq;
    eq.theta = theta;
    eq.z = z;
    eq.T = T;
    eq.hhat = hhat;
    eq.validate();
    const PolylogSet li = eval_polylog_set(z, theta);
    const RhoP rp = equilibrium_rho_p(eq, li);
    const MomentState13 s = MomentState13::equilibrium(eq);
    const Mat13 A = assemble_system(kind, s, eq, Vec3::UnitX()).A;

    NSFReport r;
    r.kind = kind;
    // First iterate: sigma12 = -tau A[p12, u2] du2/dx1 and q1 = -tau (q1 row) . dw_eq/dx1.
    r.mu = tau * A(slot::p12, slot::u2);
    r.mu_target = tau * rp.p;
    r.kappa_target = fourier_target(li, rp.p, tau);

    const double q_per_rho = -tau * A(slot::q1, slot::rho);
    const double q_per_p = -tau * (A(slot::q1, slot::p11) + A(slot::q1, slot::p22) + A(slot::q1, slot::p33));

    // Two gradient families of the equilibrium manifold: unit density gradient at
    // fixed pressure, and unit pressure gradient at fixed density.
    const EquilibriumSensitivity sens = equilibrium_sensitivity(li);
    const double dT_P = T * sens.dlnT_dlnrho / rp.rho, dz_P = z * sens.dlnz_dlnrho / rp.rho;
    const double dT_R = T * sens.dlnT_dlnp / rp.p, dz_R = z * sens.dlnz_dlnp / rp.p;

    // q1 = alpha dz/dx + beta dT/dx on both families.
    const double det = dz_P * dT_R - dT_P * dz_R;
    const double alpha = (q_per_rho * dT_R - dT_P * q_per_p) / det;
    const double beta = (dz_P * q_per_p - q_per_rho * dz_R) / det;
    r.z_coefficient = alpha;
    r.kappa = -beta;
    r.kappa_route_p = -q_per_rho / dT_P;
    r.kappa_route_rho = -q_per_p / dT_R;
    r.kappa_rel_error = std::abs(r.kappa - r.kappa_target) / std::abs(r.kappa_target);
    r.mismatch = {q_per_rho + r.kappa_target * dT_P, q_per_p + r.kappa_target * dT_R};
    return r;
}

}  // namespace qgrad
