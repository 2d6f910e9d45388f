#pragma once

#include "qgrad/polylog.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

// Fugacity-dependent constants shared by the closure and the regularized system.
// The state-free members depend only on (theta, z, T).
struct LiDerivedCoeffs {
    double frakB = 1.0;       // (7/2) li9/li5 - (5/2) li7^2/li5^2, heat-flux normalisation of the ansatz
    double frakB_low = 1.0;   // 2 / (5 - 3 li3^2/(li1 li5)), used by the 1D Grad matrix
    double frakB_high = 1.0;  // 2 / (5 - 3 li5^2/(li3 li7)), used by D and M
    double frakD = 0.0;       // (5/2)(1 - li3 li7 / li5^2)
    double m1 = 1.0;          // T li7/li5
    double m2 = 0.0;
    double m3 = 5.0 / 6.0;
    double m4 = 1.0;          // T (7/2 li9/li7 - 5/2 li7/li5), stress gradient in the heat-flux rows
    double m5 = 0.0;          // density gradient in the q1 row
    double p_over_rho = 1.0;  // T li5/li3
};

LiDerivedCoeffs derive_coeffs(const PolylogSet& li, double T);

// Coefficients a1, a2, a3 of the 1D Grad matrix. They carry state dependence
// through sigma11, p and rho, so they live apart from LiDerivedCoeffs.
struct A5Coeffs {
    double a1, a2, a3;
};

A5Coeffs a5_coeffs(const MomentState5& state, const PolylogSet& li, double T);

// Partial derivatives of (T, z) with respect to (rho, p) along the equilibrium
// manifold rho = hhat (2 pi T)^{3/2} li3, p = rho T li5/li3.
struct EquilibriumSensitivity {
    double dlnT_dlnrho, dlnT_dlnp;
    double dlnz_dlnrho, dlnz_dlnp;
};

EquilibriumSensitivity equilibrium_sensitivity(const PolylogSet& li);

// Gradient of F = T li[a]/li[b] with respect to (rho, p).
struct RatioGradient {
    double value, d_rho, d_p;
};

RatioGradient temperature_ratio_gradient(const PolylogSet& li, double T, double rho, double p, int twice_a,
                                         int twice_b);

}  // namespace qgrad
