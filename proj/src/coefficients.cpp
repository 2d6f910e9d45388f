#include "qgrad/coefficients.hpp"

namespace qgrad {

LiDerivedCoeffs derive_coeffs(const PolylogSet& li, double T) {
    const double l1 = li.li(1), l3 = li.li(3), l5 = li.li(5), l7 = li.li(7), l9 = li.li(9);
    const double r75 = l7 / l5;
    const double r97 = l9 / l7;
    const double X = l3 * l7 / (l5 * l5);
    const double a = l1 / l3;
    const double c = l3 / l5;

    LiDerivedCoeffs k;
    k.frakB = 3.5 * l9 / l5 - 2.5 * r75 * r75;
    k.frakB_low = 2.0 / (5.0 - 3.0 * l3 * l3 / (l1 * l5));
    k.frakB_high = 2.0 / (5.0 - 3.0 * l5 * l5 / (l3 * l7));
    k.frakD = 2.5 * (1.0 - X);
    k.p_over_rho = T * l5 / l3;
    k.m1 = T * r75;
    k.m2 = 0.5 * (1.0 - 1.0 / X);
    k.m3 = 5.0 / (6.0 * k.frakB_high) * T / (5.0 * a - 3.0 * c) * (2.0 * a * r75 - 3.0 * (1.0 - X));
    k.m4 = T * (3.5 * r97 - 2.5 * r75);
    k.m5 = 5.0 * k.p_over_rho * T * (1.0 - 2.0 * X + a * r75) / (5.0 * a - 3.0 * c);
    return k;
}

A5Coeffs a5_coeffs(const MomentState5& s, const PolylogSet& li, double T) {
    const double l1 = li.li(1), l3 = li.li(3), l5 = li.li(5), l7 = li.li(7), l9 = li.li(9);
    const double b = 2.0 / (5.0 - 3.0 * l3 * l3 / (l1 * l5));
    const double sigma = s.sigma11();
    const double r31 = l3 / l1;

    A5Coeffs out;
    out.a1 = 5.0 * s.p * T * b / (2.0 * s.rho) * (3.5 * l3 * l3 * l7 / (l1 * l5 * l5) - 2.5 * r31) +
             7.0 * sigma * T * b / (2.0 * s.rho) *
                 (l3 * l3 * l9 / (l1 * l5 * l7) - 2.5 * (r31 - l3 * l5 * l9 / (l1 * l7 * l7)));
    out.a2 = 3.5 * T * l9 / l7 - 1.5 * s.p / s.rho - s.p11 / s.rho;
    out.a3 = 2.5 * T * ((1.0 + b) * l7 / l5 - 1.5 * b * r31 * (1.0 - l3 * l7 / (l5 * l5))) +
             3.5 * T * ((sigma * b / s.p - 1.0) * l9 / l7 - 1.5 * b * r31 * (sigma / s.p) * (1.0 - l5 * l9 / (l7 * l7)));
    return out;
}

EquilibriumSensitivity equilibrium_sensitivity(const PolylogSet& li) {
    // [dln rho; dln p] = K [dln T; dln z], K = [[3/2, li1/li3], [5/2, li3/li5]].
    const double k11 = 1.5, k12 = li.li(1) / li.li(3);
    const double k21 = 2.5, k22 = li.li(3) / li.li(5);
    const double det = k11 * k22 - k12 * k21;
    return {k22 / det, -k12 / det, -k21 / det, k11 / det};
}

RatioGradient temperature_ratio_gradient(const PolylogSet& li, double T, double rho, double p, int twice_a,
                                         int twice_b) {
    const EquilibriumSensitivity s = equilibrium_sensitivity(li);
    const double value = T * li.li(twice_a) / li.li(twice_b);
    // dln li[s]/dln z = li[s-1]/li[s].
    const double dz = li.li(twice_a - 2) / li.li(twice_a) - li.li(twice_b - 2) / li.li(twice_b);
    const double dln_rho = s.dlnT_dlnrho + dz * s.dlnz_dlnrho;
    const double dln_p = s.dlnT_dlnp + dz * s.dlnz_dlnp;
    return {value, value * dln_rho / rho, value * dln_p / p};
}

}  // namespace qgrad
