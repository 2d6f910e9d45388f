#pragma once

// The regularized system in material-derivative form, E Dw/Dt + G dw/dx = 0 along x,
// written row by row from its balance equations. The x-gradient of T li7/li5 is
// taken by central differences of the equilibrium fit, so the only shared pieces
// with the library are the polylogarithm and the fit. Then A = u1 I + E^-1 G.

#include <Eigen/Dense>

#include "qgrad/coefficients.hpp"
#include "qgrad/linalg.hpp"
#include "qgrad/state.hpp"

namespace oracle {

inline double temperature_li_ratio(double rho, double p, qgrad::GasStatistics theta) {
    const qgrad::EquilibriumParams eq = qgrad::fit_equilibrium(rho, p, theta);
    const qgrad::PolylogSet li = qgrad::eval_polylog_set(eq.z, theta);
    return eq.T * li.li(7) / li.li(5);
}

inline qgrad::Mat13 final_system_matrix_x(const qgrad::MomentState13& s, qgrad::GasStatistics theta) {
    using namespace qgrad;
    const double rho = s.rho, p = s.pressure();
    const Mat3 sigma = s.p_ij - p * Mat3::Identity();
    const EquilibriumParams eq = fit_equilibrium(rho, p, theta);
    const PolylogSet li = eval_polylog_set(eq.z, theta);
    const double T = eq.T;
    const double r75 = li.li(7) / li.li(5), r97 = li.li(9) / li.li(7);
    // The projection bracket of the stress equations.
    const double b = derive_coeffs(li, T).frakB_high;

    const double hr = 1e-6 * rho, hp = 1e-6 * p;
    const double F_rho = (temperature_li_ratio(rho + hr, p, theta) - temperature_li_ratio(rho - hr, p, theta)) / (2 * hr);
    const double F_p = (temperature_li_ratio(rho, p + hp, theta) - temperature_li_ratio(rho, p - hp, theta)) / (2 * hp);

    Eigen::Matrix<double, 1, 13> dp = Eigen::Matrix<double, 1, 13>::Zero();  // row of d p / d w
    for (int k = 0; k < 3; ++k) dp[slot::p(k, k)] = 1.0 / 3.0;
    auto e = [](int k) {
        Eigen::Matrix<double, 1, 13> r = Eigen::Matrix<double, 1, 13>::Zero();
        r[k] = 1.0;
        return r;
    };
    const int x = 0;
    Mat13 E = Mat13::Zero(), G = Mat13::Zero();

    E.row(slot::rho) = e(slot::rho);
    G.row(slot::rho) = rho * e(slot::u(x));
    for (int i = 0; i < 3; ++i) {
        E.row(slot::u(i)) = rho * e(slot::u(i));
        G.row(slot::u(i)) = e(slot::p(i, x));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double dij = i == j ? 1.0 : 0.0;
            const int r = slot::p(i, j);
            E.row(r) = e(r) - dij * dp + dij * b * (dp - (p / rho) * e(slot::rho));
            Eigen::Matrix<double, 1, 13> g = Eigen::Matrix<double, 1, 13>::Zero();
            // 2p du<i/dxj>, with only x derivatives present.
            g += 2 * p * (0.5 * ((j == x) * e(slot::u(i)) + (i == x) * e(slot::u(j))) - dij / 3.0 * e(slot::u(x)));
            g += 0.8 * (0.5 * ((j == x) * e(slot::q(i)) + (i == x) * e(slot::q(j))) - dij / 3.0 * e(slot::q(x)));
            Eigen::Matrix<double, 1, 13> si = Eigen::Matrix<double, 1, 13>::Zero(), sj = si, sx = si, px = si;
            for (int d = 0; d < 3; ++d) {
                si += sigma(d, i) * e(slot::u(d));
                sj += sigma(d, j) * e(slot::u(d));
                sx += sigma(d, x) * e(slot::u(d));
                px += s.p_ij(d, x) * e(slot::u(d));
            }
            g += 0.8 * (0.5 * ((j == x) * si + (i == x) * sj) - dij / 3.0 * sx);
            g += dij * b * (2.0 / 3.0) * (px + e(slot::q(x)));
            G.row(r) = g;
        }
    for (int i = 0; i < 3; ++i) {
        const int r = slot::q(i);
        Eigen::Matrix<double, 1, 13> row = e(r) + 2.5 * (p - rho * T * r75) * e(slot::u(i));
        for (int j = 0; j < 3; ++j) row += sigma(i, j) * e(slot::u(j));
        E.row(r) = row;
        Eigen::Matrix<double, 1, 13> g = Eigen::Matrix<double, 1, 13>::Zero();
        if (i == x) g += 2.5 * p * (F_rho * e(slot::rho) + F_p * dp);
        g += T * (3.5 * r97 - 2.5 * r75) * (e(slot::p(i, x)) - (i == x) * dp);
        G.row(r) = g;
    }
    return s.u[x] * Mat13::Identity() + E.partialPivLu().solve(G);
}

}  // namespace oracle
