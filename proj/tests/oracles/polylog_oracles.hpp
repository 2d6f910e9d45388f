#pragma once

// Three independent routes to -theta Li_s(-theta z) at half-integer s, none of
// which share code with the library: a plain power series, the trapezoid rule on
// the Fermi-Dirac / Bose-Einstein integral in logarithmic variables, and an
// accelerated alternating sum.

#include <cmath>
#include <vector>

namespace oracle {

// sum_k (theta')^(k+1) z^k / k^s with theta' = -1 for Fermi (alternating), +1 for Bose.
// Long-double accumulation; only sensible for z well inside the unit disk.
inline double series_polylog(double s, double z, int theta) {
    long double sum = 0.0L, zk = 1.0L;
    for (int k = 1; k < 20000; ++k) {
        zk *= z;
        const long double term = zk / std::pow(static_cast<long double>(k), static_cast<long double>(s));
        sum += (theta > 0 && k % 2 == 0) ? -term : term;
        if (term < 1e-22L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

// (1/Gamma(s)) int_0^inf x^(s-1) / (e^x / z + theta) dx with x = e^t, trapezoid in t.
// The integrand decays like e^(s t) on the left and doubly exponentially on the right,
// so the plain trapezoid rule is spectrally accurate.
inline double integral_polylog(double s, double z, int theta) {
    const double eta = std::log(z);
    const double t_lo = -60.0 / s, t_hi = std::log(std::max(eta, 0.0) + 60.0);
    const int n = 40000;
    const double h = (t_hi - t_lo) / n;
    long double sum = 0.0L;
    for (int i = 0; i <= n; ++i) {
        const double t = t_lo + i * h;
        const double x = std::exp(t);
        // 1 / (e^(x - eta) + theta), written to avoid overflow.
        const double a = x - eta;
        double occ;
        if (a > 0)
            occ = std::exp(-a) / (1.0 + theta * std::exp(-a));
        else
            occ = 1.0 / (std::exp(a) + theta);
        const long double f = std::pow(x, s) * occ;
        sum += (i == 0 || i == n) ? 0.5L * f : f;
    }
    return static_cast<double>(sum * h / std::tgamma(s));
}

// Cohen-Rodriguez Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a_k,
// a_k = z^(k+1) / (k+1)^s, for the Fermi case with 0 < z <= 1.
inline double alternating_polylog(double s, double z) {
    const int n = 60;
    long double d = std::pow(3.0L + std::sqrt(8.0L), n);
    d = 0.5L * (d + 1.0L / d);
    long double b = -1.0L, c = -d, sum = 0.0L;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        const long double a = std::pow(static_cast<long double>(z), k + 1) /
                              std::pow(static_cast<long double>(k + 1), static_cast<long double>(s));
        sum += c * a;
        b = b * (static_cast<long double>(k) + n) * (static_cast<long double>(k) - n) /
            ((k + 0.5L) * (k + 1.0L));
    }
    return static_cast<double>(sum / d);
}

}  // namespace oracle
