#pragma once

#include <array>

namespace qgrad {

enum class GasStatistics : int { Boson = -1, Classical = 0, Fermion = 1 };

int theta_of(GasStatistics stats);
GasStatistics statistics_from_theta(int theta);  // throws DomainError
const char* statistics_name(GasStatistics stats);

// Largest admissible Bose fugacity.
inline constexpr double kBoseFugacityMax = 1.0 - 1e-12;

// Values of -theta * Li_s(-theta z) for s = 1/2, 3/2, 5/2, 7/2, 9/2.
// Orders are addressed by twice their value: li(1) is s = 1/2, li(9) is s = 9/2.
struct PolylogSet {
    double z = 0.0;
    GasStatistics stats = GasStatistics::Classical;
    std::array<double, 5> values{};

    double li(int twice_s) const;
};

PolylogSet eval_polylog_set(double z, GasStatistics stats);

// d li[s]/dz = li[s-1]/z, for twice_s in {3, 5, 7, 9}.
double polylog_derivative(double z, GasStatistics stats, int twice_s);

void check_fugacity(double z, GasStatistics stats);  // throws DomainError

namespace detail {

// Power (Boson) or alternating (Fermion) series; valid for z <= 1.
std::array<double, 5> polylog_series(double z, int theta);
// Fermi-Dirac integral by adaptive Gauss-Kronrod; Fermion only.
std::array<double, 5> fermi_dirac_quadrature(double z);
// Expansion of Li_s(e^mu) in mu = ln z about z = 1; Boson only.
std::array<double, 5> bose_log_expansion(double z);

// Gamma(n/2) for odd n (positive or negative).
double gamma_half_integer(int twice_x);
// Riemann zeta at x = n/2 for odd n.
double zeta_half_integer(int twice_x);
// Dirichlet eta for real s > 0.
double dirichlet_eta(double s);

inline constexpr double kSeriesSwitch = 0.9;

}  // namespace detail

}  // namespace qgrad
