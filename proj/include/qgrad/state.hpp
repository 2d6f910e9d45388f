#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qgrad/linalg.hpp"
#include "qgrad/polylog.hpp"

namespace qgrad {

struct EquilibriumParams {
    GasStatistics theta = GasStatistics::Classical;
    double z = 1.0;
    Vec3 u = Vec3::Zero();
    double T = 1.0;  // scaled temperature, RT-like
    double hhat = 1.0;

    void validate() const;  // throws DomainError
};

struct RhoP {
    double rho;
    double p;
};

// Thermodynamic prefactor hhat (2 pi T)^{3/2}.
double thermal_volume_factor(double T, double hhat);

RhoP equilibrium_rho_p(const EquilibriumParams& eq);
RhoP equilibrium_rho_p(const EquilibriumParams& eq, const PolylogSet& li);

// Dimensionless ratio li[5/2] / li[3/2]^{5/3}; strictly decreasing in z.
double fugacity_ratio(const PolylogSet& li);
// Infimum of fugacity_ratio over the admissible fugacities (0 for none).
double fugacity_ratio_limit(GasStatistics stats);

EquilibriumParams fit_equilibrium(double rho, double p, GasStatistics theta, double hhat = 1.0);

struct MomentState13 {
    double rho = 1.0;
    Vec3 u = Vec3::Zero();
    Mat3 p_ij = Mat3::Identity();
    Vec3 q = Vec3::Zero();

    double pressure() const { return p_ij.trace() / 3.0; }
    Mat3 stress() const { return p_ij - pressure() * Mat3::Identity(); }

    Vec13 to_vector() const;
    static MomentState13 from_vector(const Vec13& w);
    static MomentState13 equilibrium(const EquilibriumParams& eq);
};

// Checks rho > 0, p_ij symmetric positive definite, and that the fitted
// fugacity is admissible for the statistics. Throws DomainError.
void check_admissible(const MomentState13& state, GasStatistics theta, double hhat = 1.0);
bool is_admissible(const MomentState13& state, GasStatistics theta, double hhat = 1.0);

struct MomentState5 {
    double rho = 1.0;
    double u1 = 0.0;
    double p11 = 1.0;
    double q1 = 0.0;
    double p = 1.0;

    double sigma11() const { return p11 - p; }
    void validate() const;  // throws DomainError
    bool admissible() const;

    Vec5 to_vector() const;
    static MomentState5 from_vector(const Vec5& w);
    // 13-moment state with u2 = u3 = 0, off-diagonal p = 0, p22 = p33, q2 = q3 = 0.
    MomentState13 lift() const;
};

// q_ijk = q3[k](i, j).
struct ClosureMoments {
    std::array<Mat3, 3> q3;
    Mat3 Delta;

    double q_ijk(int i, int j, int k) const { return q3[k](i, j); }
};

ClosureMoments closure_moments(const MomentState13& state, const EquilibriumParams& eq);

// Equilibrium distribution 1 / (exp(|v-u|^2 / 2T) / z + theta), without the hhat factor.
double equilibrium_distribution(const EquilibriumParams& eq, const Vec3& v);
double grad_ansatz_eval(const MomentState13& state, const EquilibriumParams& eq, const Vec3& v);

// Grad ansatz with its coefficients evaluated once, for repeated use in quadrature.
class GradAnsatz {
public:
    GradAnsatz(const MomentState13& state, const EquilibriumParams& eq);
    double operator()(const Vec3& v) const;

private:
    EquilibriumParams eq_;
    Mat3 stress_coeff_;   // sigma (li5/li7) / (2 p T)
    double stress_shift_;  // tr(sigma) (li5/li3) (li5/li7) / (2 p)
    Vec3 heat_coeff_;     // q / (frakB 5 p T)
    double heat_shift_;   // 5 li7/li5
};

// Monomial selector prod_i c_i^{power_i} times |c|^{2 * norm_power}, with c = v - u.
struct Selector {
    std::array<int, 3> power{0, 0, 0};
    int norm_power = 0;
    double weight = 1.0;
};

// Trapezoid is spectrally accurate for integrands that vanish at the box edges;
// composite Gauss-Legendre (8-point panels) is kept as a cross-check.
enum class QuadratureRule { Trapezoid, GaussLegendre };

struct QuadratureOptions {
    double half_width = 12.0;  // in thermal units sqrt(T)
    int nodes = 64;
    QuadratureRule rule = QuadratureRule::Trapezoid;
    bool check_convergence = true;
    double tolerance = 1e-6;
    int max_nodes = 192;  // refinement cap when the convergence check fails
};

// hhat * integral of f(v) * selector(v - u) over the box u +- L sqrt(T).
std::vector<double> moment_quadrature(const std::function<double(const Vec3&)>& f, const EquilibriumParams& eq,
                                      const std::vector<Selector>& selectors, const QuadratureOptions& opt = {});

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace qgrad
