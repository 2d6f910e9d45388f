#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qgrad/linalg.hpp"
#include "qgrad/polylog.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

using Complex = std::complex<double>;
// Polynomial coefficients in ascending order of degree.
using Polynomial = std::vector<double>;

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
double poly_eval(const Polynomial& p, double x);

struct EigenResult {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;  // columns, unit 2-norm
    double max_residual = 0.0;  // max |A v - lambda v| / |A|
};

// Balanced real eigen-solve. Throws NoConvergence if the QR iteration fails
// or a returned pair has residual above 1e-10 |A|.
EigenResult eigendecompose(const Eigen::MatrixXd& A);

enum class Hyperbolicity { HyperbolicStrict, HyperbolicDegenerate, NonDiagonalizable, NonHyperbolic };

const char* hyperbolicity_name(Hyperbolicity h);
bool is_hyperbolic(Hyperbolicity h);

struct ClassifyOptions {
    double rank_tol = 1e-8;     // singular values below rank_tol |A|_2 count as null
    double cluster_tol = 1e-7;  // eigenvalues closer than cluster_tol (1 + |lambda|) are merged
    double imag_tol = 1e-7;     // |Im lambda| above imag_tol (1 + |lambda|) is complex
};

struct ClusterDiagnostic {
    Complex value;
    int algebraic = 1;
    int geometric = 1;
    double min_singular = 0.0;  // smallest singular value of A - value I, relative to |A|_2 (multiple clusters only)
};

struct HyperbolicityVerdict {
    std::vector<Complex> eigenvalues;  // sorted by real part, then imaginary part
    Hyperbolicity classification = Hyperbolicity::HyperbolicStrict;
    std::vector<ClusterDiagnostic> clusters;
    double max_imag = 0.0;  // largest |Im lambda| / (1 + |lambda|)
    double min_gap = 0.0;   // smallest separation between distinct clusters / (1 + |lambda|)
    // Set when a decision sat within a factor 100 of a threshold.
    bool near_threshold = false;
};

HyperbolicityVerdict diagonalizability_test(const Eigen::MatrixXd& A, const ClassifyOptions& opt = {});

// Monic characteristic polynomial det(lambda I - A), ascending, computed from
// complex LU determinants on a circle followed by a discrete Fourier transform.
Polynomial characteristic_polynomial(const Eigen::MatrixXd& A, double radius = 1.0);

// det(lambda_hat I - (A5 - u1 I)/sqrt(T)), monic, from the closed form in a1, a2, a3.
Polynomial char_poly_A5_analytic(const MomentState5& state, const EquilibriumParams& eq);

struct AppendixCoeffs {
    double epsilon = 0.0;
    double c0, c1;              // equilibrium quartic x^2 - c1 x + c0 in x = lambda_hat^2
    double c2, c3, c4, g0;      // g(x) = 25 x^4 + c4 x^3 + c3 x^2 + c2 x + g0
    Polynomial g() const;       // in x, ascending
};

AppendixCoeffs appendix_coeffs(double z, GasStatistics theta, double epsilon);

// Squared normalised shear speed 7 li9 / (5 li7).
double shear_speed_squared(const PolylogSet& li);

struct EquilibriumCharPoly {
    double shear2;  // 7 li9/(5 li7)
    double c0, c1;
    // lambda_hat^5, (lambda_hat^2 - shear2)^2, lambda_hat^4 - c1 lambda_hat^2 + c0
    std::vector<Polynomial> factors;
    std::vector<double> eigenvalues_hat;  // 13 closed-form values, ascending

    Polynomial expanded() const;
};

EquilibriumCharPoly char_poly_equilibrium(double z, GasStatistics theta);

// det(lambda_hat I - (A1 - u1 I)/sqrt(T)) at the equilibrium state perturbed by p12 = epsilon p,
// from the factored closed form lambda_hat^3 (5 lambda_hat^2 - 7 li9/li7) g(lambda_hat^2) / 125.
Polynomial char_poly_perturbed_analytic(double z, GasStatistics theta, double epsilon);

// h(z) = shear2^2 - c1 shear2 + c0; zero where the shear speed meets a quartic root.
double crossing_function(double z, GasStatistics theta = GasStatistics::Fermion);
double fermion_crossing();

struct AnnihilationResult {
    double residual = 0.0;       // of the polynomial actually used
    double full_residual = 0.0;  // degree-7 product, always computed
    bool case2 = false;          // middle factor dropped because |h| < 1e-6
    double h = 0.0;
};

AnnihilationResult annihilation_residual(const Mat13& M1, double z, GasStatistics theta, double T);

}  // namespace qgrad
