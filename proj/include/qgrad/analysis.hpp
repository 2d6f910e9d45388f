#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qgrad/matrices.hpp"
#include "qgrad/spectral.hpp"

namespace qgrad {

// Grid cell codes; the first four mirror Hyperbolicity.
enum class CellClass : std::uint8_t {
    HyperbolicStrict = 0,
    HyperbolicDegenerate = 1,
    NonDiagonalizable = 2,
    NonHyperbolic = 3,
    Inadmissible = 4,
};

CellClass cell_class(Hyperbolicity h);
const char* cell_class_name(CellClass c);
bool is_hyperbolic(CellClass c);

struct GridAxis {
    std::string name;
    double min = 0.0, max = 0.0;
    int count = 1;

    // Computed as ((n-1-i) min + i max)/(n-1) so symmetric ranges mirror exactly.
    double at(int i) const;
};

enum class StressComponent { Sigma11, Sigma12 };

const char* stress_component_name(StressComponent c);

struct RegionScanSpec {
    GasStatistics theta = GasStatistics::Classical;
    double z = 1.0;
    double T = 1.0;
    SystemKind kind = SystemKind::Grad13;
    bool reduced_1d = false;  // classify the 5x5 reduction instead of the 13x13 system
    GridAxis x{"q1_hat", -3.0, 3.0, 401};
    GridAxis y{"sigma11_hat", -0.999, 1.999, 401};
    StressComponent y_component = StressComponent::Sigma11;
    Vec3 direction = Vec3::UnitX();
    bool random_direction = false;  // per-cell direction drawn from (seed, cell index)
    std::uint64_t seed = 0;
    ClassifyOptions tol{};
    unsigned threads = 0;
};

struct RegionGrid {
    RegionScanSpec spec;
    std::vector<CellClass> cells;          // index j * nx + i, x fastest
    std::vector<std::uint8_t> boundary;    // 1 where a neighbour differs or a threshold was close
    CellClass equilibrium_class = CellClass::Inadmissible;

    int nx() const { return spec.x.count; }
    int ny() const { return spec.y.count; }
    CellClass at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx() + i]; }
};

// Dimensionless cell state: q1 = q_hat p sqrt(T), chosen stress component = s_hat p, u = 0.
MomentState13 section_state(const EquilibriumParams& eq, StressComponent component, double q_hat, double s_hat);
bool section_admissible(StressComponent component, double s_hat);

RegionGrid region_scan(const RegionScanSpec& spec);
RegionGrid region_scan_1d(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                          const ClassifyOptions& tol = {}, unsigned threads = 0);
RegionGrid region_scan_3d_cross_section(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                                        const ClassifyOptions& tol = {}, unsigned threads = 0);
RegionGrid region_scan_regularized(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                                   StressComponent component, const Vec3& direction, bool random_direction,
                                   std::uint64_t seed = 0, const ClassifyOptions& tol = {}, unsigned threads = 0);

// Hyperbolic cells over admissible cells.
double area_fraction(const RegionGrid& grid);

struct SweepRow {
    double z;
    // Nonnegative normalised speeds by branch: 0 zero, 1 shear, 2 slow quartic root, 3 fast quartic root.
    std::array<double, 4> branch;
};

std::vector<SweepRow> eigen_sweep_fugacity(GasStatistics theta, double z_min, double z_max, int count,
                                           bool log_spacing = true);

struct LinearizationReport {
    std::array<double, 3> E_final{}, E_triv{}, scale{};
    bool final_ok = false;    // E_final <= 1e-12 scale on every axis
    bool triv_differs = false;  // E_triv > 1e-6 scale on some axis
};

LinearizationReport linearization_equality(double z, GasStatistics theta, double T, const Vec3& u);

struct NSFReport {
    SystemKind kind = SystemKind::Grad13;
    double mu = 0.0;           // tau times the p12-row coefficient of du2/dx1
    double mu_target = 0.0;    // tau p
    double kappa = 0.0;        // -(dT/dx coefficient) from the two-route solve
    double kappa_target = 0.0;
    double kappa_rel_error = 0.0;
    double kappa_route_p = 0.0;    // from a density gradient at fixed pressure
    double kappa_route_rho = 0.0;  // from a pressure gradient at fixed density
    double z_coefficient = 0.0;    // coefficient of dz/dx in q1; zero for the correct law
    std::array<double, 2> mismatch{};  // q1 residual against -kappa* dT/dx on the two routes
};

NSFReport maxwellian_iteration_nsf(SystemKind kind, double z, GasStatistics theta, double T, double tau,
                                   double hhat = 1.0);

// Fourier coefficient (5/2) tau p ((7/2) li7/li5 - (5/2) li5/li3).
double fourier_target(const PolylogSet& li, double p, double tau);

}  // namespace qgrad
