#include "qgrad/analysis.hpp"

#include <cmath>

#include "qgrad/errors.hpp"
#include "qgrad/parallel.hpp"
#include "qgrad/random.hpp"

namespace qgrad {

CellClass cell_class(Hyperbolicity h) { return static_cast<CellClass>(static_cast<int>(h)); }

const char* cell_class_name(CellClass c) {
    if (c == CellClass::Inadmissible) return "Inadmissible";
    return hyperbolicity_name(static_cast<Hyperbolicity>(static_cast<int>(c)));
}

bool is_hyperbolic(CellClass c) { return c == CellClass::HyperbolicStrict || c == CellClass::HyperbolicDegenerate; }

double GridAxis::at(int i) const {
    if (count <= 1) return 0.5 * (min + max);
    return ((count - 1 - i) * min + i * max) / (count - 1);
}

const char* stress_component_name(StressComponent c) {
    return c == StressComponent::Sigma11 ? "sigma11_hat" : "sigma12_hat";
}

bool section_admissible(StressComponent component, double s) {
    // Principal values of p_ij / p: (1 + s, 1 - s/2, 1 - s/2) or (1 + s, 1 - s, 1).
    if (component == StressComponent::Sigma11) return s > -1.0 && s < 2.0;
    return std::abs(s) < 1.0;
}

MomentState13 section_state(const EquilibriumParams& eq, StressComponent component, double q_hat, double s_hat) {
    const RhoP rp = equilibrium_rho_p(eq);
    MomentState13 s;
    s.rho = rp.rho;
    s.u = eq.u;
    s.p_ij = rp.p * Mat3::Identity();
    if (component == StressComponent::Sigma11) {
        s.p_ij(0, 0) += s_hat * rp.p;
        s.p_ij(1, 1) -= 0.5 * s_hat * rp.p;
        s.p_ij(2, 2) -= 0.5 * s_hat * rp.p;
    } else {
        s.p_ij(0, 1) = s.p_ij(1, 0) = s_hat * rp.p;
    }
    s.q = Vec3(q_hat * rp.p * std::sqrt(eq.T), 0.0, 0.0);
    return s;
}

namespace {

struct CellResult {
    CellClass cls;
    bool near;
};

}  // namespace

RegionGrid region_scan(const RegionScanSpec& spec) {
    if (spec.x.count < 1 || spec.y.count < 1) throw DomainError("grid axes need at least one point");
    if (spec.reduced_1d && spec.y_component != StressComponent::Sigma11)
        throw DomainError("the 1D reduction only carries sigma11");
    EquilibriumParams eq;
    eq.theta = spec.theta;
    eq.z = spec.z;
    eq.T = spec.T;
    eq.validate();
    const RhoP rp = equilibrium_rho_p(eq);
    const double root_T = std::sqrt(eq.T);

    // Every cell shares (rho, p), so eq is the fit of every cell state.
    auto classify = [&](double q_hat, double s_hat, const Vec3& n) -> CellResult {
        if (!section_admissible(spec.y_component, s_hat)) return {CellClass::Inadmissible, false};
        Eigen::MatrixXd A;
        if (spec.reduced_1d) {
            const MomentState5 s5{rp.rho, 0.0, rp.p * (1.0 + s_hat), q_hat * rp.p * root_T, rp.p};
            A = spec.kind == SystemKind::Grad13 ? assemble_A5_grad(s5, eq) : reduce_to_1d(spec.kind, s5, eq);
        } else {
            const MomentState13 s = section_state(eq, spec.y_component, q_hat, s_hat);
            A = assemble_system(spec.kind, s, eq, n).A;
        }
        const HyperbolicityVerdict v = diagonalizability_test(A / root_T, spec.tol);
        return {cell_class(v.classification), v.near_threshold};
    };

    RegionGrid grid;
    grid.spec = spec;
    const std::size_t nx = spec.x.count, ny = spec.y.count, total = nx * ny;
    grid.cells.assign(total, CellClass::Inadmissible);
    std::vector<std::uint8_t> near(total, 0);
    parallel_for(total, spec.threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        Vec3 n = spec.direction;
        if (spec.random_direction) {
            CounterRng rng(spec.seed, idx);
            n = random_unit_vector(rng);
        }
        const CellResult r = classify(spec.x.at(i), spec.y.at(j), n);
        grid.cells[idx] = r.cls;
        near[idx] = r.near ? 1 : 0;
    });
    grid.equilibrium_class = classify(0.0, 0.0, spec.direction).cls;

    grid.boundary.assign(total, 0);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t idx = j * nx + i;
            const CellClass c = grid.cells[idx];
            bool mark = near[idx] != 0;
            auto differs = [&](std::size_t other) {
                const CellClass o = grid.cells[other];
                return c != CellClass::Inadmissible && o != CellClass::Inadmissible && o != c;
            };
            if (i > 0 && differs(idx - 1)) mark = true;
            if (i + 1 < nx && differs(idx + 1)) mark = true;
            if (j > 0 && differs(idx - nx)) mark = true;
            if (j + 1 < ny && differs(idx + nx)) mark = true;
            grid.boundary[idx] = mark ? 1 : 0;
        }
    }
    return grid;
}

RegionGrid region_scan_1d(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                          const ClassifyOptions& tol, unsigned threads) {
    RegionScanSpec spec;
    spec.theta = theta;
    spec.z = z;
    spec.kind = SystemKind::Grad13;
    spec.reduced_1d = true;
    spec.x = x;
    spec.y = y;
    spec.y_component = StressComponent::Sigma11;
    spec.tol = tol;
    spec.threads = threads;
    return region_scan(spec);
}

RegionGrid region_scan_3d_cross_section(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                                        const ClassifyOptions& tol, unsigned threads) {
    RegionScanSpec spec;
    spec.theta = theta;
    spec.z = z;
    spec.kind = SystemKind::Grad13;
    spec.x = x;
    spec.y = y;
    spec.y_component = StressComponent::Sigma12;
    spec.tol = tol;
    spec.threads = threads;
    return region_scan(spec);
}

RegionGrid region_scan_regularized(double z, GasStatistics theta, const GridAxis& x, const GridAxis& y,
                                   StressComponent component, const Vec3& direction, bool random_direction,
                                   std::uint64_t seed, const ClassifyOptions& tol, unsigned threads) {
    RegionScanSpec spec;
    spec.theta = theta;
    spec.z = z;
    spec.kind = SystemKind::FinalR13;
    spec.x = x;
    spec.y = y;
    spec.y_component = component;
    spec.direction = direction;
    spec.random_direction = random_direction;
    spec.seed = seed;
    spec.tol = tol;
    spec.threads = threads;
    return region_scan(spec);
}

double area_fraction(const RegionGrid& grid) {
    std::size_t admissible = 0, hyperbolic = 0;
    for (CellClass c : grid.cells) {
        if (c == CellClass::Inadmissible) continue;
        ++admissible;
        if (is_hyperbolic(c)) ++hyperbolic;
    }
    if (admissible == 0) throw DomainError("grid has no admissible cells");
    return static_cast<double>(hyperbolic) / static_cast<double>(admissible);
}

std::vector<SweepRow> eigen_sweep_fugacity(GasStatistics theta, double z_min, double z_max, int count,
                                           bool log_spacing) {
    if (count < 1 || !(z_min > 0.0) || !(z_max >= z_min)) throw DomainError("invalid fugacity range");
    std::vector<SweepRow> rows;
    rows.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        double z = log_spacing ? std::exp((1.0 - t) * std::log(z_min) + t * std::log(z_max))
                               : (1.0 - t) * z_min + t * z_max;
        if (i == 0) z = z_min;
        if (i == count - 1) z = z_max;
        const EquilibriumCharPoly e = char_poly_equilibrium(z, theta);
        const double disc = std::sqrt(e.c1 * e.c1 - 4.0 * e.c0);
        rows.push_back({z, {0.0, std::sqrt(e.shear2), std::sqrt(0.5 * (e.c1 - disc)), std::sqrt(0.5 * (e.c1 + disc))}});
    }
    return rows;
}

LinearizationReport linearization_equality(double z, GasStatistics theta, double T, const Vec3& u) {
    EquilibriumParams eq;
    eq.theta = theta;
    eq.z = z;
    eq.T = T;
    eq.u = u;
    eq.validate();
    const MomentState13 s = MomentState13::equilibrium(eq);
    LinearizationReport r;
    r.final_ok = true;
    for (int d = 0; d < 3; ++d) {
        const Mat13 G = assemble_A_grad_3d(s, eq, d);
        const Mat13 R = assemble_A_regularized(s, eq, d).A;
        const Mat13 Tr = assemble_A_trivial(s, eq, d);
        r.scale[d] = G.cwiseAbs().maxCoeff();
        r.E_final[d] = (G - R).cwiseAbs().maxCoeff();
        r.E_triv[d] = (G - Tr).cwiseAbs().maxCoeff();
        if (!(r.E_final[d] <= 1e-12 * r.scale[d])) r.final_ok = false;
        if (r.E_triv[d] > 1e-6 * r.scale[d]) r.triv_differs = true;
    }
    return r;
}

}  // namespace qgrad
