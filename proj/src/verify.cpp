#include "qgrad/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "qgrad/coefficients.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/parallel.hpp"
#include "qgrad/random.hpp"

namespace qgrad {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

constexpr GasStatistics kAllStatistics[] = {GasStatistics::Boson, GasStatistics::Classical, GasStatistics::Fermion};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

VerifyCheck at_most(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

VerifyCheck at_least(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured >= threshold, measured, threshold, std::move(detail)};
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        g[i] = std::exp((1.0 - t) * std::log(lo) + t * std::log(hi));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> fugacity_grid(GasStatistics theta, int n) {
    switch (theta) {
        case GasStatistics::Boson: return log_grid(0.01, 0.99, n);
        case GasStatistics::Classical: return log_grid(0.01, 10.0, n);
        case GasStatistics::Fermion: break;
    }
    return log_grid(0.01, 100.0, n);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> sorted_real(const Eigen::VectorXcd& v, double shift, double scale, double* max_imag) {
    std::vector<double> out;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back((v[k].real() - shift) / scale);
        *max_imag = std::max(*max_imag, std::abs(v[k].imag()) / scale);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double poly_error(const Polynomial& num, const Polynomial& ref) {
    double e = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k)
        e = std::max(e, std::abs(num[k] - Complex(ref[k])) / std::max(1.0, std::abs(ref[k])));
    return e;
}

// Values of -theta Li_s(-theta z) at 30 digits, orders 1/2 ... 9/2.
struct ReferenceRow {
    GasStatistics theta;
    double z;
    std::array<double, 5> li;
};

const ReferenceRow kReference[] = {
    {GasStatistics::Fermion, 0.3,
     {0.24875253590487477, 0.27254108074465195, 0.28560561575816888, 0.29256663687446882, 0.29620069286790601}},
    {GasStatistics::Fermion, 5.0,
     {1.2972654048194185, 2.2842112848731085, 3.1700557684484801, 3.8490020294049924, 4.3147288695543725}},
    {GasStatistics::Fermion, 40.0,
     {2.0879523147748807, 5.8466117994617203, 11.338836194646491, 17.647394561027745, 23.741983813004846}},
    {GasStatistics::Boson, 0.3,
     {0.38477744513420899, 0.33831109554480627, 0.31794896947832962, 0.30860595216101867, 0.30418775577602053}},
    {GasStatistics::Boson, 0.97,
     {8.7018006870043704, 2.0380829040066166, 1.2738028692754493, 1.0869388692056159, 1.0209993573498411}},
};

}  // namespace

std::vector<VerifyCheck> check_polylog_values() {
    std::vector<VerifyCheck> out;

    double e = 0.0;
    for (double z : {1e-3, 0.25, 1.0, 7.5}) {
        const PolylogSet li = eval_polylog_set(z, GasStatistics::Classical);
        for (double v : li.values) e = std::max(e, std::abs(v - z));
    }
    out.push_back(at_most("classical entries equal z", e, 0.0));

    e = 0.0;
    for (const ReferenceRow& r : kReference) {
        const PolylogSet li = eval_polylog_set(r.z, r.theta);
        for (int k = 0; k < 5; ++k) e = std::max(e, rel(li.values[k], r.li[k]));
    }
    out.push_back(at_most("reference values", e, 1e-13, "relative, against 30-digit integrals"));

    e = 0.0;
    {
        const PolylogSet li = eval_polylog_set(1.0, GasStatistics::Fermion);
        for (int k = 0; k < 5; ++k) e = std::max(e, rel(li.values[k], detail::dirichlet_eta(0.5 * (2 * k + 1))));
    }
    out.push_back(at_most("fermion z=1 equals eta(s)", e, 1e-12));

    e = 0.0;
    {
        const PolylogSet li = eval_polylog_set(std::nextafter(kBoseFugacityMax, 0.0), GasStatistics::Boson);
        for (int twice_s : {5, 7, 9}) e = std::max(e, rel(li.li(twice_s), detail::zeta_half_integer(twice_s)));
    }
    out.push_back(at_most("boson z->1 approaches zeta(s)", e, 1e-10, "orders 5/2, 7/2, 9/2"));

    e = 0.0;
    for (double z : {0.3, 0.6, 0.9}) {
        const auto a = detail::polylog_series(z, 1), b = detail::fermi_dirac_quadrature(z);
        for (int k = 0; k < 5; ++k) e = std::max(e, rel(a[k], b[k]));
    }
    for (double z : {0.5, 0.7, 0.9}) {
        const auto a = detail::polylog_series(z, -1), b = detail::bose_log_expansion(z);
        for (int k = 0; k < 5; ++k) e = std::max(e, rel(a[k], b[k]));
    }
    out.push_back(at_most("series agrees with the large-z methods", e, 1e-12));

    e = 0.0;
    for (GasStatistics theta : kAllStatistics) {
        for (double z : {0.2, 0.6, theta == GasStatistics::Boson ? 0.85 : 3.0}) {
            const double h = 1e-5 * z;
            for (int twice_s : {3, 5, 7, 9}) {
                const double fd = (eval_polylog_set(z + h, theta).li(twice_s) - eval_polylog_set(z - h, theta).li(twice_s)) / (2 * h);
                e = std::max(e, rel(fd, polylog_derivative(z, theta, twice_s)));
            }
        }
    }
    out.push_back(at_most("derivative matches central differences", e, 1e-7));
    return out;
}

VerifyCheck check_equilibrium_spectrum() {
    double err = 0.0, imag = 0.0;
    int cases = 0;
    for (GasStatistics theta : kAllStatistics) {
        for (double z : fugacity_grid(theta, 20)) {
            EquilibriumParams eq;
            eq.theta = theta;
            eq.z = z;
            eq.T = 1.3;
            eq.u = Vec3(0.3, -0.2, 0.1);
            const MomentState13 s = MomentState13::equilibrium(eq);
            const EquilibriumCharPoly cp = char_poly_equilibrium(z, theta);
            const double rt = std::sqrt(eq.T);
            const auto from_A = sorted_real(eigendecompose(assemble_A_grad_3d(s, eq, 0)).values, eq.u[0], rt, &imag);
            const auto from_M = sorted_real(eigendecompose(assemble_M(eq, 0)).values, 0.0, rt, &imag);
            for (int k = 0; k < 13; ++k) {
                const double scale = std::max(1.0, std::abs(cp.eigenvalues_hat[k]));
                err = std::max(err, std::abs(from_A[k] - cp.eigenvalues_hat[k]) / scale);
                err = std::max(err, std::abs(from_M[k] - cp.eigenvalues_hat[k]) / scale);
            }
            ++cases;
        }
    }
    return at_most("closed-form equilibrium eigenvalues", std::max(err, imag), 1e-8,
                   std::to_string(cases) + " (z, theta) cases, A1 and M1");
}

VerifyCheck check_classical_quartic_roots() {
    // Roots of x^2 - (26/5) x + 3 in x = lambda_hat^2.
    const double disc = std::sqrt(26.0 * 26.0 / 25.0 - 12.0);
    const double fast = std::sqrt(0.5 * (5.2 + disc)), slow = std::sqrt(0.5 * (5.2 - disc)), shear = std::sqrt(1.4);
    std::vector<double> expected(5, 0.0);
    for (double v : {fast, slow, shear, shear}) {
        expected.push_back(v);
        expected.push_back(-v);
    }
    std::sort(expected.begin(), expected.end());
    EquilibriumParams eq;
    eq.theta = GasStatistics::Classical;
    eq.z = 0.7;
    eq.T = 1.7;
    eq.u = Vec3(0.4, 0.0, 0.0);
    double imag = 0.0;
    const auto got = sorted_real(eigendecompose(assemble_A_grad_3d(MomentState13::equilibrium(eq), eq, 0)).values,
                                 eq.u[0], std::sqrt(eq.T), &imag);
    double err = imag;
    for (int k = 0; k < 13; ++k) err = std::max(err, std::abs(got[k] - expected[k]));
    char detail[160];
    std::snprintf(detail, sizeof detail, "quartic roots %.14f and %.14f, shear %.10f", fast, slow, shear);
    return at_most("classical equilibrium speeds", err, 1e-6, detail);
}

VerifyCheck check_perturbed_char_poly(const VerifyOptions& opt) {
    CounterRng rng(opt.seed, 0x5eed0002);
    double err = 0.0;
    for (int k = 0; k < 50; ++k) {
        const GasStatistics theta = kAllStatistics[k % 3];
        EquilibriumParams eq;
        eq.theta = theta;
        eq.z = random_fugacity(theta, rng);
        eq.T = rng.uniform(0.5, 2.0);
        const double eps = rng.uniform(-0.5, 0.5);
        MomentState13 s = MomentState13::equilibrium(eq);
        s.p_ij(0, 1) = s.p_ij(1, 0) = eps * s.pressure();
        const Mat13 A = assemble_A_grad_3d(s, eq, 0) / std::sqrt(eq.T);
        err = std::max(err, poly_error(characteristic_polynomial(A), char_poly_perturbed_analytic(eq.z, theta, eps)));
    }
    return at_most("perturbed characteristic polynomial", err, 1e-8, "50 random (z, theta, epsilon), relative to max(1,|c|)");
}

VerifyCheck check_equilibrium_on_boundary() {
    double min_imag = INFINITY;
    bool equilibrium_real = true;
    std::string detail;
    for (GasStatistics theta : kAllStatistics) {
        EquilibriumParams eq;
        eq.theta = theta;
        eq.z = 0.5;
        MomentState13 s = MomentState13::equilibrium(eq);
        const HyperbolicityVerdict v0 = diagonalizability_test(assemble_A_grad_3d(s, eq, 0));
        if (!is_hyperbolic(v0.classification)) equilibrium_real = false;
        detail += std::string(statistics_name(theta)) + ": eq " + hyperbolicity_name(v0.classification);
        for (double eps : {1e-3, -1e-3}) {
            s.p_ij(0, 1) = s.p_ij(1, 0) = eps * s.pressure();
            const EigenResult e = eigendecompose(assemble_A_grad_3d(s, eq, 0));
            const double im = e.values.imag().cwiseAbs().maxCoeff() / std::sqrt(eq.T);
            min_imag = std::min(min_imag, im);
        }
        detail += "; ";
    }
    detail += "smallest |Im lambda_hat| at sigma12 = +-1e-3 p: " + sci(min_imag);
    VerifyCheck c = at_least("equilibrium sits on the hyperbolicity boundary", min_imag, 1e-6, detail);
    c.passed = c.passed && equilibrium_real;
    return c;
}

std::vector<VerifyCheck> check_cross_section(const VerifyOptions& opt) {
    std::vector<VerifyCheck> out;
    const int n = 41;
    bool centre_boundary = true, fraction_below_one = true;
    long asym = 0;
    for (GasStatistics theta : kAllStatistics) {
        const RegionGrid g =
            region_scan_3d_cross_section(0.5, theta, {"q1_hat", -2.0, 2.0, n}, {"sigma12_hat", -1.0, 1.0, n}, {}, opt.threads);
        const std::size_t centre = static_cast<std::size_t>(n / 2) * n + n / 2;
        if (!g.boundary[centre] || !is_hyperbolic(g.cells[centre])) centre_boundary = false;
        if (!(area_fraction(g) < 1.0)) fraction_below_one = false;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (g.at(i, j) != g.at(n - 1 - i, j)) ++asym;
                if (g.at(i, j) != g.at(i, n - 1 - j)) ++asym;
            }
    }
    out.push_back({"cross-section centre is a hyperbolic boundary cell", centre_boundary, 0.0, 0.0, "z=0.5, all statistics"});
    out.push_back({"cross-section is not hyperbolic everywhere", fraction_below_one, 0.0, 0.0, ""});
    out.push_back(at_most("cross-section mirror symmetry", static_cast<double>(asym), 0.0, "mismatched cells under q1 and sigma12 reflection"));
    return out;
}

std::vector<VerifyCheck> check_region_trends(const VerifyOptions& opt) {
    std::vector<VerifyCheck> out;
    const int n = opt.grid_points;
    const GridAxis x{"q1_hat", -3.0, 3.0, n}, y{"sigma11_hat", -0.999, 1.999, n};
    struct Series {
        GasStatistics theta;
        std::vector<double> z;
        int direction;  // +1 increasing, -1 decreasing, 0 unchecked
    };
    const Series series[] = {{GasStatistics::Boson, {0.1, 0.5, 0.9}, 1},
                             {GasStatistics::Classical, {1.0}, 0},
                             {GasStatistics::Fermion, {0.1, 0.5, 1.0, 2.0}, -1}};
    bool eq_strict = true;
    long asym = 0;
    std::string strict_detail;
    for (const Series& s : series) {
        std::vector<double> fractions;
        std::string fdetail;
        for (double z : s.z) {
            const RegionGrid g = region_scan_1d(z, s.theta, x, y, {}, opt.threads);
            if (g.equilibrium_class != CellClass::HyperbolicStrict) eq_strict = false;
            for (int j = 0; j < g.ny(); ++j)
                for (int i = 0; i < g.nx(); ++i)
                    if (g.at(i, j) != g.at(g.nx() - 1 - i, j)) ++asym;
            fractions.push_back(area_fraction(g));
            fdetail += "z=" + sci(z) + ": " + sci(fractions.back()) + " ";
        }
        if (s.direction == 0) continue;
        double worst = INFINITY;
        for (std::size_t k = 1; k < fractions.size(); ++k)
            worst = std::min(worst, s.direction * (fractions[k] - fractions[k - 1]));
        const std::string name = std::string(statistics_name(s.theta)) + " area fraction " +
                                 (s.direction > 0 ? "increases" : "decreases") + " with z";
        VerifyCheck c{name, worst > 0.0, worst, 0.0, fdetail};
        out.push_back(c);
    }
    out.insert(out.begin(), VerifyCheck{"1D equilibrium cell is strictly hyperbolic", eq_strict, 0.0, 0.0, ""});
    out.insert(out.begin() + 1, at_most("1D mirror symmetry in q1", static_cast<double>(asym), 0.0, "mismatched cells"));
    return out;
}

VerifyCheck check_annihilation() {
    double worst = 0.0;
    int case2 = 0, cases = 0;
    for (GasStatistics theta : kAllStatistics) {
        std::vector<double> zs = fugacity_grid(theta, 40);
        if (theta == GasStatistics::Fermion) {
            const double zc = fermion_crossing();
            for (double d : {0.0, 1e-9, -1e-9, 1e-7, -1e-7, 1e-5, -1e-5, 1e-3, -1e-3}) zs.push_back(zc * (1.0 + d));
        }
        for (double z : zs) {
            EquilibriumParams eq;
            eq.theta = theta;
            eq.z = z;
            eq.T = 1.3;
            const AnnihilationResult r = annihilation_residual(assemble_M(eq, 0), z, theta, eq.T);
            worst = std::max(worst, r.residual);
            case2 += r.case2 ? 1 : 0;
            ++cases;
        }
    }
    return at_most("annihilating polynomial vanishes on M1", worst, 1e-9,
                   std::to_string(cases) + " cases, " + std::to_string(case2) + " with the shear and quartic roots merged");
}

VerifyCheck check_fermion_crossing() {
    const double zc = fermion_crossing();
    char detail[64];
    std::snprintf(detail, sizeof detail, "z* = %.13f", zc);
    return at_most("fermion crossing fugacity near 11.69", std::abs(zc - 11.69), 0.15, detail);
}

VerifyCheck check_random_hyperbolicity(const VerifyOptions& opt) {
    std::atomic<long> failures{0};
    std::map<Hyperbolicity, long> counts;
    std::vector<Hyperbolicity> cls(static_cast<std::size_t>(opt.hyperbolicity_samples));
    long total = 0;
    for (GasStatistics theta : kAllStatistics) {
        std::vector<std::uint8_t> failed(cls.size(), 0);
        parallel_for(cls.size(), opt.threads, [&](std::size_t i) {
            CounterRng rng(opt.seed + 0x5eed0005 + 7919 * static_cast<std::uint64_t>(theta_of(theta) + 1), i);
            try {
                const RandomState rs = random_admissible_state(theta, rng);
                const Vec3 n = random_unit_vector(rng);
                const Mat13 A = assemble_A_regularized(rs.state, rs.eq, n).A;
                const Mat13 shifted = (A - rs.eq.u.dot(n) * Mat13::Identity()) / std::sqrt(rs.eq.T);
                cls[i] = diagonalizability_test(shifted).classification;
                if (!is_hyperbolic(cls[i])) failed[i] = 1;
            } catch (const Error&) {
                cls[i] = Hyperbolicity::NonHyperbolic;
                failed[i] = 1;
            }
        });
        for (std::size_t i = 0; i < cls.size(); ++i) {
            ++counts[cls[i]];
            failures += failed[i];
        }
        total += static_cast<long>(cls.size());
    }
    std::string detail = std::to_string(total) + " states:";
    for (const auto& [h, c] : counts) detail += std::string(" ") + hyperbolicity_name(h) + "=" + std::to_string(c);
    return at_most("regularized system hyperbolic at random states", static_cast<double>(failures.load()), 0.0, detail);
}

VerifyCheck check_linearization() {
    double worst_final = 0.0, weakest_triv = INFINITY, classical_triv = 0.0;
    for (GasStatistics theta : kAllStatistics) {
        for (double z : fugacity_grid(theta, 8)) {
            const LinearizationReport r = linearization_equality(z, theta, 1.3, Vec3(0.2, -0.4, 0.1));
            for (int d = 0; d < 3; ++d) {
                worst_final = std::max(worst_final, r.E_final[d] / r.scale[d]);
                if (theta == GasStatistics::Classical)
                    classical_triv = std::max(classical_triv, r.E_triv[d] / r.scale[d]);
            }
            if (theta != GasStatistics::Classical)
                weakest_triv = std::min(weakest_triv, *std::max_element(r.E_triv.begin(), r.E_triv.end()) /
                                                          *std::max_element(r.scale.begin(), r.scale.end()));
        }
    }
    VerifyCheck c = at_most("regularized matrix equals Grad's at equilibrium", worst_final, 1e-12,
                            "trivial deviation: smallest quantum " + sci(weakest_triv) + ", classical " + sci(classical_triv));
    c.passed = c.passed && weakest_triv > 1e-6;
    return c;
}

std::vector<VerifyCheck> check_nsf() {
    double kappa_err = 0.0, route_err = 0.0, mu_err = 0.0, triv_min = INFINITY;
    std::string triv_detail;
    for (GasStatistics theta : kAllStatistics) {
        for (double z : fugacity_grid(theta, 6)) {
            for (SystemKind kind : {SystemKind::Grad13, SystemKind::FinalR13, SystemKind::TrivialR13}) {
                const NSFReport r = maxwellian_iteration_nsf(kind, z, theta, 1.3, 0.7);
                mu_err = std::max(mu_err, rel(r.mu, r.mu_target));
                if (kind == SystemKind::TrivialR13) {
                    if (theta != GasStatistics::Classical) triv_min = std::min(triv_min, r.kappa_rel_error);
                    continue;
                }
                kappa_err = std::max(kappa_err, r.kappa_rel_error);
                route_err = std::max(route_err, std::abs(r.kappa_route_p - r.kappa_route_rho) / r.kappa_target);
            }
        }
    }
    const NSFReport fz2 = maxwellian_iteration_nsf(SystemKind::TrivialR13, 2.0, GasStatistics::Fermion, 1.0, 1.0);
    const NSFReport cl = maxwellian_iteration_nsf(SystemKind::TrivialR13, 1.0, GasStatistics::Classical, 1.0, 1.0);
    triv_detail = "fermion z=2: " + sci(fz2.kappa_rel_error) + ", classical: " + sci(cl.kappa_rel_error) +
                  ", smallest quantum: " + sci(triv_min);
    std::vector<VerifyCheck> out;
    out.push_back(at_most("Fourier coefficient from Grad and the regularized system", kappa_err, 1e-10));
    out.push_back(at_most("gradient routes agree", route_err, 1e-10));
    out.push_back(at_most("shear viscosity is tau p", mu_err, 1e-12, "all three systems"));
    out.push_back(at_least("trivial regularization misses the Fourier coefficient", fz2.kappa_rel_error, 1e-3, triv_detail));
    return out;
}

std::vector<VerifyCheck> check_closure_quadrature(const VerifyOptions& opt) {
    // Selectors: 13 defining moments, then q_ijk (i <= j <= k), then Delta_ij (i <= j).
    std::vector<Selector> sel;
    sel.push_back({{0, 0, 0}, 0, 1.0});
    for (int i = 0; i < 3; ++i) {
        Selector s;
        s.power[i] = 1;
        sel.push_back(s);
    }
    std::vector<std::array<int, 2>> pairs;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Selector s;
            ++s.power[i];
            ++s.power[j];
            sel.push_back(s);
            pairs.push_back({i, j});
        }
    for (int i = 0; i < 3; ++i) {
        Selector s;
        s.power[i] = 1;
        s.norm_power = 1;
        s.weight = 0.5;
        sel.push_back(s);
    }
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            for (int k = j; k < 3; ++k) {
                Selector s;
                ++s.power[i];
                ++s.power[j];
                ++s.power[k];
                sel.push_back(s);
                triples.push_back({i, j, k});
            }
    for (const auto& [i, j] : pairs) {
        Selector s;
        ++s.power[i];
        ++s.power[j];
        s.norm_power = 1;
        sel.push_back(s);
    }

    double defining = 0.0, closure = 0.0;
    long failures = 0;
    const std::size_t n = static_cast<std::size_t>(opt.closure_samples);
    for (GasStatistics theta : kAllStatistics) {
        RandomStateOptions ro;
        // Quadrature accuracy degrades as the Bose fugacity approaches 1.
        if (theta == GasStatistics::Boson) {
            ro.z_min = 0.02;
            ro.z_max = 0.7;
        }
        std::vector<double> def_err(n, 0.0), clo_err(n, 0.0);
        std::vector<std::uint8_t> failed(n, 0);
        parallel_for(n, opt.threads, [&](std::size_t idx) {
            CounterRng rng(opt.seed + 0x5eed0008 + 7919 * static_cast<std::uint64_t>(theta_of(theta) + 1), idx);
            const RandomState rs = random_admissible_state(theta, rng, ro);
            const MomentState13& s = rs.state;
            const double p = s.pressure(), rt = std::sqrt(rs.eq.T);
            std::vector<double> m;
            try {
                const GradAnsatz f(s, rs.eq);
                m = moment_quadrature([&](const Vec3& v) { return f(v); }, rs.eq, sel);
            } catch (const QuadratureNotConverged&) {
                failed[idx] = 1;
                return;
            }
            const ClosureMoments cm = closure_moments(s, rs.eq);
            double d = std::abs(m[0] - s.rho) / s.rho;
            for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(m[1 + i]) / (s.rho * rt));
            for (std::size_t k = 0; k < pairs.size(); ++k)
                d = std::max(d, std::abs(m[4 + k] - s.p_ij(pairs[k][0], pairs[k][1])) / p);
            for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(m[10 + i] - s.q[i]) / (p * rt));
            double c = 0.0;
            for (std::size_t k = 0; k < triples.size(); ++k) {
                const auto& t = triples[k];
                c = std::max(c, std::abs(m[13 + k] - cm.q_ijk(t[0], t[1], t[2])) / (p * rt));
            }
            for (std::size_t k = 0; k < pairs.size(); ++k)
                c = std::max(c, std::abs(m[23 + k] - cm.Delta(pairs[k][0], pairs[k][1])) / (p * rs.eq.T));
            def_err[idx] = d;
            clo_err[idx] = c;
        });
        for (std::size_t i = 0; i < n; ++i) {
            defining = std::max(defining, def_err[i]);
            closure = std::max(closure, clo_err[i]);
            failures += failed[i];
        }
    }
    const std::string states = std::to_string(n) + " random states per statistics";
    std::vector<VerifyCheck> out;
    out.push_back(at_most("Grad ansatz reproduces its defining moments", defining, 1e-6, states));
    out.push_back(at_most("closure matches quadrature of the ansatz", closure, 1e-6, states));
    out.push_back(at_most("quadrature converged", static_cast<double>(failures), 0.0));
    return out;
}

std::vector<VerifyCheck> check_solver(const VerifyOptions& opt) {
    std::vector<VerifyCheck> out;
    SimConfig base;
    base.cells = opt.solver_cells;
    base.threads = opt.threads;
    base.snapshots = 5;

    {
        SimConfig c = base;
        c.theta = GasStatistics::Fermion;
        c.left = c.right = {1.5, 0.2, 1.1};
        c.t_end = 0.05;
        const RunResult r = run(c);
        double d = 0.0;
        for (const SimState& s : r.snapshots)
            for (std::size_t i = 0; i < s.cells.size(); ++i)
                d = std::max(d, (s.cells[i].to_vector() - r.snapshots[0].cells[i].to_vector()).cwiseAbs().maxCoeff());
        out.push_back(at_most("uniform equilibrium is preserved", d / state_norm(r.snapshots[0]), 1e-15,
                              std::to_string(r.steps) + " steps"));
    }
    {
        SimConfig c = base;
        c.theta = GasStatistics::Boson;
        c.left = c.right = {0.4, 0.0, 1.0};
        c.boundary = BoundaryKind::Periodic;
        c.tau = 0.02;
        c.t_end = 0.1;
        SimState s = initial_state(c);
        for (MomentState5& m : s.cells) m.p11 = 1.1 * m.p;
        const RunResult r = run_from(s, c);
        double e = 0.0;
        for (const SimState& snap : r.snapshots)
            for (const MomentState5& m : snap.cells)
                e = std::max(e, std::abs(m.sigma11() / m.p - 0.1 * std::exp(-snap.time / c.tau)));
        out.push_back(at_most("homogeneous stress decays as exp(-t/tau)", e, 1e-12));
    }
    double stiff = 0.0, growth = 0.0;
    for (GasStatistics theta : kAllStatistics) {
        SimConfig c = base;
        c.theta = theta;
        c.left = {theta == GasStatistics::Boson ? 0.6 : 1.0, 0.0, 1.0};
        c.right = {theta == GasStatistics::Boson ? 0.2 : 0.4, 0.0, 0.8};
        c.t_end = 0.1;
        for (double tau : {1e-6, 1.0, 1e6}) {
            c.tau = tau;
            const RunResult r = run(c);
            const double n0 = state_norm(r.snapshots[0]);
            for (const SimState& s : r.snapshots) {
                growth = std::max(growth, state_norm(s) / n0);
                if (tau == 1e-6)
                    for (const MomentState5& m : s.cells)
                        stiff = std::max(stiff, std::max(std::abs(m.sigma11()), std::abs(m.q1)) / m.p);
            }
        }
    }
    out.push_back(at_most("stiff relaxation keeps sigma11 and q1 small", stiff, 1e-3, "tau = 1e-6, relative to p"));
    out.push_back(at_most("Riemann suite stays bounded", growth, 10.0, "largest snapshot norm over the initial norm"));
    {
        SimConfig c = base;
        c.theta = GasStatistics::Classical;
        c.profile = InitialProfile::Smooth;
        c.boundary = BoundaryKind::Periodic;
        c.left = {1.0, 0.1, 1.0};
        c.right = {0.6, -0.1, 1.3};
        c.tau = 0.1;
        c.t_end = 0.1;
        const RunResult r = run(c);
        double drift = 0.0;
        for (const LedgerRow& row : r.ledger) drift = std::max(drift, rel(row.mass, r.ledger.front().mass));
        out.push_back(at_most("periodic smooth run conserves mass", drift, 1e-3));
    }
    return out;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"polylog",  "appendix",           "annihilation",
                                                   "linearization", "global-hyperbolicity", "closure-quadrature",
                                                   "regions", "solver"};
    return names;
}

VerifyReport run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport r;
    r.suite = suite;
    auto add = [&](std::vector<VerifyCheck> v) { r.checks.insert(r.checks.end(), v.begin(), v.end()); };
    if (suite == "polylog") {
        add(check_polylog_values());
    } else if (suite == "appendix") {
        add({check_equilibrium_spectrum(), check_classical_quartic_roots(), check_perturbed_char_poly(opt),
             check_equilibrium_on_boundary()});
    } else if (suite == "annihilation") {
        add({check_annihilation(), check_fermion_crossing()});
    } else if (suite == "linearization") {
        add({check_linearization()});
        add(check_nsf());
    } else if (suite == "global-hyperbolicity") {
        add({check_random_hyperbolicity(opt)});
    } else if (suite == "closure-quadrature") {
        add(check_closure_quadrature(opt));
    } else if (suite == "regions") {
        add(check_region_trends(opt));
        add(check_cross_section(opt));
    } else if (suite == "solver") {
        add(check_solver(opt));
    } else {
        throw DomainError("unknown verification suite '" + suite + "'");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<VerifyReport> run_verify(const std::string& suite, const VerifyOptions& opt) {
    if (suite != "all") return {run_verify_suite(suite, opt)};
    std::vector<VerifyReport> out;
    for (const std::string& name : verify_suite_names()) out.push_back(run_verify_suite(name, opt));
    return out;
}

Json to_json(const VerifyCheck& c) {
    return Json{{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"threshold", c.threshold},
                {"detail", c.detail}};
}

Json to_json(const VerifyReport& r) {
    Json checks = Json::array();
    for (const VerifyCheck& c : r.checks) checks.push_back(to_json(c));
    return Json{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace qgrad
