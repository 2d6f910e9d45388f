#include "qgrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qgrad/coefficients.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/matrices.hpp"

namespace qgrad {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

double poly_eval(const Polynomial& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

// Diagonal similarity by powers of two that equalises row and column norms.
Eigen::VectorXd balance(Eigen::MatrixXd& B) {
    const int n = static_cast<int>(B.rows());
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
    constexpr double radix = 2.0;
    bool done = false;
    for (int sweep = 0; !done && sweep < 100; ++sweep) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(B(j, i));
                r += std::abs(B(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                scale[i] *= f;
                B.row(i) /= f;
                B.col(i) *= f;
            }
        }
    }
    return scale;
}

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

double spectral_norm(const Eigen::MatrixXd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace

EigenResult eigendecompose(const Eigen::MatrixXd& A) {
    if (!A.allFinite()) throw DomainError("matrix has non-finite entries");
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd B = A;
    const Eigen::VectorXd scale = balance(B);
    Eigen::EigenSolver<Eigen::MatrixXd> es(B, true);
    if (es.info() != Eigen::Success) throw NoConvergence("eigenvalue iteration did not converge");

    EigenResult out;
    out.values = es.eigenvalues();
    out.vectors = scale.cast<Complex>().asDiagonal() * es.eigenvectors();
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    const Eigen::MatrixXcd Ac = A.cast<Complex>();
    for (int k = 0; k < n; ++k) {
        const double vn = out.vectors.col(k).norm();
        if (vn > 0.0) out.vectors.col(k) /= vn;
        const double res = (Ac * out.vectors.col(k) - out.values[k] * out.vectors.col(k)).norm();
        out.max_residual = std::max(out.max_residual, norm > 0.0 ? res / norm : res);
    }
    if (out.max_residual > 1e-10) throw NoConvergence("eigenpair residual exceeds 1e-10 |A|");
    return out;
}

const char* hyperbolicity_name(Hyperbolicity h) {
    switch (h) {
        case Hyperbolicity::HyperbolicStrict: return "HyperbolicStrict";
        case Hyperbolicity::HyperbolicDegenerate: return "HyperbolicDegenerate";
        case Hyperbolicity::NonDiagonalizable: return "NonDiagonalizable";
        case Hyperbolicity::NonHyperbolic: return "NonHyperbolic";
    }
    return "?";
}

bool is_hyperbolic(Hyperbolicity h) {
    return h == Hyperbolicity::HyperbolicStrict || h == Hyperbolicity::HyperbolicDegenerate;
}

HyperbolicityVerdict diagonalizability_test(const Eigen::MatrixXd& A, const ClassifyOptions& opt) {
    const int n = static_cast<int>(A.rows());
    HyperbolicityVerdict v;
    Eigen::MatrixXd B = A;
    balance(B);
    Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
    if (es.info() != Eigen::Success) throw NoConvergence("eigenvalue iteration did not converge");
    v.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(v.eigenvalues.begin(), v.eigenvalues.end(), complex_less);

    auto near = [](double x, double tol) { return x > tol / 100.0 && x < tol * 100.0; };

    bool complex_present = false;
    for (const Complex& l : v.eigenvalues) {
        const double im = std::abs(l.imag()) / (1.0 + std::abs(l));
        v.max_imag = std::max(v.max_imag, im);
        if (im > opt.imag_tol) complex_present = true;
        if (near(im, opt.imag_tol)) v.near_threshold = true;
    }

    // Single-linkage clustering; eigenvalues judged real are compared by real part.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto effective = [&](const Complex& l) {
        return std::abs(l.imag()) / (1.0 + std::abs(l)) > opt.imag_tol ? l : Complex(l.real(), 0.0);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Complex a = effective(v.eigenvalues[i]), b = effective(v.eigenvalues[j]);
            const double gap = std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
            if (gap <= opt.cluster_tol) parent[find(i)] = find(j);
        }
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (group_of[r] < 0) {
            group_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[r]].push_back(i);
    }

    double norm2 = -1.0;
    bool defective = false;
    bool repeated = false;
    for (const auto& g : groups) {
        ClusterDiagnostic d;
        Complex mean = 0.0;
        for (int i : g) mean += effective(v.eigenvalues[i]);
        mean /= static_cast<double>(g.size());
        d.value = mean;
        d.algebraic = static_cast<int>(g.size());
        d.geometric = 1;
        if (g.size() > 1) {
            repeated = true;
            if (norm2 < 0.0) norm2 = spectral_norm(A);
            const double thresh = opt.rank_tol * std::max(norm2, 1e-300);
            Eigen::VectorXd sv;
            if (mean.imag() == 0.0) {
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(A - mean.real() * Eigen::MatrixXd::Identity(n, n));
                sv = svd.singularValues();
            } else {
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.cast<Complex>() - mean * Eigen::MatrixXcd::Identity(n, n));
                sv = svd.singularValues();
            }
            int nullity = 0;
            for (int k = 0; k < sv.size(); ++k) {
                if (sv[k] <= thresh) ++nullity;
                if (near(sv[k] / std::max(norm2, 1e-300), opt.rank_tol)) v.near_threshold = true;
            }
            d.geometric = nullity;
            d.min_singular = sv[sv.size() - 1] / std::max(norm2, 1e-300);
            if (nullity < d.algebraic) defective = true;
        }
        v.clusters.push_back(d);
    }

    v.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < v.clusters.size(); ++a)
        for (std::size_t b = a + 1; b < v.clusters.size(); ++b) {
            const Complex x = v.clusters[a].value, y = v.clusters[b].value;
            const double gap = std::abs(x - y) / (1.0 + std::max(std::abs(x), std::abs(y)));
            v.min_gap = std::min(v.min_gap, gap);
        }
    if (near(v.min_gap, opt.cluster_tol)) v.near_threshold = true;

    if (complex_present) v.classification = Hyperbolicity::NonHyperbolic;
    else if (defective) v.classification = Hyperbolicity::NonDiagonalizable;
    else if (repeated) v.classification = Hyperbolicity::HyperbolicDegenerate;
    else v.classification = Hyperbolicity::HyperbolicStrict;
    return v;
}

Polynomial characteristic_polynomial(const Eigen::MatrixXd& A, double radius) {
    using LComplex = std::complex<long double>;
    using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = static_cast<int>(A.rows());
    const int N = 2 * (n + 1);
    const LMatrix Al = A.cast<long double>().cast<LComplex>();
    std::vector<LComplex> dets(N);
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 0; j < N; ++j) {
        const LComplex lambda = std::polar(static_cast<long double>(radius), two_pi * j / N);
        LMatrix S = -Al;
        S.diagonal().array() += lambda;
        dets[j] = Eigen::PartialPivLU<LMatrix>(S).determinant();
    }
    Polynomial c(n + 1);
    for (int k = 0; k <= n; ++k) {
        LComplex acc = 0.0L;
        for (int j = 0; j < N; ++j) acc += dets[j] * std::polar(1.0L, -two_pi * j * k / N);
        c[k] = static_cast<double>(acc.real() / (N * std::pow(static_cast<long double>(radius), k)));
    }
    return c;
}

Polynomial char_poly_A5_analytic(const MomentState5& s, const EquilibriumParams& eq) {
    const PolylogSet li = eval_polylog_set(eq.z, eq.theta);
    const A5Coeffs a = a5_coeffs(s, li, eq.T);
    const double T = eq.T;
    const double big = 90.0 * a.a2 + 50.0 * a.a3 + 225.0 * s.p11 / s.rho;
    const double low = 90.0 * (a.a1 + a.a3 * s.sigma11() / s.rho);
    // lambda_hat [75 lh^4 T^2 - big lh^2 T + low - 288 (q1/rho) lh sqrt(T)] / (75 T^2).
    // The heat-flux term enters with a minus sign; it is odd under q1 -> -q1, lh -> -lh.
    return {0.0, low / (75.0 * T * T), -288.0 * s.q1 / s.rho / (75.0 * T * std::sqrt(T)), -big / (75.0 * T), 0.0,
            1.0};
}

Polynomial AppendixCoeffs::g() const { return {g0, c2, c3, c4, 25.0}; }

AppendixCoeffs appendix_coeffs(double z, GasStatistics theta, double eps) {
    const PolylogSet li = eval_polylog_set(z, theta);
    const double l1 = li.li(1), l3 = li.li(3), l5 = li.li(5), l7 = li.li(7), l9 = li.li(9);
    const double e2 = eps * eps;
    const double den = 5.0 * l1 * l5 - 3.0 * l3 * l3;
    const double l3_2 = l3 * l3, l5_2 = l5 * l5, l7_2 = l7 * l7, l9_2 = l9 * l9;

    AppendixCoeffs k;
    k.epsilon = eps;
    k.c0 = 3.0 * (7.0 * l3 * l7 - 5.0 * l5_2) / den;
    k.c1 = (140.0 * l1 * l5 * l9 + 175.0 * l1 * l7_2 - 84.0 * l3_2 * l9 - 75.0 * l3 * l5 * l7) / (15.0 * l7 * den);
    k.c2 = (-735.0 * l3_2 * l3 * l7_2 * l7 * l9 + 560.0 * e2 * l1 * l5_2 * l7_2 * (l5 * l9 - l7_2) +
            294.0 * l3_2 * l5_2 * l9 * (e2 * l5 * l9 - (17.0 * e2 / 7.0 - 25.0 / 14.0) * l7_2) +
            e2 * l3 * l5_2 * l7 * (196.0 * l1 * l9_2 - 210.0 * l5_2 * l9 + 450.0 * l5 * l7_2)) /
           (l3_2 * l7_2 * l7 * den);
    k.c3 = (-588.0 * l3_2 * l3_2 * l9_2 + 720.0 * e2 * l1 * l5_2 * l5 * l7_2 +
            l3_2 * l3 * (-525.0 * l5 * l7 * l9 + 1575.0 * l7_2 * l7) +
            l3_2 * (((-432.0 * e2 - 1125.0) * l5_2 + 1225.0 * l1 * l9) * l7_2 + 980.0 * l1 * l5 * l9_2)) /
           (3.0 * l7_2 * l3_2 * den);
    k.c4 = ((-1225.0 * l1 * l9 + 375.0 * l3 * l7) * l5 - 875.0 * l1 * l7_2 + 735.0 * l3_2 * l9) / (3.0 * l7 * den);
    k.g0 = -14.0 * e2 * l5_2 *
           (14.0 * l3 * l7 * l9_2 + 35.0 * l5_2 * l9_2 - 80.0 * l5 * l7_2 * l9 + 35.0 * l7_2 * l7_2) /
           (l3 * l7_2 * l7 * den);
    return k;
}

double shear_speed_squared(const PolylogSet& li) { return 1.4 * li.li(9) / li.li(7); }

Polynomial EquilibriumCharPoly::expanded() const {
    Polynomial p{1.0};
    for (const auto& f : factors) p = poly_mul(p, f);
    return p;
}

EquilibriumCharPoly char_poly_equilibrium(double z, GasStatistics theta) {
    const PolylogSet li = eval_polylog_set(z, theta);
    const AppendixCoeffs k = appendix_coeffs(z, theta, 0.0);
    EquilibriumCharPoly out;
    out.shear2 = shear_speed_squared(li);
    out.c0 = k.c0;
    out.c1 = k.c1;
    const double a = out.shear2;
    out.factors = {{0, 0, 0, 0, 0, 1}, {a * a, 0, -2 * a, 0, 1}, {k.c0, 0, -k.c1, 0, 1}};
    const double disc = std::sqrt(k.c1 * k.c1 - 4.0 * k.c0);
    const double fast = std::sqrt(0.5 * (k.c1 + disc));
    const double slow = std::sqrt(0.5 * (k.c1 - disc));
    const double shear = std::sqrt(a);
    out.eigenvalues_hat = {-fast, -shear, -shear, -slow, 0, 0, 0, 0, 0, slow, shear, shear, fast};
    std::sort(out.eigenvalues_hat.begin(), out.eigenvalues_hat.end());
    return out;
}

Polynomial char_poly_perturbed_analytic(double z, GasStatistics theta, double eps) {
    const PolylogSet li = eval_polylog_set(z, theta);
    const AppendixCoeffs k = appendix_coeffs(z, theta, eps);
    const Polynomial gx = k.g();
    Polynomial g_lambda(2 * gx.size() - 1, 0.0);
    for (std::size_t i = 0; i < gx.size(); ++i) g_lambda[2 * i] = gx[i];
    const Polynomial prefactor{0.0, 0.0, 0.0, -7.0 * li.li(9) / li.li(7), 0.0, 5.0};
    Polynomial p = poly_mul(prefactor, g_lambda);
    for (double& c : p) c /= 125.0;
    return p;
}

double crossing_function(double z, GasStatistics theta) {
    const EquilibriumCharPoly e = char_poly_equilibrium(z, theta);
    return e.shear2 * e.shear2 - e.c1 * e.shear2 + e.c0;
}

double fermion_crossing() {
    // Locate the sign change on a log grid over (1, 100), then refine in ln z.
    const int n = 200;
    double lo = 0.0, hi = 0.0;
    int changes = 0;
    double prev_y = 0.0, prev_h = crossing_function(1.0);
    for (int i = 1; i <= n; ++i) {
        const double y = std::log(100.0) * i / n;
        const double h = crossing_function(std::exp(y));
        if ((h > 0.0) != (prev_h > 0.0)) {
            ++changes;
            lo = prev_y;
            hi = y;
        }
        prev_y = y;
        prev_h = h;
    }
    if (changes != 1) throw NoRoot("expected exactly one sign change of the crossing function on (1, 100)");
    double h_lo = crossing_function(std::exp(lo));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = crossing_function(std::exp(mid));
        if ((h_mid > 0.0) == (h_lo > 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

AnnihilationResult annihilation_residual(const Mat13& M1, double z, GasStatistics theta, double T) {
    const EquilibriumCharPoly e = char_poly_equilibrium(z, theta);
    const Mat13 I = Mat13::Identity();
    const Mat13 M2 = M1 * M1;
    const Mat13 quartic = M2 * M2 - e.c1 * T * M2 + e.c0 * T * T * I;
    const Mat13 reduced = M1 * quartic;
    const Mat13 full = (M2 - e.shear2 * T * I) * reduced;
    const double norm = M1.cwiseAbs().rowwise().sum().maxCoeff();

    AnnihilationResult r;
    r.h = e.shear2 * e.shear2 - e.c1 * e.shear2 + e.c0;
    r.full_residual = full.cwiseAbs().rowwise().sum().maxCoeff() / std::pow(norm, 7);
    r.case2 = std::abs(r.h) < 1e-6;
    r.residual = r.case2 ? reduced.cwiseAbs().rowwise().sum().maxCoeff() / std::pow(norm, 5) : r.full_residual;
    return r;
}

}  // namespace qgrad
