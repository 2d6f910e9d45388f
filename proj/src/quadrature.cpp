#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgrad/errors.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

constexpr int kPanelNodes = 8;

struct TensorSums {
    std::vector<double> value;
    std::vector<double> magnitude;  // integral of |f * selector|, the scale for convergence checks
};

TensorSums tensor_quadrature(const std::function<double(const Vec3&)>& f, const EquilibriumParams& eq,
                             const std::vector<Selector>& selectors, double half_width, int n, QuadratureRule rule) {
    std::vector<double> x, w;
    if (rule == QuadratureRule::Trapezoid) {
        // Endpoints carry negligible weight; use n interior-including points.
        const double step = 2.0 / (n - 1);
        for (int i = 0; i < n; ++i) {
            x.push_back(-1.0 + step * i);
            w.push_back((i == 0 || i == n - 1) ? 0.5 * step : step);
        }
    } else {
        std::vector<double> gx, gw;
        const int per_panel = std::min(n, kPanelNodes);
        gauss_legendre(per_panel, gx, gw);
        const int panels = (n + per_panel - 1) / per_panel;
        for (int k = 0; k < panels; ++k) {
            const double left = -1.0 + 2.0 * k / panels;
            const double half = 1.0 / panels;
            for (int i = 0; i < per_panel; ++i) {
                x.push_back(left + half * (gx[i] + 1.0));
                w.push_back(half * gw[i]);
            }
        }
    }
    n = static_cast<int>(x.size());
    const double h = half_width * std::sqrt(eq.T);
    std::vector<double> sums(selectors.size(), 0.0), mags(selectors.size(), 0.0);
    int max_power = 0, max_norm = 0;
    for (const Selector& sel : selectors) {
        for (int i = 0; i < 3; ++i) max_power = std::max(max_power, sel.power[i]);
        max_norm = std::max(max_norm, sel.norm_power);
    }
    // Powers c_i^k and |c|^(2k) at the current node, shared by every selector.
    std::vector<double> pw[3], pn(max_norm + 1);
    for (auto& v : pw) v.assign(max_power + 1, 1.0);
    Vec3 c;
    for (int a = 0; a < n; ++a) {
        c[0] = h * x[a];
        for (int b = 0; b < n; ++b) {
            c[1] = h * x[b];
            for (int d = 0; d < n; ++d) {
                c[2] = h * x[d];
                const double weight = w[a] * w[b] * w[d];
                const double fv = f(eq.u + c) * weight;
                if (fv == 0.0) continue;
                for (int i = 0; i < 3; ++i)
                    for (int k = 1; k <= max_power; ++k) pw[i][k] = pw[i][k - 1] * c[i];
                pn[0] = 1.0;
                for (int k = 1; k <= max_norm; ++k) pn[k] = pn[k - 1] * c.squaredNorm();
                for (std::size_t s = 0; s < selectors.size(); ++s) {
                    const Selector& sel = selectors[s];
                    const double m = sel.weight * pw[0][sel.power[0]] * pw[1][sel.power[1]] * pw[2][sel.power[2]] *
                                     pn[sel.norm_power];
                    sums[s] += fv * m;
                    mags[s] += std::abs(fv * m);
                }
            }
        }
    }
    const double jac = eq.hhat * h * h * h;
    for (std::size_t s = 0; s < sums.size(); ++s) {
        sums[s] *= jac;
        mags[s] *= jac;
    }
    return {sums, mags};
}

}  // namespace

std::vector<double> moment_quadrature(const std::function<double(const Vec3&)>& f, const EquilibriumParams& eq,
                                      const std::vector<Selector>& selectors, const QuadratureOptions& opt) {
    eq.validate();
    // Degenerate Fermi gases fill a sphere of radius ~ sqrt(2 T ln z); widen the box to cover it.
    const double half_width = opt.half_width + std::sqrt(2.0 * std::max(std::log(eq.z), 0.0));
    int n = opt.nodes;
    TensorSums result = tensor_quadrature(f, eq, selectors, half_width, n, opt.rule);
    if (!opt.check_convergence) return result.value;
    // The rules converge fast once the tails and any Fermi edge are resolved, so
    // agreement with the previous, coarser rule bounds the error of the finer one.
    TensorSums check = tensor_quadrature(f, eq, selectors, half_width, std::max(4, 3 * n / 4), opt.rule);
    for (;;) {
        bool converged = true;
        for (std::size_t s = 0; s < result.value.size(); ++s)
            if (std::abs(result.value[s] - check.value[s]) > opt.tolerance * result.magnitude[s]) converged = false;
        if (converged) return result.value;
        if (n >= opt.max_nodes)
            throw QuadratureNotConverged("moments still changing by more than the tolerance at " + std::to_string(n) +
                                         " nodes per axis");
        n = std::min(opt.max_nodes, 4 * n / 3);
        check = std::move(result);
        result = tensor_quadrature(f, eq, selectors, half_width, n, opt.rule);
    }
}

}  // namespace qgrad
