#include "qgrad/polylog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

constexpr std::array<int, 5> kTwiceOrders{1, 3, 5, 7, 9};

int order_index(int twice_s) {
    switch (twice_s) {
        case 1: return 0;
        case 3: return 1;
        case 5: return 2;
        case 7: return 3;
        case 9: return 4;
        default: throw DomainError("polylog order 2s=" + std::to_string(twice_s) + " not in {1,3,5,7,9}");
    }
}

// Coefficients for the Borwein acceleration of the alternating eta series,
// stored as d_k / d_n so that the weights stay O(1).
struct EtaWeights {
    static constexpr int n = 40;
    std::array<long double, n> w{};

    EtaWeights() {
        std::array<long double, n + 1> d{};
        long double term = 1.0L;  // n (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
        long double acc = term;
        d[0] = acc;
        for (int i = 0; i < n; ++i) {
            term *= 4.0L * (n + i) * (n - i) / ((2.0L * i + 1.0L) * (2.0L * i + 2.0L));
            acc += term;
            d[i + 1] = acc;
        }
        for (int k = 0; k < n; ++k) w[k] = (d[k] - d[n]) / d[n];
    }
};

const EtaWeights& eta_weights() {
    static const EtaWeights weights;
    return weights;
}

// zeta(s - k) for s in {1/2..9/2}, k = 0..kBoseTerms-1, used by the log expansion.
constexpr int kBoseTerms = 36;

struct BoseTable {
    std::array<std::array<double, kBoseTerms>, 5> zeta{};
    std::array<double, 5> gamma_one_minus_s{};
    std::array<double, kBoseTerms> inv_factorial{};

    BoseTable() {
        for (int j = 0; j < 5; ++j) {
            const int ts = kTwiceOrders[j];
            for (int k = 0; k < kBoseTerms; ++k) zeta[j][k] = detail::zeta_half_integer(ts - 2 * k);
            gamma_one_minus_s[j] = detail::gamma_half_integer(2 - ts);
        }
        double f = 1.0;
        for (int k = 0; k < kBoseTerms; ++k) {
            if (k > 0) f /= k;
            inv_factorial[k] = f;
        }
    }
};

const BoseTable& bose_table() {
    static const BoseTable table;
    return table;
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using Vec5 = std::array<double, 5>;

// Integrand of F_s after t = x^2: 2 x^{2s-1} / (exp(x^2 - eta) + 1).
Vec5 fd_integrand(double x, double eta) {
    const double a = x * x - eta;
    double occ;
    if (a > 0.0) {
        const double e = std::exp(-a);
        occ = e / (1.0 + e);
    } else {
        occ = 1.0 / (1.0 + std::exp(a));
    }
    Vec5 out;
    double power = 2.0 * occ;  // x^0
    const double x2 = x * x;
    for (int j = 0; j < 5; ++j) {
        out[j] = power;
        power *= x2;
    }
    return out;
}

struct Panel {
    double a, b;
    Vec5 value, error;
};

Panel gk15(double a, double b, double eta) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Vec5 kron{}, gauss{};
    const Vec5 fc = fd_integrand(c, eta);
    for (int j = 0; j < 5; ++j) {
        kron[j] = fc[j] * kWgk[7];
        gauss[j] = fc[j] * kWg[3];
    }
    for (int i = 0; i < 7; ++i) {
        const Vec5 f1 = fd_integrand(c - h * kXgk[i], eta);
        const Vec5 f2 = fd_integrand(c + h * kXgk[i], eta);
        for (int j = 0; j < 5; ++j) {
            const double s = f1[j] + f2[j];
            kron[j] += kWgk[i] * s;
            if (i % 2 == 1) gauss[j] += kWg[i / 2] * s;
        }
    }
    Panel p{a, b, {}, {}};
    for (int j = 0; j < 5; ++j) {
        p.value[j] = kron[j] * h;
        p.error[j] = std::abs((kron[j] - gauss[j]) * h);
    }
    return p;
}

}  // namespace

int theta_of(GasStatistics stats) { return static_cast<int>(stats); }

GasStatistics statistics_from_theta(int theta) {
    if (theta < -1 || theta > 1) throw DomainError("theta must be -1, 0 or +1, got " + std::to_string(theta));
    return static_cast<GasStatistics>(theta);
}

const char* statistics_name(GasStatistics stats) {
    switch (stats) {
        case GasStatistics::Boson: return "boson";
        case GasStatistics::Classical: return "classical";
        case GasStatistics::Fermion: return "fermion";
    }
    return "?";
}

double PolylogSet::li(int twice_s) const { return values[order_index(twice_s)]; }

void check_fugacity(double z, GasStatistics stats) {
    if (!std::isfinite(z) || z <= 0.0) throw DomainError("fugacity must be finite and positive");
    if (stats == GasStatistics::Boson && z >= kBoseFugacityMax)
        throw DomainError("Bose fugacity must satisfy z < 1 - 1e-12");
}

namespace detail {

double gamma_half_integer(int twice_x) {
    if (twice_x % 2 == 0) throw DomainError("gamma_half_integer expects an odd numerator");
    // Gamma(1/2) = sqrt(pi); step up with Gamma(x+1) = x Gamma(x), down with its inverse.
    double g = std::sqrt(std::numbers::pi);
    if (twice_x > 1) {
        for (int t = 1; t < twice_x; t += 2) g *= 0.5 * t;
    } else {
        for (int t = 1; t > twice_x; t -= 2) g /= 0.5 * (t - 2);
    }
    return g;
}

double dirichlet_eta(double s) {
    const auto& w = eta_weights();
    long double sum = 0.0L;
    for (int k = 0; k < EtaWeights::n; ++k) {
        const long double term = w.w[k] * std::pow(static_cast<long double>(k + 1), -static_cast<long double>(s));
        sum += (k % 2 == 0) ? term : -term;
    }
    return static_cast<double>(-sum);
}

double zeta_half_integer(int twice_x) {
    if (twice_x % 2 == 0) throw DomainError("zeta_half_integer expects an odd numerator");
    const double s = 0.5 * twice_x;
    if (s > 0.0) return dirichlet_eta(s) / (1.0 - std::pow(2.0, 1.0 - s));
    // Functional equation; 1 - s is a positive half-integer.
    const double reflected = zeta_half_integer(2 - twice_x);
    return std::pow(2.0, s) * std::pow(std::numbers::pi, s - 1.0) * std::sin(0.5 * std::numbers::pi * s) *
           gamma_half_integer(2 - twice_x) * reflected;
}

std::array<double, 5> polylog_series(double z, int theta) {
    // Sum_k (-theta)^{k+1}... written as sign^{k+1} z^k / k^s with sign = -theta.
    const double sign = theta > 0 ? -1.0 : 1.0;
    std::array<double, 5> sum{};
    double zk = z;
    double alt = 1.0;
    for (int k = 1; k < 100000; ++k) {
        const double inv_k = 1.0 / k;
        double term = alt * zk / std::sqrt(static_cast<double>(k));
        for (int j = 0; j < 5; ++j) {
            sum[j] += term;
            term *= inv_k;
        }
        if (zk * std::sqrt(inv_k) < 1e-18 * z) break;
        zk *= z;
        alt *= sign;
    }
    return sum;
}

std::array<double, 5> fermi_dirac_quadrature(double z) {
    const double eta = std::log(z);
    const double x_max = std::sqrt(std::max(eta, 0.0) + 64.0);
    std::vector<double> breaks{0.0};
    if (eta > 0.0) breaks.push_back(std::sqrt(eta));
    breaks.push_back(x_max);

    // Coarse pass to set the scale of the acceptance threshold.
    std::vector<Panel> work;
    Vec5 total{};
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const int pieces = 8;
        const double len = (breaks[b + 1] - breaks[b]) / pieces;
        for (int i = 0; i < pieces; ++i) {
            Panel p = gk15(breaks[b] + i * len, breaks[b] + (i + 1) * len, eta);
            for (int j = 0; j < 5; ++j) total[j] += p.value[j];
            work.push_back(p);
        }
    }

    const double span = x_max;
    Vec5 result{};
    int evaluations = 0;
    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        bool ok = true;
        const double share = (p.b - p.a) / span;
        for (int j = 0; j < 5 && ok; ++j) ok = p.error[j] <= 1e-14 * std::abs(total[j]) * share;
        if (ok || p.b - p.a < 1e-12 * span) {
            for (int j = 0; j < 5; ++j) result[j] += p.value[j];
            continue;
        }
        if (++evaluations > 200000) throw NoConvergence("Fermi-Dirac quadrature did not converge");
        const double m = 0.5 * (p.a + p.b);
        work.push_back(gk15(p.a, m, eta));
        work.push_back(gk15(m, p.b, eta));
    }
    for (int j = 0; j < 5; ++j) result[j] /= gamma_half_integer(kTwiceOrders[j]);
    return result;
}

std::array<double, 5> bose_log_expansion(double z) {
    const auto& t = bose_table();
    const double mu = std::log(z);
    std::array<double, 5> out{};
    for (int j = 0; j < 5; ++j) {
        const double s = 0.5 * kTwiceOrders[j];
        double sum = t.gamma_one_minus_s[j] * std::pow(-mu, s - 1.0);
        double mk = 1.0;
        for (int k = 0; k < kBoseTerms; ++k) {
            sum += t.zeta[j][k] * mk * t.inv_factorial[k];
            mk *= mu;
        }
        out[j] = sum;
    }
    return out;
}

}  // namespace detail

PolylogSet eval_polylog_set(double z, GasStatistics stats) {
    check_fugacity(z, stats);
    PolylogSet set;
    set.z = z;
    set.stats = stats;
    switch (stats) {
        case GasStatistics::Classical:
            set.values.fill(z);
            break;
        case GasStatistics::Boson:
            set.values = z <= detail::kSeriesSwitch ? detail::polylog_series(z, -1) : detail::bose_log_expansion(z);
            break;
        case GasStatistics::Fermion:
            set.values = z <= detail::kSeriesSwitch ? detail::polylog_series(z, 1) : detail::fermi_dirac_quadrature(z);
            break;
    }
    return set;
}

double polylog_derivative(double z, GasStatistics stats, int twice_s) {
    if (twice_s < 3) throw DomainError("polylog_derivative needs s >= 3/2");
    const PolylogSet set = eval_polylog_set(z, stats);
    order_index(twice_s);
    return set.li(twice_s - 2) / z;
}

}  // namespace qgrad
