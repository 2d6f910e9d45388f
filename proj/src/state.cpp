#include "qgrad/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

double bose_fugacity_cap() { return std::nextafter(kBoseFugacityMax, 0.0); }

}  // namespace

void EquilibriumParams::validate() const {
    check_fugacity(z, theta);
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("temperature must be positive");
    if (!(hhat > 0.0) || !std::isfinite(hhat)) throw DomainError("hhat must be positive");
    if (!u.allFinite()) throw DomainError("velocity must be finite");
}

double thermal_volume_factor(double T, double hhat) {
    return hhat * std::pow(2.0 * std::numbers::pi * T, 1.5);
}

RhoP equilibrium_rho_p(const EquilibriumParams& eq, const PolylogSet& li) {
    const double factor = thermal_volume_factor(eq.T, eq.hhat);
    return {factor * li.li(3), factor * eq.T * li.li(5)};
}

RhoP equilibrium_rho_p(const EquilibriumParams& eq) {
    eq.validate();
    return equilibrium_rho_p(eq, eval_polylog_set(eq.z, eq.theta));
}

double fugacity_ratio(const PolylogSet& li) { return li.li(5) / std::pow(li.li(3), 5.0 / 3.0); }

double fugacity_ratio_limit(GasStatistics stats) {
    switch (stats) {
        case GasStatistics::Classical: return 0.0;
        case GasStatistics::Boson:
            return fugacity_ratio(eval_polylog_set(bose_fugacity_cap(), stats));
        case GasStatistics::Fermion:
            // Degenerate limit li[s] ~ ln(z)^s / Gamma(s+1).
            return std::pow(detail::gamma_half_integer(5), 5.0 / 3.0) / detail::gamma_half_integer(7);
    }
    return 0.0;
}

EquilibriumParams fit_equilibrium(double rho, double p, GasStatistics theta, double hhat) {
    if (!(rho > 0.0) || !(p > 0.0) || !std::isfinite(rho) || !std::isfinite(p))
        throw DomainError("fit_equilibrium needs finite rho > 0 and p > 0");
    if (!(hhat > 0.0)) throw DomainError("hhat must be positive");

    const double target = 2.0 * std::numbers::pi * std::pow(hhat, 2.0 / 3.0) * p / std::pow(rho, 5.0 / 3.0);
    EquilibriumParams eq;
    eq.theta = theta;
    eq.hhat = hhat;

    double z;
    if (theta == GasStatistics::Classical) {
        z = std::pow(target, -1.5);
    } else {
        const double floor = fugacity_ratio_limit(theta);
        if (target <= floor) {
            if (theta == GasStatistics::Boson)
                throw CondensationError("pressure too low for a Bose gas at this density (condensation)");
            throw NoSolution("pressure below the degenerate Fermi limit");
        }
        const double log_target = std::log(target);
        // F(y) = ln G(e^y) - ln G*, decreasing in y = ln z.
        auto F = [&](double y, double* slope) {
            double zy = std::exp(y);
            if (theta == GasStatistics::Boson) zy = std::min(zy, bose_fugacity_cap());
            const PolylogSet li = eval_polylog_set(zy, theta);
            if (slope) *slope = li.li(3) / li.li(5) - (5.0 / 3.0) * li.li(1) / li.li(3);
            return std::log(fugacity_ratio(li)) - log_target;
        };
        const double y_cap = theta == GasStatistics::Boson ? std::log(kBoseFugacityMax) : 700.0;
        double y = std::min(-1.5 * log_target, y_cap);
        double lo = y, hi = y;
        double f_lo = F(lo, nullptr), f_hi = f_lo;
        for (double step = 1.0; f_lo < 0.0; step *= 2.0) {
            hi = lo;
            f_hi = f_lo;
            lo -= step;
            f_lo = F(lo, nullptr);
        }
        for (double step = 1.0; f_hi > 0.0; step *= 2.0) {
            lo = hi;
            f_lo = f_hi;
            hi = std::min(hi + step, y_cap);
            f_hi = F(hi, nullptr);
            if (hi == y_cap && f_hi > 0.0) throw NoSolution("fugacity bracket failed");
        }
        y = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            double slope;
            const double f = F(y, &slope);
            if (f == 0.0) break;
            if (f > 0.0) lo = y; else hi = y;
            double next = y - f / slope;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double dy = std::abs(next - y);
            y = next;
            if (dy <= 1e-15 * std::max(1.0, std::abs(y)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(y))) break;
        }
        z = std::exp(y);
        if (theta == GasStatistics::Boson) z = std::min(z, bose_fugacity_cap());
    }
    eq.z = z;
    const PolylogSet li = eval_polylog_set(z, theta);
    eq.T = std::pow(rho / (hhat * li.li(3)), 2.0 / 3.0) / (2.0 * std::numbers::pi);
    return eq;
}

Vec13 MomentState13::to_vector() const {
    Vec13 w;
    w[slot::rho] = rho;
    for (int i = 0; i < 3; ++i) {
        w[slot::u(i)] = u[i];
        w[slot::q(i)] = q[i];
        for (int j = i; j < 3; ++j) w[slot::p(i, j)] = p_ij(i, j);
    }
    return w;
}

MomentState13 MomentState13::from_vector(const Vec13& w) {
    MomentState13 s;
    s.rho = w[slot::rho];
    for (int i = 0; i < 3; ++i) {
        s.u[i] = w[slot::u(i)];
        s.q[i] = w[slot::q(i)];
        for (int j = 0; j < 3; ++j) s.p_ij(i, j) = w[slot::p(i, j)];
    }
    return s;
}

MomentState13 MomentState13::equilibrium(const EquilibriumParams& eq) {
    const RhoP rp = equilibrium_rho_p(eq);
    MomentState13 s;
    s.rho = rp.rho;
    s.u = eq.u;
    s.p_ij = rp.p * Mat3::Identity();
    s.q.setZero();
    return s;
}

void check_admissible(const MomentState13& s, GasStatistics theta, double hhat) {
    if (!(s.rho > 0.0) || !std::isfinite(s.rho)) throw DomainError("density must be positive");
    if (!s.u.allFinite() || !s.q.allFinite() || !s.p_ij.allFinite()) throw DomainError("state has non-finite entries");
    if ((s.p_ij - s.p_ij.transpose()).cwiseAbs().maxCoeff() > 1e-14 * s.p_ij.cwiseAbs().maxCoeff())
        throw DomainError("pressure tensor must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat3> es(s.p_ij, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw DomainError("pressure tensor must be positive definite");
    fit_equilibrium(s.rho, s.pressure(), theta, hhat);
}

bool is_admissible(const MomentState13& s, GasStatistics theta, double hhat) {
    try {
        check_admissible(s, theta, hhat);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void MomentState5::validate() const {
    if (!std::isfinite(rho) || !std::isfinite(u1) || !std::isfinite(p11) || !std::isfinite(q1) || !std::isfinite(p))
        throw DomainError("1D state has non-finite entries");
    if (!(rho > 0.0)) throw DomainError("density must be positive");
    if (!(p > 0.0)) throw DomainError("pressure must be positive");
    if (!(p11 > 0.0)) throw DomainError("p11 must be positive");
    const double s = p11 / p - 1.0;
    if (!(s > -1.0 && s < 2.0)) throw DomainError("sigma11/p = " + std::to_string(s) + " outside (-1, 2)");
}

bool MomentState5::admissible() const {
    try {
        validate();
        return true;
    } catch (const Error&) {
        return false;
    }
}

Vec5 MomentState5::to_vector() const {
    Vec5 w;
    w << rho, u1, p11, q1, p;
    return w;
}

MomentState5 MomentState5::from_vector(const Vec5& w) {
    return {w[slot5::rho], w[slot5::u1], w[slot5::p11], w[slot5::q1], w[slot5::p]};
}

MomentState13 MomentState5::lift() const {
    MomentState13 s;
    s.rho = rho;
    s.u = Vec3(u1, 0.0, 0.0);
    const double transverse = 0.5 * (3.0 * p - p11);
    s.p_ij = Vec3(p11, transverse, transverse).asDiagonal();
    s.q = Vec3(q1, 0.0, 0.0);
    return s;
}

ClosureMoments closure_moments(const MomentState13& state, const EquilibriumParams& eq) {
    const PolylogSet li = eval_polylog_set(eq.z, eq.theta);
    ClosureMoments out;
    const Mat3 I = Mat3::Identity();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out.q3[k](i, j) = 0.4 * (I(i, j) * state.q[k] + I(i, k) * state.q[j] + I(j, k) * state.q[i]);
    const double p = state.pressure();
    const double l7 = li.li(7);
    const double scale = thermal_volume_factor(eq.T, eq.hhat) * eq.T * eq.T * l7;
    out.Delta = scale * (5.0 * I + 7.0 * (state.stress() / p) * li.li(5) * li.li(9) / (l7 * l7));
    return out;
}

double equilibrium_distribution(const EquilibriumParams& eq, const Vec3& v) {
    const double a = (v - eq.u).squaredNorm() / (2.0 * eq.T);
    const double th = theta_of(eq.theta);
    // 1 / (e^a / z + theta) written to avoid overflow for large a.
    const double e = std::exp(-a);
    return eq.z * e / (1.0 + th * eq.z * e);
}

GradAnsatz::GradAnsatz(const MomentState13& state, const EquilibriumParams& eq) : eq_(eq) {
    const PolylogSet li = eval_polylog_set(eq.z, eq.theta);
    const double l3 = li.li(3), l5 = li.li(5), l7 = li.li(7), l9 = li.li(9);
    const double frakB = 3.5 * l9 / l5 - 2.5 * (l7 * l7) / (l5 * l5);
    const double p = state.pressure();
    const Mat3 sigma = state.stress();
    stress_coeff_ = sigma * (l5 / l7) / (2.0 * p * eq.T);
    stress_shift_ = sigma.trace() * (l5 / l3) * (l5 / l7) / (2.0 * p);
    heat_coeff_ = state.q / (frakB * 5.0 * p * eq.T);
    heat_shift_ = 5.0 * l7 / l5;
}

double GradAnsatz::operator()(const Vec3& v) const {
    const Vec3 c = v - eq_.u;
    const double stress = c.dot(stress_coeff_ * c) - stress_shift_;
    const double heat = heat_coeff_.dot(c) * (c.squaredNorm() / eq_.T - heat_shift_);
    return equilibrium_distribution(eq_, v) * (1.0 + stress + heat);
}

double grad_ansatz_eval(const MomentState13& state, const EquilibriumParams& eq, const Vec3& v) {
    return GradAnsatz(state, eq)(v);
}

}  // namespace qgrad
