#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgrad/errors.hpp"
#include "qgrad/random.hpp"
#include "qgrad/state.hpp"

using namespace qgrad;

namespace {

constexpr GasStatistics kAll[] = {GasStatistics::Boson, GasStatistics::Classical, GasStatistics::Fermion};

// Moments of f about u: rho, second moments c_i c_j, third moments c_i c_j c_k and c_i c_j |c|^2.
struct QuadratureMoments {
    double rho;
    Mat3 second;
    std::array<Mat3, 3> third;
    Mat3 fourth;
};

QuadratureMoments integrate(const std::function<double(const Vec3&)>& f, const EquilibriumParams& eq) {
    std::vector<Selector> sel{{{0, 0, 0}, 0, 1.0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Selector s;
            ++s.power[i];
            ++s.power[j];
            sel.push_back(s);
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Selector s;
                ++s.power[i];
                ++s.power[j];
                ++s.power[k];
                sel.push_back(s);
            }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Selector s;
            ++s.power[i];
            ++s.power[j];
            s.norm_power = 1;
            sel.push_back(s);
        }
    const std::vector<double> m = moment_quadrature(f, eq, sel);
    QuadratureMoments out;
    out.rho = m[0];
    std::size_t at = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.second(i, j) = m[at++];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out.third[k](i, j) = m[at++];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.fourth(i, j) = m[at++];
    return out;
}

MomentState13 sample_state(GasStatistics theta, std::uint64_t stream) {
    CounterRng rng(11, stream);
    RandomStateOptions opt;
    if (theta == GasStatistics::Boson) opt.z_max = 0.6;
    return random_admissible_state(theta, rng, opt).state;
}

}  // namespace

TEST_CASE("equilibrium density and pressure") {
    // Classical: rho = hhat (2 pi T)^{3/2} z, p = rho T.
    const EquilibriumParams eq{GasStatistics::Classical, 0.3, Vec3::Zero(), 2.0, 1.5};
    const RhoP rp = equilibrium_rho_p(eq);
    const double rho = 1.5 * std::pow(2.0 * std::numbers::pi * 2.0, 1.5) * 0.3;
    CHECK(rp.rho == doctest::Approx(rho).epsilon(1e-15));
    CHECK(rp.p == doctest::Approx(rho * 2.0).epsilon(1e-15));

    // Quantum gases: check against direct quadrature of the equilibrium distribution.
    for (GasStatistics theta : {GasStatistics::Boson, GasStatistics::Fermion}) {
        const EquilibriumParams q{theta, 0.5, Vec3(0.2, -0.1, 0.4), 1.3, 1.0};
        const QuadratureMoments m = integrate([&](const Vec3& v) { return equilibrium_distribution(q, v); }, q);
        const RhoP r = equilibrium_rho_p(q);
        CHECK(m.rho == doctest::Approx(r.rho).epsilon(1e-7));
        CHECK(m.second.trace() / 3.0 == doctest::Approx(r.p).epsilon(1e-7));
        CHECK(std::abs(m.second(0, 1)) < 1e-7 * r.p);
    }
}

TEST_CASE("fit_equilibrium inverts equilibrium_rho_p") {
    CounterRng rng(5, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const GasStatistics theta = kAll[trial % 3];
        EquilibriumParams eq;
        eq.theta = theta;
        eq.z = random_fugacity(theta, rng);
        eq.T = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
        eq.hhat = rng.uniform(0.5, 2.0);
        const RhoP rp = equilibrium_rho_p(eq);
        const EquilibriumParams fit = fit_equilibrium(rp.rho, rp.p, theta, eq.hhat);
        CAPTURE(eq.z);
        CHECK(fit.z == doctest::Approx(eq.z).epsilon(1e-10));
        CHECK(fit.T == doctest::Approx(eq.T).epsilon(1e-10));
    }
}

TEST_CASE("fugacity ratio is decreasing and bounded below") {
    for (GasStatistics theta : {GasStatistics::Boson, GasStatistics::Fermion}) {
        double prev = INFINITY;
        for (double z = 0.01; z < (theta == GasStatistics::Boson ? 0.999 : 200.0); z *= 1.3) {
            const double r = fugacity_ratio(eval_polylog_set(z, theta));
            CHECK(r < prev);
            CHECK(r > fugacity_ratio_limit(theta));
            prev = r;
        }
    }
    // Degenerate Fermi limit Gamma(5/2)^{5/3} / Gamma(7/2) = 0.4836.
    CHECK(fugacity_ratio_limit(GasStatistics::Fermion) ==
          doctest::Approx(std::pow(0.75 * std::sqrt(std::numbers::pi), 5.0 / 3.0) / (1.875 * std::sqrt(std::numbers::pi))));
    CHECK(fugacity_ratio_limit(GasStatistics::Classical) == 0.0);
}

TEST_CASE("fit errors") {
    // Below the Bose limit the gas would condense.
    const EquilibriumParams eq{GasStatistics::Boson, 0.999, Vec3::Zero(), 1.0, 1.0};
    const RhoP rp = equilibrium_rho_p(eq);
    CHECK_THROWS_AS(fit_equilibrium(rp.rho * 2.0, rp.p, GasStatistics::Boson), CondensationError);
    CHECK_THROWS_AS(fit_equilibrium(-1.0, 1.0, GasStatistics::Fermion), DomainError);
    CHECK_THROWS_AS(fit_equilibrium(1.0, 0.0, GasStatistics::Fermion), DomainError);
    EquilibriumParams bad;
    bad.T = -1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("moment vector round trip") {
    const MomentState13 s = sample_state(GasStatistics::Fermion, 1);
    const MomentState13 back = MomentState13::from_vector(s.to_vector());
    CHECK((back.p_ij - s.p_ij).norm() == 0.0);
    CHECK((back.q - s.q).norm() == 0.0);
    CHECK(s.to_vector()[slot::p(2, 1)] == s.p_ij(1, 2));
}

TEST_CASE("admissibility checks") {
    MomentState13 s;
    CHECK(is_admissible(s, GasStatistics::Fermion));
    s.rho = 0.0;
    CHECK_THROWS_AS(check_admissible(s, GasStatistics::Fermion), DomainError);
    s.rho = 1.0;
    s.p_ij(0, 0) = -0.1;
    CHECK_FALSE(is_admissible(s, GasStatistics::Classical));
    s.p_ij = Mat3::Identity();
    s.p_ij(0, 1) = 0.3;  // asymmetric
    CHECK_FALSE(is_admissible(s, GasStatistics::Classical));
    // High density at low pressure is beyond both the Bose and the Pauli limits.
    MomentState13 dense;
    dense.rho = 100.0;
    CHECK_FALSE(is_admissible(dense, GasStatistics::Boson));
    CHECK_FALSE(is_admissible(dense, GasStatistics::Fermion));
    CHECK(is_admissible(dense, GasStatistics::Classical));
}

TEST_CASE("1D state validation and lift") {
    MomentState5 s{1.2, 0.3, 1.5, -0.2, 1.1};
    CHECK_NOTHROW(s.validate());
    CHECK(s.admissible());
    const MomentState13 w = s.lift();
    CHECK(w.pressure() == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(w.p_ij(0, 0) == 1.5);
    CHECK(w.p_ij(1, 1) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(w.p_ij(1, 1) == w.p_ij(2, 2));
    CHECK(w.q[0] == -0.2);
    CHECK(MomentState5::from_vector(s.to_vector()).q1 == s.q1);

    MomentState5 bad = s;
    bad.p11 = 3.4;  // p22 = (3p - p11)/2 < 0
    CHECK_FALSE(bad.admissible());
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = s;
    bad.rho = -1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("classical closure has the textbook Grad form") {
    const MomentState13 s = sample_state(GasStatistics::Classical, 2);
    const EquilibriumParams eq = fit_equilibrium(s.rho, s.pressure(), GasStatistics::Classical);
    const ClosureMoments c = closure_moments(s, eq);
    const double p = s.pressure(), rho = s.rho;
    const Mat3 I = Mat3::Identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double expected = 0.4 * (s.q[i] * I(j, k) + s.q[j] * I(i, k) + s.q[k] * I(i, j));
                CHECK(c.q_ijk(i, j, k) == doctest::Approx(expected).epsilon(1e-13).scale(s.q.norm()));
            }
    const Mat3 delta = 5.0 * p * p / rho * I + 7.0 * (p / rho) * s.stress();
    CHECK((c.Delta - delta).norm() < 1e-13 * delta.norm());
}

TEST_CASE("closure agrees with quadrature of the ansatz") {
    for (GasStatistics theta : kAll) {
        for (std::uint64_t k = 0; k < 2; ++k) {
            const MomentState13 s = sample_state(theta, 20 + k);
            const EquilibriumParams eq = fit_equilibrium(s.rho, s.pressure(), theta);
            EquilibriumParams centred = eq;
            centred.u = s.u;
            const GradAnsatz f(s, centred);
            const QuadratureMoments m = integrate([&](const Vec3& v) { return f(v); }, centred);
            const ClosureMoments c = closure_moments(s, centred);
            const double p = s.pressure(), scale = p * std::sqrt(eq.T);
            CAPTURE(theta_of(theta));
            CHECK(m.rho == doctest::Approx(s.rho).epsilon(1e-7));
            CHECK((m.second - s.p_ij).norm() < 1e-7 * p);
            for (int i = 0; i < 3; ++i)
                CHECK(0.5 * (m.third[0](i, 0) + m.third[1](i, 1) + m.third[2](i, 2)) ==
                      doctest::Approx(s.q[i]).scale(scale).epsilon(1e-7));
            for (int k3 = 0; k3 < 3; ++k3) CHECK((m.third[k3] - c.q3[k3]).norm() < 1e-7 * scale);
            CHECK((m.fourth - c.Delta).norm() < 1e-7 * p * eq.T);
        }
    }
}

TEST_CASE("ansatz reduces to the equilibrium distribution") {
    for (GasStatistics theta : kAll) {
        const EquilibriumParams eq{theta, 0.4, Vec3(0.1, 0.2, -0.3), 1.7, 1.0};
        const MomentState13 s = MomentState13::equilibrium(eq);
        CHECK(s.stress().norm() < 1e-14 * s.pressure());
        CounterRng rng(2, 0);
        for (int trial = 0; trial < 20; ++trial) {
            const Vec3 v = eq.u + 2.0 * random_unit_vector(rng) * rng.uniform();
            CHECK(grad_ansatz_eval(s, eq, v) == doctest::Approx(equilibrium_distribution(eq, v)).epsilon(1e-13));
        }
    }
}

TEST_CASE("quadrature rules agree on a Gaussian") {
    const EquilibriumParams eq{GasStatistics::Classical, 1.0, Vec3::Zero(), 1.0, 1.0};
    std::vector<Selector> sel{{{0, 0, 0}, 0, 1.0}, {{2, 0, 0}, 0, 1.0}, {{0, 0, 0}, 2, 1.0}};
    QuadratureOptions gl;
    gl.rule = QuadratureRule::GaussLegendre;
    const auto f = [&](const Vec3& v) { return equilibrium_distribution(eq, v); };
    const auto a = moment_quadrature(f, eq, sel), b = moment_quadrature(f, eq, sel, gl);
    const double norm = std::pow(2.0 * std::numbers::pi, 1.5);
    CHECK(a[0] == doctest::Approx(norm).epsilon(1e-10));
    CHECK(a[1] == doctest::Approx(norm).epsilon(1e-10));
    CHECK(a[2] == doctest::Approx(15.0 * norm).epsilon(1e-10));
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-8));

    QuadratureOptions tight;
    tight.nodes = 8;
    tight.max_nodes = 8;
    tight.tolerance = 1e-14;
    CHECK_THROWS_AS(moment_quadrature(f, eq, sel, tight), QuadratureNotConverged);
}
