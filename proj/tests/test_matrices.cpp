#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles/final_system_oracle.hpp"
#include "oracles/flux_oracle.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/matrices.hpp"
#include "qgrad/random.hpp"
#include "qgrad/spectral.hpp"

using namespace qgrad;

namespace {

constexpr GasStatistics kAll[] = {GasStatistics::Boson, GasStatistics::Classical, GasStatistics::Fermion};

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

RandomState sample(GasStatistics theta, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    return random_admissible_state(theta, rng);
}

// Linear action of a rotation on the moment vector: rho scalar, u and q vectors, p_ij tensor.
Mat13 rotation_action(const Mat3& R) {
    Mat13 T;
    for (int k = 0; k < 13; ++k) {
        MomentState13 s = MomentState13::from_vector(Vec13::Unit(k));
        s.u = R * s.u;
        s.q = R * s.q;
        s.p_ij = R * s.p_ij * R.transpose();
        T.col(k) = s.to_vector();
    }
    return T;
}

MomentState13 rotate(const MomentState13& s, const Mat3& R) {
    return MomentState13::from_vector(rotation_action(R) * s.to_vector());
}

}  // namespace

TEST_CASE("system kind names round trip") {
    for (SystemKind k : {SystemKind::Grad13, SystemKind::TrivialR13, SystemKind::FinalR13})
        CHECK(parse_system_kind(system_kind_name(k)) == k);
    CHECK_THROWS_AS(parse_system_kind("burnett"), DomainError);
}

TEST_CASE("Grad matrix equals the Jacobian of the conservative fluxes") {
    for (GasStatistics theta : kAll) {
        for (std::uint64_t k = 0; k < 4; ++k) {
            const RandomState rs = sample(theta, 21, k);
            for (int d = 0; d < 3; ++d) {
                const Mat13 A = assemble_A_grad_3d(rs.state, rs.eq, d);
                const Mat13 ref = oracle::grad_matrix_by_differences(rs.state, d, theta);
                CAPTURE(theta_of(theta));
                CAPTURE(d);
                CHECK(max_abs(A - ref) < 1e-7 * max_abs(ref));
            }
        }
    }
}

TEST_CASE("regularized matrix matches the directly written final system") {
    for (GasStatistics theta : kAll) {
        for (std::uint64_t k = 0; k < 4; ++k) {
            const RandomState rs = sample(theta, 22, k);
            const SystemMatrices sys = assemble_A_regularized(rs.state, rs.eq, 0);
            const Mat13 ref = oracle::final_system_matrix_x(rs.state, theta);
            CAPTURE(theta_of(theta));
            CHECK(max_abs(sys.A - ref) < 1e-8 * max_abs(ref));
        }
    }
}

TEST_CASE("regularized factorization D A = (M + u_n) D holds and D stays invertible") {
    for (GasStatistics theta : kAll) {
        for (std::uint64_t k = 0; k < 20; ++k) {
            const RandomState rs = sample(theta, 23, k);
            CounterRng rng(23, 100 + k);
            const Vec3 n = random_unit_vector(rng);
            SystemMatrices sys;
            REQUIRE_NOTHROW(sys = assemble_A_regularized(rs.state, rs.eq, n));
            CHECK(sys.factorization_residual < 1e-12);
            CHECK(std::abs(sys.D->determinant()) > 0.0);
            const Mat13 B = *sys.B;
            CHECK(max_abs(B - *sys.M * *sys.D) < 1e-12 * max_abs(B));
        }
    }
}

TEST_CASE("matrices transform covariantly under rotations") {
    for (GasStatistics theta : kAll) {
        for (std::uint64_t k = 0; k < 5; ++k) {
            const RandomState rs = sample(theta, 24, k);
            CounterRng rng(24, 50 + k);
            const Mat3 R = random_rotation(rng);
            const Vec3 n = random_unit_vector(rng);
            const Mat13 T = rotation_action(R);
            const MomentState13 rotated = rotate(rs.state, R);
            const EquilibriumParams eq_rot = equilibrium_of(rotated, theta);
            for (SystemKind kind : {SystemKind::Grad13, SystemKind::TrivialR13, SystemKind::FinalR13}) {
                const Mat13 A = assemble_system(kind, rs.state, rs.eq, n).A;
                const Mat13 Ar = assemble_system(kind, rotated, eq_rot, R * n).A;
                CAPTURE(system_kind_name(kind));
                CHECK(max_abs(Ar * T - T * A) < 1e-10 * max_abs(A));
            }
        }
    }
}

TEST_CASE("axis arguments agree with unit directions and permutations") {
    const RandomState rs = sample(GasStatistics::Fermion, 25, 0);
    for (int d = 0; d < 3; ++d) {
        CHECK(max_abs(assemble_A_grad_3d(rs.state, rs.eq, d) - assemble_A_grad_3d(rs.state, rs.eq, Vec3::Unit(d))) ==
              0.0);
        const Mat13 P = axis_permutation(d);
        CHECK(max_abs(P * P - Mat13::Identity()) == 0.0);
    }
    CHECK_THROWS_AS(assemble_M(rs.eq, 3), DomainError);
}

TEST_CASE("Galilean shift adds u_n to the spectrum") {
    for (GasStatistics theta : kAll) {
        RandomState rs = sample(theta, 26, 0);
        const Vec3 n(0.6, 0.0, 0.8), U(0.3, -1.2, 0.7);
        for (SystemKind kind : {SystemKind::Grad13, SystemKind::TrivialR13, SystemKind::FinalR13}) {
            const Mat13 A = assemble_system(kind, rs.state, rs.eq, n).A;
            MomentState13 moved = rs.state;
            moved.u += U;
            EquilibriumParams eq = rs.eq;
            eq.u = moved.u;
            const Mat13 B = assemble_system(kind, moved, eq, n).A;
            CHECK(max_abs(B - A - U.dot(n) * Mat13::Identity()) < 1e-12 * max_abs(A));
        }
    }
}

TEST_CASE("1D Grad matrix is the reduction of the 13-moment Grad matrix") {
    CounterRng rng(27, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const GasStatistics theta = kAll[trial % 3];
        const EquilibriumParams base{theta, random_fugacity(theta, rng), Vec3::Zero(), rng.uniform(0.5, 2.0), 1.0};
        const RhoP rp = equilibrium_rho_p(base);
        MomentState5 s{rp.rho, rng.uniform(-1.0, 1.0), rp.p * (1.0 + rng.uniform(-0.9, 1.9)), 0.0, rp.p};
        s.q1 = rng.uniform(-2.0, 2.0) * rp.p * std::sqrt(base.T);
        const EquilibriumParams eq = equilibrium_of(s, theta);
        const Mat5 A5 = assemble_A5_grad(s, eq);
        CHECK(max_abs(reduce_to_1d(SystemKind::Grad13, s, eq) - A5) < 1e-11 * max_abs(A5));
    }
    CHECK(max_abs(restrict_jacobian() * lift_jacobian() - Mat5::Identity()) == 0.0);
}

TEST_CASE("all three systems coincide at equilibrium for classical gases") {
    const EquilibriumParams eq{GasStatistics::Classical, 0.7, Vec3(0.2, 0.0, -0.1), 1.4, 1.0};
    const MomentState13 s = MomentState13::equilibrium(eq);
    const EquilibriumParams fit = equilibrium_of(s, eq.theta);
    for (int d = 0; d < 3; ++d) {
        const Mat13 G = assemble_A_grad_3d(s, fit, d);
        CHECK(max_abs(assemble_A_trivial(s, fit, d) - G) < 1e-12 * max_abs(G));
        CHECK(max_abs(assemble_A_regularized(s, fit, d).A - G) < 1e-12 * max_abs(G));
    }
}

TEST_CASE("regularized system equals Grad at quantum equilibria while the trivial one does not") {
    for (GasStatistics theta : {GasStatistics::Boson, GasStatistics::Fermion}) {
        const EquilibriumParams eq{theta, 0.8, Vec3(0.1, 0.2, 0.3), 0.9, 1.0};
        const MomentState13 s = MomentState13::equilibrium(eq);
        const EquilibriumParams fit = equilibrium_of(s, theta);
        const Mat13 G = assemble_A_grad_3d(s, fit, 0);
        CHECK(max_abs(assemble_A_regularized(s, fit, 0).A - G) < 1e-12 * max_abs(G));
        CHECK(max_abs(assemble_A_trivial(s, fit, 0) - G) > 1e-4 * max_abs(G));
    }
}

TEST_CASE("M has the heat-flux couplings of the pressure rows") {
    const EquilibriumParams eq{GasStatistics::Fermion, 3.0, Vec3::Zero(), 1.0, 1.0};
    const LiDerivedCoeffs k = derive_coeffs(eval_polylog_set(eq.z, eq.theta), eq.T);
    const Mat13 M = assemble_M(eq, 0);
    CHECK(M(slot::p11, slot::q1) == doctest::Approx(2.0 * k.frakB_high / 3.0 + 8.0 / 15.0));
    CHECK(M(slot::p22, slot::q1) == doctest::Approx(2.0 * k.frakB_high / 3.0 - 4.0 / 15.0));
    CHECK(M(slot::p33, slot::q1) == M(slot::p22, slot::q1));
    // Trace of the pressure rows gives the energy equation: (2/3) d q1.
    CHECK((M(slot::p11, slot::q1) + M(slot::p22, slot::q1) + M(slot::p33, slot::q1)) / 3.0 ==
          doctest::Approx(2.0 * k.frakB_high / 3.0));
}

TEST_CASE("equilibrium spectrum of the regularized matrix is u1 plus sqrt(T) times the closed form") {
    for (GasStatistics theta : kAll) {
        const EquilibriumParams eq{theta, 0.6, Vec3(0.4, 0.0, 0.0), 2.25, 1.0};
        const MomentState13 s = MomentState13::equilibrium(eq);
        const SystemMatrices sys = assemble_A_regularized(s, equilibrium_of(s, theta), 0);
        Eigen::VectorXcd ev = Eigen::EigenSolver<Mat13>(*sys.M).eigenvalues();
        std::vector<double> got;
        for (int i = 0; i < 13; ++i) got.push_back(ev[i].real());
        std::sort(got.begin(), got.end());
        const EquilibriumCharPoly cp = char_poly_equilibrium(eq.z, theta);
        for (int i = 0; i < 13; ++i) CHECK(got[i] == doctest::Approx(1.5 * cp.eigenvalues_hat[i]).scale(1.0).epsilon(1e-6));
        // A = D^-1 (M + u1) D shares the shifted spectrum.
        const Eigen::VectorXcd ea = Eigen::EigenSolver<Mat13>(sys.A).eigenvalues();
        double trace = 0.0;
        for (int i = 0; i < 13; ++i) trace += ea[i].real();
        CHECK(trace == doctest::Approx(13 * 0.4 + sys.M->trace()).epsilon(1e-10));
    }
}

TEST_CASE("classical coefficient values") {
    for (double T : {0.5, 1.0, 3.0}) {
        const LiDerivedCoeffs k = derive_coeffs(eval_polylog_set(0.4, GasStatistics::Classical), T);
        CHECK(k.frakB == doctest::Approx(1.0));
        CHECK(k.frakB_low == doctest::Approx(1.0));
        CHECK(k.frakB_high == doctest::Approx(1.0));
        CHECK(k.frakD == doctest::Approx(0.0).scale(1.0));
        CHECK(k.m1 == doctest::Approx(T));
        CHECK(k.m2 == doctest::Approx(0.0).scale(1.0));
        CHECK(k.m3 == doctest::Approx(5.0 * T / 6.0));
        CHECK(k.m4 == doctest::Approx(T));
        CHECK(k.m5 == doctest::Approx(0.0).scale(1.0));
        CHECK(k.p_over_rho == doctest::Approx(T));
    }
}

TEST_CASE("trivial regularization carries (5/2) T on the pressure gradient of q for classical gases") {
    const EquilibriumParams eq{GasStatistics::Classical, 0.5, Vec3::Zero(), 1.7, 1.0};
    const MomentState13 s = MomentState13::equilibrium(eq);
    const EquilibriumParams fit = equilibrium_of(s, eq.theta);
    const Mat13 A = assemble_A_trivial(s, fit, 0);
    // d q1/dt + ... + (5/2) T dp/dx - (5/2) p/rho T drho/dx shows up through the diagonal p slots.
    const double on_p = A(slot::q1, slot::p11) + A(slot::q1, slot::p22) + A(slot::q1, slot::p33);
    CHECK(on_p == doctest::Approx(2.5 * fit.T).epsilon(1e-12));
}

TEST_CASE("relaxation source") {
    const RandomState rs = sample(GasStatistics::Fermion, 28, 0);
    const Vec13 Q = qbgk_source(rs.state, 0.5);
    for (int c : {slot::rho, slot::u1, slot::u2, slot::u3}) CHECK(Q[c] == 0.0);
    CHECK(std::abs(Q[slot::p11] + Q[slot::p22] + Q[slot::p33]) < 1e-14 * rs.state.pressure());
    for (int i = 0; i < 3; ++i) CHECK(Q[slot::q(i)] == doctest::Approx(-2.0 * rs.state.q[i]));
    CHECK(Q[slot::p12] == doctest::Approx(-2.0 * rs.state.p_ij(0, 1)));
    CHECK_THROWS_AS(qbgk_source(rs.state, 0.0), DomainError);
}
