#include "qgrad/matrices.hpp"

#include <cmath>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

void check_axis(int axis) {
    if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1 or 2");
}

struct Context {
    PolylogSet li;
    LiDerivedCoeffs k;
    double rho, p;
    Mat3 sigma;
};

Context make_context(const MomentState13& s, const EquilibriumParams& eq) {
    Context c{eval_polylog_set(eq.z, eq.theta), {}, s.rho, s.pressure(), s.stress()};
    c.k = derive_coeffs(c.li, eq.T);
    return c;
}

// Transport rows shared by every model: mass, momentum and the pressure tensor.
void add_shared_rows(Mat13& A, const MomentState13& s, int d, bool grad_pressure_rows) {
    A += s.u[d] * Mat13::Identity();
    A(slot::rho, slot::u(d)) += s.rho;
    for (int i = 0; i < 3; ++i) A(slot::u(i), slot::p(i, d)) += 1.0 / s.rho;
    if (!grad_pressure_rows) return;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const int r = slot::p(i, j);
            A(r, slot::u(d)) += s.p_ij(i, j);
            A(r, slot::u(j)) += s.p_ij(i, d);
            A(r, slot::u(i)) += s.p_ij(j, d);
            A(r, slot::q(d)) += 0.4 * kron(i, j);
            A(r, slot::q(j)) += 0.4 * kron(i, d);
            A(r, slot::q(i)) += 0.4 * kron(j, d);
        }
    }
}

// Pressure-tensor rows of the regularized systems, written as the energy
// equation plus the stress equation with the cubic closure projected out.
void add_regularized_pressure_rows(Mat13& A, const MomentState13& s, const Context& c, int d) {
    Vec13 energy = Vec13::Zero();
    energy[slot::u(d)] += c.p;
    for (int k = 0; k < 3; ++k) energy[slot::u(k)] += (2.0 / 3.0) * s.p_ij(k, d);
    energy[slot::q(d)] += 2.0 / 3.0;

    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            Vec13 row = Vec13::Zero();
            for (int k = 0; k < 3; ++k) {
                const double S = 0.5 * (kron(j, d) * kron(k, i) + kron(i, d) * kron(k, j)) - kron(i, j) * kron(k, d) / 3.0;
                row[slot::u(k)] += 2.0 * c.p * S;
                row[slot::q(k)] += 0.8 * S;
                row[slot::u(k)] +=
                    0.8 * (0.5 * (c.sigma(k, i) * kron(j, d) + c.sigma(k, j) * kron(i, d)) - kron(i, j) * c.sigma(k, d) / 3.0);
            }
            A.row(slot::p(i, j)) += (row + kron(i, j) * energy).transpose();
        }
    }
}

// Heat-flux rows shared by the two regularizations; the pressure gradient
// coefficients (grho on rho, gp on each diagonal p) distinguish them.
void add_regularized_heat_rows(Mat13& A, const Context& c, int d, double grho, double gp) {
    for (int i = 0; i < 3; ++i) {
        const int r = slot::q(i);
        for (int j = 0; j < 3; ++j) A(r, slot::p(j, d)) += -(c.k.frakD * c.p * kron(i, j) + c.sigma(i, j)) / c.rho;
        if (i == d) {
            A(r, slot::rho) += grho;
            for (int k = 0; k < 3; ++k) A(r, slot::p(k, k)) += gp / 3.0;
        }
        A(r, slot::p(i, d)) += c.k.m4;
        for (int k = 0; k < 3; ++k) A(r, slot::p(k, k)) += -c.k.m4 * kron(i, d) / 3.0;
    }
}

template <typename AxisFn>
Mat13 combine_axes(const Vec3& n, AxisFn&& fn) {
    Mat13 out = Mat13::Zero();
    for (int d = 0; d < 3; ++d)
        if (n[d] != 0.0) out += n[d] * fn(d);
    return out;
}

}  // namespace

const char* system_kind_name(SystemKind kind) {
    switch (kind) {
        case SystemKind::Grad13: return "grad";
        case SystemKind::TrivialR13: return "trivial";
        case SystemKind::FinalR13: return "regularized";
    }
    return "?";
}

SystemKind parse_system_kind(const std::string& name) {
    if (name == "grad" || name == "Grad13") return SystemKind::Grad13;
    if (name == "trivial" || name == "TrivialR13") return SystemKind::TrivialR13;
    if (name == "regularized" || name == "final" || name == "FinalR13") return SystemKind::FinalR13;
    throw DomainError("unknown system kind '" + name + "'");
}

EquilibriumParams equilibrium_of(const MomentState13& s, GasStatistics theta, double hhat) {
    EquilibriumParams eq = fit_equilibrium(s.rho, s.pressure(), theta, hhat);
    eq.u = s.u;
    return eq;
}

EquilibriumParams equilibrium_of(const MomentState5& s, GasStatistics theta, double hhat) {
    EquilibriumParams eq = fit_equilibrium(s.rho, s.p, theta, hhat);
    eq.u = Vec3(s.u1, 0.0, 0.0);
    return eq;
}

Mat5 assemble_A5_grad(const MomentState5& s, const EquilibriumParams& eq) {
    s.validate();
    const PolylogSet li = eval_polylog_set(eq.z, eq.theta);
    const A5Coeffs a = a5_coeffs(s, li, eq.T);
    Mat5 A;
    // clang-format off
    A << s.u1,  s.rho,                      0.0,         0.0,       0.0,
         0.0,   s.u1,                       1.0 / s.rho, 0.0,       0.0,
         0.0,   3.0 * s.p11,                s.u1,        1.2,       0.0,
         -a.a1, 3.2 * s.q1,                 a.a2,        s.u1,      a.a3,
         0.0,   s.p + 2.0 / 3.0 * s.p11,    0.0,         2.0 / 3.0, s.u1;
    // clang-format on
    return A;
}

Mat13 assemble_A_grad_3d(const MomentState13& s, const EquilibriumParams& eq, int d) {
    check_axis(d);
    const Context c = make_context(s, eq);
    Mat13 A = Mat13::Zero();
    add_shared_rows(A, s, d, true);

    // Derivatives of Delta_id = 5 delta_id p T r75 + 7 sigma_id T r97.
    const RatioGradient g75 = temperature_ratio_gradient(c.li, eq.T, c.rho, c.p, 7, 5);
    const RatioGradient g97 = temperature_ratio_gradient(c.li, eq.T, c.rho, c.p, 9, 7);

    for (int i = 0; i < 3; ++i) {
        const int r = slot::q(i);
        A(r, slot::u(d)) += s.q[i];
        A(r, slot::u(i)) += s.q[d];
        for (int l = 0; l < 3; ++l) {
            A(r, slot::u(l)) += 0.4 * (kron(i, l) * s.q[d] + kron(i, d) * s.q[l] + kron(l, d) * s.q[i]);
            A(r, slot::p(l, d)) += -(2.5 * c.p * kron(i, l) + c.sigma(i, l)) / c.rho;
        }
        // 0.5 dDelta_id/dw
        const double did = kron(i, d);
        A(r, slot::rho) += 0.5 * (5.0 * did * c.p * g75.d_rho + 7.0 * c.sigma(i, d) * g97.d_rho);
        for (int k = 0; k < 3; ++k) {
            const double dp = 1.0 / 3.0;  // dp/dp_kk
            A(r, slot::p(k, k)) += 0.5 * (5.0 * did * dp * (g75.value + c.p * g75.d_p) +
                                          7.0 * c.sigma(i, d) * dp * g97.d_p - 7.0 * did * dp * g97.value);
        }
        A(r, slot::p(i, d)) += 0.5 * 7.0 * g97.value;
    }
    return A;
}

Mat13 assemble_A_grad_3d(const MomentState13& s, const EquilibriumParams& eq, const Vec3& n) {
    return combine_axes(n, [&](int d) { return assemble_A_grad_3d(s, eq, d); });
}

Mat13 assemble_D(const MomentState13& s, const EquilibriumParams& eq) {
    const Context c = make_context(s, eq);
    const double b = c.k.frakB_high;
    Mat13 D = Mat13::Identity();
    for (int i = 0; i < 3; ++i) D(slot::u(i), slot::u(i)) = c.rho;
    for (int k = 0; k < 3; ++k) {
        const int r = slot::p(k, k);
        D.row(r).setZero();
        D(r, slot::rho) = -(c.p / c.rho) * b;
        for (int m = 0; m < 3; ++m) D(r, slot::p(m, m)) = m == k ? (b + 2.0) / 3.0 : (b - 1.0) / 3.0;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) D(slot::q(i), slot::u(j)) = c.sigma(i, j) + c.k.frakD * c.p * kron(i, j);
    return D;
}

Mat13 axis_permutation(int axis) {
    check_axis(axis);
    int s[3] = {0, 1, 2};
    std::swap(s[0], s[axis]);
    Mat13 P = Mat13::Zero();
    P(slot::rho, slot::rho) = 1.0;
    for (int i = 0; i < 3; ++i) {
        P(slot::u(s[i]), slot::u(i)) = 1.0;
        P(slot::q(s[i]), slot::q(i)) = 1.0;
        for (int j = i; j < 3; ++j) P(slot::p(s[i], s[j]), slot::p(i, j)) = 1.0;
    }
    return P;
}

Mat13 assemble_M(const EquilibriumParams& eq, int axis) {
    check_axis(axis);
    const PolylogSet li = eval_polylog_set(eq.z, eq.theta);
    const LiDerivedCoeffs k = derive_coeffs(li, eq.T);
    const double b = k.frakB_high;
    Mat13 M = Mat13::Zero();
    M(0, 1) = 1.0;
    M(1, 0) = k.p_over_rho;
    M(1, 4) = 1.0 + k.m2;
    M(1, 7) = k.m2;
    M(1, 9) = k.m2;
    M(2, 5) = 1.0;
    M(3, 6) = 1.0;
    M(4, 1) = 2.0 * k.m1;
    M(4, 10) = 2.0 * b / 3.0 + 8.0 / 15.0;
    M(5, 2) = k.m1;
    M(5, 11) = 0.4;
    M(6, 3) = k.m1;
    M(6, 12) = 0.4;
    M(7, 10) = 2.0 * b / 3.0 - 4.0 / 15.0;
    M(9, 10) = 2.0 * b / 3.0 - 4.0 / 15.0;
    M(10, 0) = k.m5;
    M(10, 4) = k.m3 + 2.0 / 3.0 * k.m4;
    M(10, 7) = k.m3 - k.m4 / 3.0;
    M(10, 9) = k.m3 - k.m4 / 3.0;
    M(11, 5) = k.m4;
    M(12, 6) = k.m4;
    if (axis == 0) return M;
    const Mat13 P = axis_permutation(axis);
    return P * M * P.transpose();
}

Mat13 assemble_M(const EquilibriumParams& eq, const Vec3& n) {
    return combine_axes(n, [&](int d) { return assemble_M(eq, d); });
}

SystemMatrices assemble_A_regularized(const MomentState13& s, const EquilibriumParams& eq, const Vec3& n) {
    SystemMatrices out;
    out.kind = SystemKind::FinalR13;
    out.direction = n;
    const Mat13 D = assemble_D(s, eq);
    const Mat13 M = assemble_M(eq, n);
    Eigen::PartialPivLU<Mat13> lu(D);
    if (!(std::abs(lu.determinant()) > 1e-300) || !(lu.rcond() > 1e-14)) throw SingularD("D is numerically singular");
    const double un = s.u.dot(n);
    const Mat13 shifted = M + un * Mat13::Identity();
    out.A = lu.solve(shifted * D);
    out.D = D;
    out.M = M;
    out.B = D * out.A - un * D;
    out.factorization_residual = (D * out.A - shifted * D).cwiseAbs().maxCoeff() / D.cwiseAbs().maxCoeff();
    return out;
}

SystemMatrices assemble_A_regularized(const MomentState13& s, const EquilibriumParams& eq, int axis) {
    check_axis(axis);
    return assemble_A_regularized(s, eq, Vec3::Unit(axis));
}

Mat13 assemble_A_trivial(const MomentState13& s, const EquilibriumParams& eq, int d) {
    check_axis(d);
    const Context c = make_context(s, eq);
    Mat13 A = Mat13::Zero();
    add_shared_rows(A, s, d, false);
    add_regularized_pressure_rows(A, s, c, d);
    // Whole-expansion projection: the pressure gradient enters through a single
    // bracket C instead of the exact derivative of T li7/li5.
    const double l1 = c.li.li(1), l3 = c.li.li(3), l5 = c.li.li(5), l7 = c.li.li(7);
    const double C = (7.0 * l7 / l5 - 3.0 * l3 / l1) / (5.0 - 3.0 * l3 * l3 / (l5 * l1)) - l7 / l5;
    const double gp = 2.5 * eq.T * C;
    add_regularized_heat_rows(A, c, d, -gp * c.p / c.rho, gp);
    return A;
}

Mat13 assemble_A_trivial(const MomentState13& s, const EquilibriumParams& eq, const Vec3& n) {
    return combine_axes(n, [&](int d) { return assemble_A_trivial(s, eq, d); });
}

SystemMatrices assemble_system(SystemKind kind, const MomentState13& s, const EquilibriumParams& eq, const Vec3& n) {
    if (kind == SystemKind::FinalR13) return assemble_A_regularized(s, eq, n);
    SystemMatrices out;
    out.kind = kind;
    out.direction = n;
    out.A = kind == SystemKind::Grad13 ? assemble_A_grad_3d(s, eq, n) : assemble_A_trivial(s, eq, n);
    return out;
}

Vec13 qbgk_source(const MomentState13& s, double tau) {
    if (!(tau > 0.0)) throw DomainError("relaxation time must be positive");
    Vec13 Q = Vec13::Zero();
    const Mat3 sigma = s.stress();
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) Q[slot::p(i, j)] = -sigma(i, j) / tau;
        Q[slot::q(i)] = -s.q[i] / tau;
    }
    return Q;
}

Eigen::Matrix<double, 13, 5> lift_jacobian() {
    Eigen::Matrix<double, 13, 5> J = Eigen::Matrix<double, 13, 5>::Zero();
    J(slot::rho, slot5::rho) = 1.0;
    J(slot::u1, slot5::u1) = 1.0;
    J(slot::p11, slot5::p11) = 1.0;
    J(slot::q1, slot5::q1) = 1.0;
    for (int r : {slot::p22, slot::p33}) {
        J(r, slot5::p11) = -0.5;
        J(r, slot5::p) = 1.5;
    }
    return J;
}

Eigen::Matrix<double, 5, 13> restrict_jacobian() {
    Eigen::Matrix<double, 5, 13> L = Eigen::Matrix<double, 5, 13>::Zero();
    L(slot5::rho, slot::rho) = 1.0;
    L(slot5::u1, slot::u1) = 1.0;
    L(slot5::p11, slot::p11) = 1.0;
    L(slot5::q1, slot::q1) = 1.0;
    for (int c : {slot::p11, slot::p22, slot::p33}) L(slot5::p, c) = 1.0 / 3.0;
    return L;
}

Mat5 reduce_to_1d(SystemKind kind, const MomentState5& s, const EquilibriumParams& eq) {
    s.validate();
    const SystemMatrices sys = assemble_system(kind, s.lift(), eq, Vec3::UnitX());
    return restrict_jacobian() * sys.A * lift_jacobian();
}

}  // namespace qgrad
