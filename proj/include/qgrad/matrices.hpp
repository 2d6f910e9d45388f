#pragma once

#include <optional>

#include "qgrad/coefficients.hpp"
#include "qgrad/linalg.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

enum class SystemKind { Grad13, TrivialR13, FinalR13 };

const char* system_kind_name(SystemKind kind);
SystemKind parse_system_kind(const std::string& name);  // grad | trivial | regularized

struct SystemMatrices {
    SystemKind kind = SystemKind::Grad13;
    Vec3 direction = Vec3::UnitX();
    Mat13 A = Mat13::Zero();
    std::optional<Mat13> D, M, B;
    double factorization_residual = 0.0;  // |D A - (M + u_n I) D|_max / |D|_max, FinalR13 only
};

// Equilibrium fitted to the state's (rho, p), carrying the state's velocity.
EquilibriumParams equilibrium_of(const MomentState13& state, GasStatistics theta, double hhat = 1.0);
EquilibriumParams equilibrium_of(const MomentState5& state, GasStatistics theta, double hhat = 1.0);

// All assembly routines expect eq to be the fit of the state's (rho, p).
// Axis arguments are 0-based.
Mat5 assemble_A5_grad(const MomentState5& state, const EquilibriumParams& eq);
Mat13 assemble_A_grad_3d(const MomentState13& state, const EquilibriumParams& eq, int axis);
Mat13 assemble_A_grad_3d(const MomentState13& state, const EquilibriumParams& eq, const Vec3& n);
Mat13 assemble_D(const MomentState13& state, const EquilibriumParams& eq);
Mat13 assemble_M(const EquilibriumParams& eq, int axis);
Mat13 assemble_M(const EquilibriumParams& eq, const Vec3& n);
SystemMatrices assemble_A_regularized(const MomentState13& state, const EquilibriumParams& eq, int axis);
SystemMatrices assemble_A_regularized(const MomentState13& state, const EquilibriumParams& eq, const Vec3& n);
Mat13 assemble_A_trivial(const MomentState13& state, const EquilibriumParams& eq, int axis);
Mat13 assemble_A_trivial(const MomentState13& state, const EquilibriumParams& eq, const Vec3& n);

// Dispatch on kind along direction n.
SystemMatrices assemble_system(SystemKind kind, const MomentState13& state, const EquilibriumParams& eq,
                               const Vec3& n);

Vec13 qbgk_source(const MomentState13& state, double tau);

// Permutation of w induced by swapping spatial axes 0 and `axis`.
Mat13 axis_permutation(int axis);

// Tangent maps between the 13-moment vector and the 1D reduction.
Eigen::Matrix<double, 13, 5> lift_jacobian();
Eigen::Matrix<double, 5, 13> restrict_jacobian();

Mat5 reduce_to_1d(SystemKind kind, const MomentState5& state, const EquilibriumParams& eq);

}  // namespace qgrad
