#pragma once

#include <Eigen/Dense>

namespace qgrad {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec13 = Eigen::Matrix<double, 13, 1>;
using Mat13 = Eigen::Matrix<double, 13, 13>;

// Slots of the 13-moment vector w.
namespace slot {
inline constexpr int rho = 0;
inline constexpr int u1 = 1, u2 = 2, u3 = 3;
inline constexpr int p11 = 4, p12 = 5, p13 = 6, p22 = 7, p23 = 8, p33 = 9;
inline constexpr int q1 = 10, q2 = 11, q3 = 12;

inline constexpr int u(int i) { return 1 + i; }
inline constexpr int q(int i) { return 10 + i; }
// Slot of p_ij for 0-based i, j.
inline constexpr int p(int i, int j) {
    constexpr int table[3][3] = {{4, 5, 6}, {5, 7, 8}, {6, 8, 9}};
    return table[i][j];
}
}  // namespace slot

// Slots of the 1D reduction (rho, u1, p11, q1, p).
namespace slot5 {
inline constexpr int rho = 0, u1 = 1, p11 = 2, q1 = 3, p = 4;
}

inline constexpr const char* kSlotNames13[13] = {"rho", "u1",  "u2",  "u3",  "p11", "p12", "p13",
                                                 "p22", "p23", "p33", "q1",  "q2",  "q3"};
inline constexpr const char* kSlotNames5[5] = {"rho", "u1", "p11", "q1", "p"};

}  // namespace qgrad
