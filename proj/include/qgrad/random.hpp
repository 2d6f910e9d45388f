#pragma once

#include <cstdint>

#include "qgrad/linalg.hpp"
#include "qgrad/polylog.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

// Counter-based generator: the k-th draw of stream s under seed is a pure
// function of (seed, s, k), so sequences are identical on every platform.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() { return mix(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

Vec3 random_unit_vector(CounterRng& rng);
Mat3 random_rotation(CounterRng& rng);

struct RandomStateOptions {
    double T_min = 0.5, T_max = 2.0;
    double u_max = 1.0;
    double anisotropy_floor = 0.05;  // smallest principal stress weight before normalisation
    double q_hat_max = 1.5;           // |q_i| / (p sqrt(T)) bound per component
    double z_min = 0.0, z_max = 0.0;  // 0 selects the per-statistics default range
};

// Fugacity drawn log-uniformly from the options range or the default for the statistics.
double random_fugacity(GasStatistics theta, CounterRng& rng, const RandomStateOptions& opt = {});

struct RandomState {
    EquilibriumParams eq;  // fit of the state's (rho, p), velocity included
    MomentState13 state;
};

RandomState random_admissible_state(GasStatistics theta, CounterRng& rng, const RandomStateOptions& opt = {});

}  // namespace qgrad
