// Acceptance runner: one line per criterion on stdout, the underlying checks on stderr.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qgrad/verify.hpp"

using namespace qgrad;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<std::vector<VerifyCheck>()> checks;
};

std::string compact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

int main() {
    const VerifyOptions opt;  // seed 0, all hardware threads, full sample counts
    const std::vector<Criterion> criteria = {
        {1, "equilibrium spectrum matches the closed form",
         [] { return std::vector<VerifyCheck>{check_equilibrium_spectrum(), check_classical_quartic_roots()}; }},
        {2, "perturbed characteristic polynomial matches the brute-force one",
         [&] { return std::vector<VerifyCheck>{check_perturbed_char_poly(opt)}; }},
        {3, "equilibrium lies on the boundary of the Grad hyperbolic region",
         [&] {
             std::vector<VerifyCheck> out{check_equilibrium_on_boundary()};
             for (VerifyCheck& c : check_cross_section(opt)) out.push_back(std::move(c));
             return out;
         }},
        {4, "1D region trends and symmetry", [&] { return check_region_trends(opt); }},
        {5, "global hyperbolicity of the regularized system",
         [&] {
             return std::vector<VerifyCheck>{check_random_hyperbolicity(opt), check_annihilation(),
                                             check_fermion_crossing()};
         }},
        {6, "linearization at equilibrium", [] { return std::vector<VerifyCheck>{check_linearization()}; }},
        {7, "Navier-Stokes-Fourier limit", [] { return check_nsf(); }},
        {8, "closure agrees with quadrature of the ansatz", [&] { return check_closure_quadrature(opt); }},
        {9, "solver properties", [&] { return check_solver(opt); }},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<VerifyCheck> checks;
        std::string error;
        try {
            checks = c.checks();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.empty();
        std::string measured;
        for (const VerifyCheck& v : checks) {
            ok = ok && v.passed;
            if (!measured.empty()) measured += ", ";
            measured += compact(v.measured);
            std::fprintf(stderr, "  [%d] %s %s: %s vs %s%s%s\n", c.number, v.passed ? "ok  " : "FAIL", v.name.c_str(),
                         compact(v.measured).c_str(), compact(v.threshold).c_str(), v.detail.empty() ? "" : "; ",
                         v.detail.c_str());
        }
        if (!error.empty()) measured = "error: " + error;
        std::printf("criterion %d: %s %s (measured %s; %.1f s)\n", c.number, ok ? "PASS" : "FAIL",
                    c.description.c_str(), measured.c_str(), seconds);
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
