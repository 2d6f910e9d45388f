#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgrad/io.hpp"

namespace qgrad {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst value seen
    double threshold = 0.0;  // bound it is compared against
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    int hyperbolicity_samples = 10000;  // per statistics
    int closure_samples = 100;          // per statistics
    int grid_points = 401;              // per axis of the 1D region scans
    int solver_cells = 400;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    double seconds = 0.0;

    bool passed() const;
};

const std::vector<std::string>& verify_suite_names();
// One report per suite; "all" runs every suite in order. Throws DomainError for unknown names.
std::vector<VerifyReport> run_verify(const std::string& suite, const VerifyOptions& opt = {});
VerifyReport run_verify_suite(const std::string& suite, const VerifyOptions& opt = {});

// Individual checks, grouped into the suites above and reused by the acceptance runner.
std::vector<VerifyCheck> check_polylog_values();
VerifyCheck check_equilibrium_spectrum();
VerifyCheck check_classical_quartic_roots();
VerifyCheck check_perturbed_char_poly(const VerifyOptions& opt);
VerifyCheck check_equilibrium_on_boundary();
std::vector<VerifyCheck> check_cross_section(const VerifyOptions& opt);
std::vector<VerifyCheck> check_region_trends(const VerifyOptions& opt);
VerifyCheck check_annihilation();
VerifyCheck check_fermion_crossing();
VerifyCheck check_random_hyperbolicity(const VerifyOptions& opt);
VerifyCheck check_linearization();
std::vector<VerifyCheck> check_nsf();
std::vector<VerifyCheck> check_closure_quadrature(const VerifyOptions& opt);
std::vector<VerifyCheck> check_solver(const VerifyOptions& opt);

Json to_json(const VerifyCheck& c);
Json to_json(const VerifyReport& r);

}  // namespace qgrad
