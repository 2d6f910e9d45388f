// qgrad: command-line front end for the quantum 13-moment hyperbolicity toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error
// (reported on stdout as a JSON object with "error" and "message").

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgrad/analysis.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/io.hpp"
#include "qgrad/matrices.hpp"
#include "qgrad/solver1d.hpp"
#include "qgrad/spectral.hpp"
#include "qgrad/verify.hpp"

namespace {

using namespace qgrad;

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

const char* kConventions =
    "\nConventions:\n"
    "  theta: +1 Fermion, 0 classical, -1 Boson.\n"
    "  z: fugacity; Boson z in (0, 1), otherwise z > 0.\n"
    "  T: scaled temperature (RT-like), default 1. hhat = h/m, default 1.\n"
    "  li[s] denotes -theta Li_s(-theta z), which is z for theta = 0.\n"
    "  q1_hat = q1 / (p sqrt(T)), sigma_hat = sigma / p; eigenvalues are reported\n"
    "  as lambda, and lambda_hat = (lambda - u.n) / sqrt(T) where noted.\n"
    "  Floats are written with 17 significant digits.\n";

struct Common {
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--threads", c.threads, "Worker threads (0 = hardware parallelism)");
    cmd->add_option("--seed", c.seed, "Seed of the counter-based generator")->capture_default_str();
    cmd->footer(kConventions);
}

void emit(const Json& j, const std::string& out) {
    const std::string text = dump_json(j);
    if (!out.empty()) write_text_file(out, text);
    std::cout << text;
}

Vec3 parse_direction(const std::vector<double>& d) {
    if (d.size() != 3) throw DomainError("--dir needs three components nx,ny,nz");
    Vec3 n(d[0], d[1], d[2]);
    if (!(n.norm() > 0.0)) throw DomainError("--dir must be nonzero");
    return n.normalized();
}

struct WindowOptions {
    std::vector<double> window;
    int n = 401;
    std::string out;
    bool gnuplot = false;
};

void add_window(CLI::App* cmd, WindowOptions& w, const char* default_window) {
    cmd->add_option("--window", w.window, std::string("xmin,xmax,ymin,ymax (default ") + default_window + ")")
        ->delimiter(',')
        ->expected(4);
    cmd->add_option("--n", w.n, "Grid points per axis")->capture_default_str();
    cmd->add_option("--out", w.out, "Output prefix: PREFIX.csv and PREFIX.json")->required();
    cmd->add_flag("--gnuplot", w.gnuplot, "Also write PREFIX.gp, a gnuplot script for the map");
}

std::pair<GridAxis, GridAxis> make_axes(const WindowOptions& w, const char* yname, std::array<double, 4> fallback) {
    const std::array<double, 4> b =
        w.window.empty() ? fallback : std::array<double, 4>{w.window[0], w.window[1], w.window[2], w.window[3]};
    if (w.n < 1) throw DomainError("--n must be positive");
    if (!(b[1] >= b[0]) || !(b[3] >= b[2])) throw DomainError("window bounds must be ordered");
    return {GridAxis{"q1_hat", b[0], b[1], w.n}, GridAxis{yname, b[2], b[3], w.n}};
}

void write_grid(const RegionGrid& g, const WindowOptions& w) {
    const std::filesystem::path prefix(w.out);
    if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
    write_text_file(w.out + ".csv", region_csv(g));
    Json meta = grid_metadata(g);
    meta["csv"] = std::filesystem::path(w.out + ".csv").filename().string();
    if (w.gnuplot) {
        std::ostringstream gp;
        gp << "# classes: 0 strict, 1 degenerate, 2 non-diagonalizable, 3 complex, 4 inadmissible\n"
           << "set datafile separator ','\nset xlabel '" << g.spec.x.name << "'\nset ylabel '" << g.spec.y.name
           << "'\nset cbrange [0:4]\nset palette maxcolors 5\nset view map\n"
           << "plot '" << std::filesystem::path(w.out + ".csv").filename().string()
           << "' every ::1 using 1:2:3 with image notitle\n";
        write_text_file(w.out + ".gp", gp.str());
    }
    emit(meta, w.out + ".json");
}

ClassifyOptions classify_flags(CLI::App* cmd, ClassifyOptions& tol) {
    cmd->add_option("--rank-tol", tol.rank_tol, "Relative singular-value threshold for null vectors")->capture_default_str();
    cmd->add_option("--cluster-tol", tol.cluster_tol, "Relative eigenvalue clustering gap")->capture_default_str();
    cmd->add_option("--imag-tol", tol.imag_tol, "Relative imaginary part treated as complex")->capture_default_str();
    return tol;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, unsigned threads) {
    SimConfig cfg = sim_config_from_json(read_json_file(config_path));
    cfg.threads = threads;
    std::filesystem::create_directories(out_dir);
    const RunResult r = run(cfg);
    const std::filesystem::path dir(out_dir);
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
        write_text_file((dir / name).string(), snapshot_csv(r.snapshots[k], cfg));
    }
    write_text_file((dir / "ledger.csv").string(), ledger_csv(r.ledger));
    Json summary;
    summary["config"] = to_json(cfg);
    summary["steps"] = r.steps;
    summary["snapshots"] = r.snapshots.size();
    const LedgerRow &first = r.ledger.front(), &last = r.ledger.back();
    summary["mass_drift"] = (last.mass - first.mass) / first.mass;
    summary["energy_drift"] = (last.energy - first.energy) / first.energy;
    emit(summary, (dir / "summary.json").string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolicity analysis of quantum Grad and regularized 13-moment systems"};
    app.require_subcommand(1);
    app.footer(kConventions);

    // polylog
    Common polylog_common;
    int polylog_theta = 0;
    double polylog_z = 0.0;
    std::string polylog_out;
    auto* polylog = app.add_subcommand("polylog", "Print li[1/2..9/2] at one fugacity as JSON");
    polylog->add_option("--theta", polylog_theta, "Statistics: -1, 0 or 1")->required();
    polylog->add_option("--z", polylog_z, "Fugacity")->required();
    polylog->add_option("--out", polylog_out, "Also write the JSON to this file");
    add_common(polylog, polylog_common);

    // eigs
    Common eigs_common;
    std::string eigs_system = "grad", eigs_state, eigs_dump, eigs_out;
    int eigs_theta = 0;
    double eigs_z = 0.0, eigs_T = 1.0, eigs_hhat = 1.0;
    bool eigs_equilibrium = false;
    std::vector<double> eigs_dir{1.0, 0.0, 0.0};
    ClassifyOptions eigs_tol;
    auto* eigs = app.add_subcommand("eigs", "Classify the convection matrix along a direction");
    eigs->add_option("--system", eigs_system, "grad | trivial | regularized")->capture_default_str();
    eigs->add_option("--theta", eigs_theta, "Statistics: -1, 0 or 1")->required();
    eigs->add_option("--z", eigs_z, "Fugacity (used with --equilibrium; checked against --state)");
    eigs->add_option("--T", eigs_T, "Temperature for --equilibrium")->capture_default_str();
    eigs->add_option("--hhat", eigs_hhat, "Particle constant h/m")->capture_default_str();
    auto* state_opt = eigs->add_option("--state", eigs_state, "MomentState13 JSON file (rho, u, p_ij, q)");
    auto* eq_flag = eigs->add_flag("--equilibrium", eigs_equilibrium, "Use the equilibrium state at (theta, z, T)");
    state_opt->excludes(eq_flag);
    eigs->add_option("--dir", eigs_dir, "Direction nx,ny,nz (normalised)")->delimiter(',')->expected(3);
    eigs->add_option("--dump", eigs_dump, "Write the matrix as CSV to this file");
    eigs->add_option("--out", eigs_out, "Also write the verdict JSON to this file");
    classify_flags(eigs, eigs_tol);
    add_common(eigs, eigs_common);

    // region scans
    Common r1_common, r3_common, rr_common;
    int r1_theta = 0, r3_theta = 0, rr_theta = 0;
    double r1_z = 0.0, r3_z = 0.0, rr_z = 0.0;
    WindowOptions r1_win, r3_win, rr_win;
    ClassifyOptions r1_tol, r3_tol, rr_tol;
    auto* region1d = app.add_subcommand("region1d", "Hyperbolicity map of the 1D Grad system over (q1_hat, sigma11_hat)");
    region1d->add_option("--theta", r1_theta, "Statistics: -1, 0 or 1")->required();
    region1d->add_option("--z", r1_z, "Fugacity")->required();
    add_window(region1d, r1_win, "-3,3,-0.999,1.999");
    classify_flags(region1d, r1_tol);
    add_common(region1d, r1_common);

    auto* region3d = app.add_subcommand("region3d", "Cross section of the 3D Grad map over (q1_hat, sigma12_hat), direction x");
    region3d->add_option("--theta", r3_theta, "Statistics: -1, 0 or 1")->required();
    region3d->add_option("--z", r3_z, "Fugacity")->required();
    add_window(region3d, r3_win, "-2,2,-1,1");
    classify_flags(region3d, r3_tol);
    add_common(region3d, r3_common);

    std::string rr_component = "sigma12";
    std::vector<double> rr_dir{1.0, 0.0, 0.0};
    bool rr_random = false;
    auto* region_reg = app.add_subcommand("region-reg", "Same cross section for the regularized system");
    region_reg->add_option("--theta", rr_theta, "Statistics: -1, 0 or 1")->required();
    region_reg->add_option("--z", rr_z, "Fugacity")->required();
    region_reg->add_option("--component", rr_component, "sigma11 | sigma12")->capture_default_str();
    region_reg->add_option("--dir", rr_dir, "Direction nx,ny,nz")->delimiter(',')->expected(3);
    region_reg->add_flag("--random-dir", rr_random, "Draw a direction per cell from (seed, cell index)");
    add_window(region_reg, rr_win, "-2,2,-1,1 for sigma12; -3,3,-0.999,1.999 for sigma11");
    classify_flags(region_reg, rr_tol);
    add_common(region_reg, rr_common);

    // sweep-eigs
    Common sweep_common;
    int sweep_theta = 0, sweep_n = 200;
    double sweep_zmin = 0.0, sweep_zmax = 0.0;
    bool sweep_linear = false;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep-eigs", "Equilibrium lambda_hat branches versus fugacity");
    sweep->add_option("--theta", sweep_theta, "Statistics: -1, 0 or 1")->required();
    sweep->add_option("--zmin", sweep_zmin, "Smallest fugacity")->required();
    sweep->add_option("--zmax", sweep_zmax, "Largest fugacity")->required();
    sweep->add_option("--n", sweep_n, "Number of fugacities")->capture_default_str();
    sweep->add_flag("--linear", sweep_linear, "Linear instead of logarithmic spacing");
    sweep->add_option("--out", sweep_out, "CSV file: z, branch_id (0 zero, 1 shear, 2 slow, 3 fast), lambda_hat")->required();
    add_common(sweep, sweep_common);

    // nsf
    Common nsf_common;
    std::string nsf_system = "regularized", nsf_out;
    int nsf_theta = 0;
    double nsf_z = 0.0, nsf_T = 1.0, nsf_tau = 1.0, nsf_hhat = 1.0;
    auto* nsf = app.add_subcommand("nsf", "First Maxwellian iterate: viscosity and heat conductivity");
    nsf->add_option("--system", nsf_system, "grad | trivial | regularized")->capture_default_str();
    nsf->add_option("--theta", nsf_theta, "Statistics: -1, 0 or 1")->required();
    nsf->add_option("--z", nsf_z, "Fugacity")->required();
    nsf->add_option("--T", nsf_T, "Temperature")->capture_default_str();
    nsf->add_option("--tau", nsf_tau, "Relaxation time")->capture_default_str();
    nsf->add_option("--hhat", nsf_hhat, "Particle constant h/m")->capture_default_str();
    nsf->add_option("--out", nsf_out, "Also write the JSON to this file");
    add_common(nsf, nsf_common);

    // verify
    Common verify_common;
    std::string verify_suite = "all", verify_out;
    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "Run a verification suite; exit 1 on any failed check");
    std::vector<std::string> suites = verify_suite_names();
    suites.push_back("all");
    verify->add_option("--suite", verify_suite, "Suite name")->check(CLI::IsMember(suites))->capture_default_str();
    verify->add_option("--samples", verify_opt.hyperbolicity_samples, "Random states per statistics for global-hyperbolicity")
        ->capture_default_str();
    verify->add_option("--closure-samples", verify_opt.closure_samples, "Random states per statistics for closure-quadrature")
        ->capture_default_str();
    verify->add_option("--out", verify_out, "Also write the JSON report to this file");
    add_common(verify, verify_common);

    // simulate
    Common sim_common;
    std::string sim_config, sim_out;
    auto* simulate = app.add_subcommand("simulate", "Run the 1D regularized solver from a JSON config");
    simulate->add_option("--config", sim_config, "SimConfig JSON file")->required();
    simulate->add_option("--out", sim_out, "Output directory for snapshot_NNN.csv, ledger.csv, summary.json")->required();
    add_common(simulate, sim_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (polylog->parsed()) {
            emit(to_json(eval_polylog_set(polylog_z, statistics_from_theta(polylog_theta))), polylog_out);
            return 0;
        }

        if (eigs->parsed()) {
            const GasStatistics theta = statistics_from_theta(eigs_theta);
            const SystemKind kind = parse_system_kind(eigs_system);
            MomentState13 state;
            EquilibriumParams eq;
            if (!eigs_state.empty()) {
                state = state13_from_json(read_json_file(eigs_state));
                check_admissible(state, theta, eigs_hhat);
                eq = equilibrium_of(state, theta, eigs_hhat);
                if (eigs_z > 0.0 && std::abs(eq.z - eigs_z) > 1e-9 * eigs_z)
                    std::cerr << "note: state implies z = " << format_double(eq.z) << ", --z ignored\n";
            } else {
                if (!eigs_equilibrium) throw DomainError("give --state FILE or --equilibrium");
                eq.theta = theta;
                eq.z = eigs_z;
                eq.T = eigs_T;
                eq.hhat = eigs_hhat;
                eq.validate();
                state = MomentState13::equilibrium(eq);
            }
            const Vec3 n = parse_direction(eigs_dir);
            const SystemMatrices m = assemble_system(kind, state, eq, n);
            const HyperbolicityVerdict v = diagonalizability_test(m.A, eigs_tol);
            Json j;
            j["system"] = system_kind_name(kind);
            j["direction"] = Json::array({n[0], n[1], n[2]});
            j["equilibrium"] = to_json(eq);
            j["state"] = to_json(state);
            j["verdict"] = to_json(v);
            if (!eigs_dump.empty()) {
                std::vector<std::string> names(std::begin(kSlotNames13), std::end(kSlotNames13));
                write_text_file(eigs_dump, matrix_csv(m.A, names));
                j["matrix_csv"] = eigs_dump;
            }
            emit(j, eigs_out);
            return 0;
        }

        if (region1d->parsed()) {
            const auto [x, y] = make_axes(r1_win, "sigma11_hat", {-3.0, 3.0, -0.999, 1.999});
            write_grid(region_scan_1d(r1_z, statistics_from_theta(r1_theta), x, y, r1_tol, r1_common.threads), r1_win);
            return 0;
        }
        if (region3d->parsed()) {
            const auto [x, y] = make_axes(r3_win, "sigma12_hat", {-2.0, 2.0, -1.0, 1.0});
            write_grid(region_scan_3d_cross_section(r3_z, statistics_from_theta(r3_theta), x, y, r3_tol, r3_common.threads),
                       r3_win);
            return 0;
        }
        if (region_reg->parsed()) {
            StressComponent comp;
            if (rr_component == "sigma11")
                comp = StressComponent::Sigma11;
            else if (rr_component == "sigma12")
                comp = StressComponent::Sigma12;
            else
                throw DomainError("--component must be sigma11 or sigma12");
            const auto [x, y] = comp == StressComponent::Sigma11
                                    ? make_axes(rr_win, "sigma11_hat", {-3.0, 3.0, -0.999, 1.999})
                                    : make_axes(rr_win, "sigma12_hat", {-2.0, 2.0, -1.0, 1.0});
            write_grid(region_scan_regularized(rr_z, statistics_from_theta(rr_theta), x, y, comp, parse_direction(rr_dir),
                                               rr_random, rr_common.seed, rr_tol, rr_common.threads),
                       rr_win);
            return 0;
        }

        if (sweep->parsed()) {
            const auto rows = eigen_sweep_fugacity(statistics_from_theta(sweep_theta), sweep_zmin, sweep_zmax, sweep_n,
                                                   !sweep_linear);
            const std::filesystem::path out(sweep_out);
            if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
            write_text_file(sweep_out, sweep_csv(rows));
            std::cout << dump_json(Json{{"rows", rows.size()}, {"csv", sweep_out}});
            return 0;
        }

        if (nsf->parsed()) {
            emit(to_json(maxwellian_iteration_nsf(parse_system_kind(nsf_system), nsf_z, statistics_from_theta(nsf_theta),
                                                  nsf_T, nsf_tau, nsf_hhat)),
                 nsf_out);
            return 0;
        }

        if (verify->parsed()) {
            verify_opt.seed = verify_common.seed;
            verify_opt.threads = verify_common.threads;
            const auto reports = run_verify(verify_suite, verify_opt);
            Json j = Json::array();
            bool ok = true;
            for (const VerifyReport& r : reports) {
                j.push_back(to_json(r));
                ok = ok && r.passed();
                for (const VerifyCheck& c : r.checks)
                    std::cerr << (c.passed ? "PASS " : "FAIL ") << r.suite << ": " << c.name << "\n";
            }
            emit(Json{{"passed", ok}, {"suites", j}}, verify_out);
            return ok ? 0 : kExitVerify;
        }

        if (simulate->parsed()) return run_simulate(sim_config, sim_out, sim_common.threads);
    } catch (const InadmissibleCell& e) {
        std::cout << dump_json(Json{{"error", e.kind()}, {"message", e.what()}, {"cell", e.cell()}});
        return kExitDomain;
    } catch (const Error& e) {
        std::cout << dump_json(Json{{"error", e.kind()}, {"message", e.what()}});
        return kExitDomain;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cout << dump_json(Json{{"error", "IOError"}, {"message", e.what()}});
        return kExitDomain;
    }
    return kExitUsage;
}
