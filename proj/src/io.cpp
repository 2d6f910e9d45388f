#include "qgrad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgrad/errors.hpp"
#include "qgrad/linalg.hpp"

namespace qgrad {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void dump_value(const Json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
    const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) { out += ","; out += nl; }
                first = false;
                out += pad + Json(it.key()).dump() + sep;
                dump_value(it.value(), indent, depth + 1, out);
            }
            out += nl + close + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            out += "[";
            out += nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) { out += ","; out += nl; }
                out += pad;
                dump_value(j[i], indent, depth + 1, out);
            }
            out += nl + close + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Vec3 vec_from(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw DomainError(std::string(what) + " must be a 3-array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

template <typename T>
T require(const Json& j, const char* key) {
    if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad field '") + key + "': " + e.what());
    }
}

template <typename T>
T optional(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? require<T>(j, key) : fallback;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_value(j, indent, 0, out);
    out += "\n";
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

GasStatistics statistics_from_json(const Json& j) {
    if (j.is_number_integer()) return statistics_from_theta(j.get<int>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "boson") return GasStatistics::Boson;
        if (s == "classical") return GasStatistics::Classical;
        if (s == "fermion") return GasStatistics::Fermion;
    }
    throw DomainError("theta must be -1, 0, 1 or a statistics name");
}

Json to_json(const EquilibriumParams& eq) {
    Json j;
    j["theta"] = theta_of(eq.theta);
    j["z"] = eq.z;
    j["u"] = vec_json(eq.u);
    j["T"] = eq.T;
    j["hhat"] = eq.hhat;
    return j;
}

EquilibriumParams equilibrium_from_json(const Json& j) {
    EquilibriumParams eq;
    if (!j.contains("theta")) throw DomainError("missing field 'theta'");
    eq.theta = statistics_from_json(j["theta"]);
    eq.z = require<double>(j, "z");
    eq.u = j.contains("u") ? vec_from(j["u"], "u") : Vec3::Zero();
    eq.T = optional<double>(j, "T", 1.0);
    eq.hhat = optional<double>(j, "hhat", 1.0);
    eq.validate();
    return eq;
}

Json to_json(const MomentState13& s) {
    Json j;
    j["rho"] = s.rho;
    j["u"] = vec_json(s.u);
    Json p = Json::array();
    for (int r = 0; r < 3; ++r) p.push_back(vec_json(s.p_ij.row(r).transpose()));
    j["p_ij"] = p;
    j["q"] = vec_json(s.q);
    return j;
}

MomentState13 state13_from_json(const Json& j) {
    MomentState13 s;
    s.rho = require<double>(j, "rho");
    s.u = j.contains("u") ? vec_from(j["u"], "u") : Vec3::Zero();
    if (!j.contains("p_ij") || !j["p_ij"].is_array() || j["p_ij"].size() != 3)
        throw DomainError("p_ij must be a 3x3 array");
    for (int r = 0; r < 3; ++r) s.p_ij.row(r) = vec_from(j["p_ij"][r], "p_ij row").transpose();
    s.q = j.contains("q") ? vec_from(j["q"], "q") : Vec3::Zero();
    return s;
}

Json to_json(const MomentState5& s) {
    return Json{{"rho", s.rho}, {"u1", s.u1}, {"p11", s.p11}, {"q1", s.q1}, {"p", s.p}};
}

MomentState5 state5_from_json(const Json& j) {
    MomentState5 s{require<double>(j, "rho"), optional<double>(j, "u1", 0.0), require<double>(j, "p11"),
                   optional<double>(j, "q1", 0.0), require<double>(j, "p")};
    s.validate();
    return s;
}

Json to_json(const PolylogSet& li) {
    Json j;
    j["z"] = li.z;
    j["theta"] = theta_of(li.stats);
    j["statistics"] = statistics_name(li.stats);
    Json v;
    for (int twice_s = 1; twice_s <= 9; twice_s += 2) v[std::to_string(twice_s) + "/2"] = li.li(twice_s);
    j["li"] = v;
    return j;
}

Json to_json(const HyperbolicityVerdict& v) {
    Json j;
    j["classification"] = hyperbolicity_name(v.classification);
    j["hyperbolic"] = is_hyperbolic(v.classification);
    Json ev = Json::array();
    for (Complex c : v.eigenvalues) ev.push_back(complex_json(c));
    j["eigenvalues"] = ev;
    Json cl = Json::array();
    for (const ClusterDiagnostic& c : v.clusters)
        cl.push_back(Json{{"value", complex_json(c.value)},
                          {"algebraic", c.algebraic},
                          {"geometric", c.geometric},
                          {"min_singular", c.min_singular}});
    j["clusters"] = cl;
    j["max_imag"] = v.max_imag;
    j["min_gap"] = v.min_gap;
    j["near_threshold"] = v.near_threshold;
    return j;
}

Json to_json(const NSFReport& r) {
    Json j;
    j["kind"] = system_kind_name(r.kind);
    j["mu"] = r.mu;
    j["mu_target"] = r.mu_target;
    j["kappa"] = r.kappa;
    j["kappa_target"] = r.kappa_target;
    j["kappa_rel_error"] = r.kappa_rel_error;
    j["kappa_route_p"] = r.kappa_route_p;
    j["kappa_route_rho"] = r.kappa_route_rho;
    j["z_coefficient"] = r.z_coefficient;
    j["mismatch"] = Json::array({r.mismatch[0], r.mismatch[1]});
    return j;
}

Json to_json(const LinearizationReport& r) {
    Json j;
    j["E_final"] = vec_json(Vec3(r.E_final[0], r.E_final[1], r.E_final[2]));
    j["E_triv"] = vec_json(Vec3(r.E_triv[0], r.E_triv[1], r.E_triv[2]));
    j["scale"] = vec_json(Vec3(r.scale[0], r.scale[1], r.scale[2]));
    j["final_ok"] = r.final_ok;
    j["triv_differs"] = r.triv_differs;
    return j;
}

Json to_json(const AppendixCoeffs& c) {
    return Json{{"epsilon", c.epsilon}, {"c0", c.c0}, {"c1", c.c1}, {"c2", c.c2},
                {"c3", c.c3},           {"c4", c.c4}, {"g0", c.g0}};
}

Json to_json(const SimConfig& c) {
    auto side = [](const SideState& s) { return Json{{"z", s.z}, {"u1", s.u1}, {"T", s.T}}; };
    Json j;
    j["theta"] = theta_of(c.theta);
    j["cells"] = c.cells;
    j["length"] = c.length;
    j["cfl"] = c.cfl;
    j["tau"] = c.tau;
    j["t_end"] = c.t_end;
    j["boundary"] = boundary_name(c.boundary);
    j["profile"] = profile_name(c.profile);
    j["left"] = side(c.left);
    j["right"] = side(c.right);
    j["hhat"] = c.hhat;
    j["snapshots"] = c.snapshots;
    return j;
}

SimConfig sim_config_from_json(const Json& j) {
    SimConfig c;
    if (!j.contains("theta")) throw DomainError("missing field 'theta'");
    c.theta = statistics_from_json(j["theta"]);
    c.cells = optional<int>(j, "cells", c.cells);
    c.length = optional<double>(j, "length", c.length);
    c.cfl = optional<double>(j, "cfl", c.cfl);
    c.tau = optional<double>(j, "tau", c.tau);
    c.t_end = optional<double>(j, "t_end", c.t_end);
    if (j.contains("boundary")) c.boundary = parse_boundary(require<std::string>(j, "boundary"));
    if (j.contains("profile")) c.profile = parse_profile(require<std::string>(j, "profile"));
    auto side = [](const Json& s, const char* name) {
        if (!s.is_object()) throw DomainError(std::string(name) + " must be an object");
        return SideState{require<double>(s, "z"), optional<double>(s, "u1", 0.0), optional<double>(s, "T", 1.0)};
    };
    if (!j.contains("left") || !j.contains("right")) throw DomainError("missing 'left' or 'right' state");
    c.left = side(j["left"], "left");
    c.right = side(j["right"], "right");
    c.hhat = optional<double>(j, "hhat", 1.0);
    c.snapshots = optional<int>(j, "snapshots", c.snapshots);
    c.validate();
    return c;
}

Json grid_metadata(const RegionGrid& grid) {
    const RegionScanSpec& s = grid.spec;
    auto axis = [](const GridAxis& a) { return Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}}; };
    Json j;
    j["theta"] = theta_of(s.theta);
    j["z"] = s.z;
    j["T"] = s.T;
    j["system"] = system_kind_name(s.kind);
    j["reduced_1d"] = s.reduced_1d;
    j["x"] = axis(s.x);
    j["y"] = axis(s.y);
    j["y_component"] = stress_component_name(s.y_component);
    j["direction"] = s.random_direction ? Json("random") : vec_json(s.direction);
    j["seed"] = s.seed;
    j["tolerances"] = Json{{"rank_tol", s.tol.rank_tol}, {"cluster_tol", s.tol.cluster_tol}, {"imag_tol", s.tol.imag_tol}};
    Json codes;
    for (int c = 0; c <= 4; ++c) codes[std::to_string(c)] = cell_class_name(static_cast<CellClass>(c));
    j["class_codes"] = codes;
    j["equilibrium_class"] = cell_class_name(grid.equilibrium_class);
    j["area_fraction"] = area_fraction(grid);
    std::size_t boundary = 0;
    for (auto b : grid.boundary) boundary += b;
    j["boundary_cells"] = boundary;
    return j;
}

std::string matrix_csv(const Eigen::MatrixXd& A, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t c = 0; c < names.size(); ++c) out += (c ? "," : "") + names[c];
    out += "\n";
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        for (Eigen::Index c = 0; c < A.cols(); ++c) out += (c ? "," : "") + format_double(A(r, c));
        out += "\n";
    }
    return out;
}

std::string region_csv(const RegionGrid& grid) {
    std::string out = grid.spec.x.name + "," + grid.spec.y.name + ",class_code,boundary\n";
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * grid.nx() + i;
            out += format_double(grid.spec.x.at(i)) + "," + format_double(grid.spec.y.at(j)) + "," +
                   std::to_string(static_cast<int>(grid.cells[idx])) + "," + std::to_string(grid.boundary[idx]) + "\n";
        }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "z,branch_id,lambda_hat\n";
    for (const SweepRow& r : rows)
        for (int b = 0; b < 4; ++b)
            out += format_double(r.z) + "," + std::to_string(b) + "," + format_double(r.branch[b]) + "\n";
    return out;
}

std::string snapshot_csv(const SimState& state, const SimConfig& config) {
    std::string out = "x,rho,u1,p11,q1,p\n";
    for (std::size_t i = 0; i < state.cells.size(); ++i) {
        const MomentState5& c = state.cells[i];
        out += format_double(config.cell_center(static_cast<int>(i))) + "," + format_double(c.rho) + "," +
               format_double(c.u1) + "," + format_double(c.p11) + "," + format_double(c.q1) + "," +
               format_double(c.p) + "\n";
    }
    return out;
}

std::string ledger_csv(const std::vector<LedgerRow>& ledger) {
    std::string out = "time,mass,momentum,energy\n";
    for (const LedgerRow& r : ledger)
        out += format_double(r.time) + "," + format_double(r.mass) + "," + format_double(r.momentum) + "," +
               format_double(r.energy) + "\n";
    return out;
}

}  // namespace qgrad
