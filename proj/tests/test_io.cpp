#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgrad/errors.hpp"
#include "qgrad/io.hpp"
#include "qgrad/random.hpp"

using namespace qgrad;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("floats print with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-1.0 / 3.0) == "-0.33333333333333331");
    CHECK(format_double(2.5e-300) == "2.5e-300");
    CounterRng rng(51, 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.uniform(-60.0, 60.0)));
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("JSON dump round trips doubles and nulls non-finite values") {
    Json j;
    j["a"] = 0.1;
    j["b"] = Json::array({1, 2.5, NAN});
    j["c"] = Json::object();
    j["d"] = "text";
    j["e"] = INFINITY;
    const std::string text = dump_json(j);
    CHECK(text.find("\"a\": 0.10000000000000001") != std::string::npos);
    CHECK(text.find("null") != std::string::npos);
    const Json back = Json::parse(text);
    CHECK(back["a"].get<double>() == 0.1);
    CHECK(back["b"][2].is_null());
    CHECK(back["e"].is_null());
    CHECK(back["c"].empty());
    // Insertion order is kept.
    CHECK(text.find("\"a\"") < text.find("\"d\""));
    CHECK(dump_json(j, 0).find('\n') == dump_json(j, 0).size() - 1);
}

TEST_CASE("statistics parse from numbers and names") {
    CHECK(statistics_from_json(Json(-1)) == GasStatistics::Boson);
    CHECK(statistics_from_json(Json("fermion")) == GasStatistics::Fermion);
    CHECK(statistics_from_json(Json("classical")) == GasStatistics::Classical);
    CHECK_THROWS_AS(statistics_from_json(Json("anyon")), DomainError);
    CHECK_THROWS_AS(statistics_from_json(Json(0.5)), DomainError);
}

TEST_CASE("state and parameter round trips are exact") {
    CounterRng rng(52, 0);
    for (int k = 0; k < 20; ++k) {
        const RandomState rs = random_admissible_state(GasStatistics::Fermion, rng);
        const MomentState13 back = state13_from_json(Json::parse(dump_json(to_json(rs.state))));
        CHECK(back.rho == rs.state.rho);
        CHECK(back.u == rs.state.u);
        CHECK(back.p_ij == rs.state.p_ij);
        CHECK(back.q == rs.state.q);
        const EquilibriumParams eq = equilibrium_from_json(Json::parse(dump_json(to_json(rs.eq))));
        CHECK(eq.z == rs.eq.z);
        CHECK(eq.T == rs.eq.T);
        CHECK(eq.u == rs.eq.u);
        CHECK(eq.theta == rs.eq.theta);
    }
    const MomentState5 s5{1.5, -0.25, 2.0, 0.3, 1.75};
    const MomentState5 b5 = state5_from_json(Json::parse(dump_json(to_json(s5))));
    CHECK(b5.to_vector() == s5.to_vector());
}

TEST_CASE("malformed state documents are domain errors") {
    Json j = to_json(MomentState13{});
    j.erase("rho");
    CHECK_THROWS_AS(state13_from_json(j), DomainError);
    j = to_json(MomentState13{});
    j["q"] = Json::array({1.0, 2.0});
    CHECK_THROWS_AS(state13_from_json(j), DomainError);
}

TEST_CASE("simulation configs round trip and validate") {
    SimConfig c;
    c.theta = GasStatistics::Boson;
    c.cells = 123;
    c.tau = 0.02;
    c.boundary = BoundaryKind::Periodic;
    c.profile = InitialProfile::Smooth;
    c.left = {0.3, 0.1, 1.2};
    c.right = {0.2, -0.1, 0.7};
    c.snapshots = 3;
    const SimConfig back = sim_config_from_json(Json::parse(dump_json(to_json(c))));
    CHECK(dump_json(to_json(back)) == dump_json(to_json(c)));

    Json j = to_json(c);
    j["left"]["z"] = 1.5;  // condensed Bose gas
    CHECK_THROWS_AS(sim_config_from_json(j), DomainError);
    j = to_json(c);
    j.erase("right");
    CHECK_THROWS_AS(sim_config_from_json(j), DomainError);
    j = to_json(c);
    j["boundary"] = "mirror";
    CHECK_THROWS_AS(sim_config_from_json(j), DomainError);
    // Optional fields fall back to defaults.
    const SimConfig minimal =
        sim_config_from_json(Json::parse(R"({"theta": "fermion", "left": {"z": 1}, "right": {"z": 0.5}})"));
    CHECK(minimal.cells == SimConfig{}.cells);
    CHECK(minimal.left.T == 1.0);
}

TEST_CASE("polylog JSON keys") {
    const Json j = to_json(eval_polylog_set(0.5, GasStatistics::Classical));
    for (const char* key : {"1/2", "3/2", "5/2", "7/2", "9/2"}) CHECK(j["li"][key].get<double>() == 0.5);
    CHECK(j["statistics"] == "classical");
}

TEST_CASE("CSV headers and sizes") {
    Eigen::MatrixXd A(2, 2);
    A << 1.0, 0.1, -3.0, 4.5;
    const std::string m = matrix_csv(A, {"a", "b"});
    CHECK(m == "a,b\n1,0.10000000000000001\n-3,4.5\n");

    RegionScanSpec spec;
    spec.theta = GasStatistics::Classical;
    spec.x = {"q1_hat", -1.0, 1.0, 3};
    spec.y = {"sigma11_hat", -0.5, 0.5, 2};
    spec.threads = 1;
    const RegionGrid g = region_scan(spec);
    const std::string r = region_csv(g);
    CHECK(first_line(r) == "q1_hat,sigma11_hat,class_code,boundary");
    CHECK(line_count(r) == 7);
    CHECK(r.find("\n-1,-0.5,") != std::string::npos);
    const Json meta = grid_metadata(g);
    CHECK(meta["class_codes"]["4"] == "Inadmissible");
    CHECK(meta["x"]["count"] == 3);

    const std::string sw = sweep_csv(eigen_sweep_fugacity(GasStatistics::Fermion, 0.1, 1.0, 3));
    CHECK(first_line(sw) == "z,branch_id,lambda_hat");
    CHECK(line_count(sw) == 13);

    SimConfig c;
    c.cells = 8;
    c.theta = GasStatistics::Classical;
    const SimState s = initial_state(c);
    const std::string snap = snapshot_csv(s, c);
    CHECK(first_line(snap) == "x,rho,u1,p11,q1,p");
    CHECK(line_count(snap) == 9);
    CHECK(snap.find("\n0.0625,") != std::string::npos);
    const std::string led = ledger_csv({ledger_row(s, c)});
    CHECK(first_line(led) == "time,mass,momentum,energy");
    CHECK(line_count(led) == 2);
}

TEST_CASE("artifacts are byte-identical across runs") {
    SimConfig c;
    c.cells = 40;
    c.snapshots = 2;
    c.t_end = 0.01;
    c.left = {2.0, 0.0, 1.0};
    c.right = {0.5, 0.0, 1.0};
    const RunResult a = run(c), b = run(c);
    CHECK(snapshot_csv(a.snapshots.back(), c) == snapshot_csv(b.snapshots.back(), c));
    CHECK(ledger_csv(a.ledger) == ledger_csv(b.ledger));
}

TEST_CASE("file helpers") {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "qgrad_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "doc.json").string();
    Json j;
    j["x"] = 1.25;
    write_text_file(path, dump_json(j));
    CHECK(read_json_file(path)["x"].get<double>() == 1.25);
    write_text_file(path, "{not json");
    CHECK_THROWS_AS(read_json_file(path), DomainError);
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), DomainError);
    std::filesystem::remove_all(dir);
}
