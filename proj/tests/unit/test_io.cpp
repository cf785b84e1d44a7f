#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "spincomm/csv.hpp"
#include "spincomm/errors.hpp"
#include "spincomm/network_io.hpp"
#include "spincomm/tolerances.hpp"

namespace fs = std::filesystem;
using namespace spincomm;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("spincomm_io_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static const ScratchDir dir;
  return dir.path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string body_of(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("#", 0) != 0) out += line + "\n";
  return out;
}

int cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" SPINCOMM_CLI_PATH "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string("'") + SPINCOMM_CONFIG_DIR + "/" + name + "'"; }

}  // namespace

TEST_CASE("atomic write and CSV round trip") {
  const auto path = scratch() / "table.csv";
  write_file_atomically(path, "# seed=7\n# note=a=b\nT,s1\n0,0\n0.25,0.5\n");
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  const auto t = read_csv(path);
  CHECK(t.meta.at("seed") == "7");
  CHECK(t.meta.at("note") == "a=b");
  CHECK(t.columns == std::vector<std::string>{"T", "s1"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][t.column("s1")] == 0.5);
  CHECK_THROWS_AS(t.column("s2"), InvalidArgument);

  CHECK_THROWS_AS(write_file_atomically(scratch() / "missing_dir" / "x.csv", "x"), IoError);
  CHECK_THROWS_AS(read_csv(scratch() / "absent.csv"), IoError);

  write_file_atomically(path, "a,b\n1,oops\n");
  CHECK_THROWS_AS(read_csv(path), InvalidArgument);
}

TEST_CASE("tolerance overrides") {
  Tolerances t;
  t.apply_overrides("unitarity=1e-9,control_zero=1e-10");
  CHECK(t.unitarity == 1e-9);
  CHECK(t.control_zero == 1e-10);
  CHECK(t.describe().find("unitarity=1e-09") != std::string::npos);
  CHECK_THROWS_AS(t.apply_overrides("bogus=1"), InvalidArgument);
  CHECK_THROWS_AS(t.apply_overrides("unitarity"), InvalidArgument);
  CHECK_THROWS_AS(t.apply_overrides("unitarity=abc"), InvalidArgument);
  CHECK(default_tolerances().hermiticity == 1e-12);
}

TEST_CASE("load_network") {
  CHECK_THROWS_AS(load_network(scratch() / "nope.json"), IoError);
  const auto bad = scratch() / "bad.json";
  write_file_atomically(bad, "{not json");
  CHECK_THROWS_AS(load_network(bad), InvalidArgument);

  const auto net = load_network(fs::path(SPINCOMM_CONFIG_DIR) / "xy_random_29.json");
  CHECK(net.n_sites() == 29);
  const auto other = load_network(fs::path(SPINCOMM_CONFIG_DIR) / "xy_random_29.json", 99);
  CHECK_FALSE(net == other);
  // end couplings pinned at 1
  CHECK(net.edges().front().strength == 1.0);
  CHECK(net.edges().back().strength == 1.0);
}

TEST_CASE("CLI exit codes") {
  const auto out = (scratch() / "cli").string();
  CHECK(cli("") == 1);
  CHECK(cli("sweep --out " + out) == 1);  // missing --network
  CHECK(cli("sweep --network " + (scratch() / "nope.json").string() + " --out " + out) == 3);
  CHECK(cli("sweep --network " + config("small_network.json") + " --t-grid 0:1 --out " + out) == 1);
  CHECK(cli("sweep --network " + config("small_network.json") + " --t-grid 0:1:0.5 --out " +
            (scratch() / "no_dir" / "x").string()) == 3);
  CHECK(cli("derive-controls --network " + config("small_network.json") + " --t 2 --out " + out) == 1);
  // an impossible imaginary-residue bound is a numerical-invariant violation
  CHECK(cli("derive-controls --network " + config("xy_uniform_104.json") + " --t 36 --steps 10 --phantom 2 --out " + out,
            "SPINCOMM_TOLERANCES=control_imag_abort=1e-300") == 2);
}

TEST_CASE("CLI outputs are self-describing and deterministic") {
  const auto a = (scratch() / "sweep_a").string();
  const auto b = (scratch() / "sweep_b").string();
  REQUIRE(cli("sweep --network " + config("small_network.json") + " --t-grid 0:5:0.5 --k 2 --out " + a) == 0);
  REQUIRE(cli("sweep --network " + config("small_network.json") + " --t-grid 0:5:0.5 --k 2 --out " + b) == 0);
  const auto text = slurp(a + ".csv");
  CHECK(body_of(text) == body_of(slurp(b + ".csv")));
  const auto table = read_csv(a + ".csv");
  CHECK(table.meta.at("command") == "sweep");
  CHECK(table.meta.at("seed") == "none");
  CHECK(table.meta.at("t_grid") == "0:5:0.5");
  CHECK(table.meta.count("tolerances") == 1);
  CHECK(table.meta.count("network_json") == 1);
  CHECK(table.columns == std::vector<std::string>{"T", "s1", "s2"});
  CHECK(table.rows.size() == 11);
  // the embedded network rebuilds the same system
  CHECK(build_network(nlohmann::json::parse(table.meta.at("network_json"))) ==
        load_network(fs::path(SPINCOMM_CONFIG_DIR) / "small_network.json"));

  const auto conc = (scratch() / "conc").string();
  REQUIRE(cli("concurrence-check --sweep " + a + ".csv --rho11 0.3 --out " + conc) == 0);
  const auto ct = read_csv(conc + ".csv");
  CHECK(ct.columns == std::vector<std::string>{"T", "c_b", "E", "F_bar_lower", "F_bar_upper"});
  REQUIRE(ct.rows.size() == 11);
  for (std::size_t i = 0; i < ct.rows.size(); ++i) {
    const double s1 = table.rows[i][1];
    CHECK(ct.rows[i][2] == doctest::Approx(s1).epsilon(1e-8));
  }
}

TEST_CASE("CLI control pipeline: derive, replay, encode, evolve, baseline") {
  const auto net = (scratch() / "chain.json").string();
  write_file_atomically(net, R"({"kind": "xy", "couplings": [1, 0.95, 1.05, 1, 0.98, 1.02, 1, 1, 0.97, 1, 1],
                                 "n_alice": 2, "n_bob": 2})");
  const auto ctl = (scratch() / "ctl").string();
  REQUIRE(cli("derive-controls --network " + net + " --t 6 --steps 300 --phantom 4 --out " + ctl) == 0);
  const auto sched = read_csv(ctl + ".csv");
  CHECK(sched.columns == std::vector<std::string>{"t", "J_A", "J_B"});
  CHECK(sched.rows.size() == 300);
  const auto summary = nlohmann::json::parse(slurp(ctl + ".json"));
  CHECK(summary.at("n_steps") == 300);

  const auto rep = (scratch() / "replay").string();
  REQUIRE(cli("simulate-controls --network " + net + " --schedule " + ctl + ".csv --out " + rep) == 0);
  const auto replay = read_csv(rep + ".csv");
  CHECK(std::stod(replay.meta.at("c_b")) ==
        doctest::Approx(summary.at("achieved_c_b").get<double>()).epsilon(1e-9));

  const auto enc = (scratch() / "enc").string();
  REQUIRE(cli("encode --network " + net + " --t-grid 1:6:0.25 --out " + enc) == 0);
  const auto w = read_csv(enc + ".csv");
  CHECK(w.columns == std::vector<std::string>{"site", "re", "im"});
  CHECK(w.rows.size() == 2);

  const auto evo = (scratch() / "evo").string();
  REQUIRE(cli("evolve --network " + net + " --t 3 --t-grid 0:3:0.1 --amplitudes --velocity-window 0.5:2 --out " + evo) == 0);
  const auto tr = read_csv(evo + ".csv");
  CHECK(tr.columns.size() == 1 + 3 * 12);
  CHECK(tr.meta.count("group_velocity") == 1);

  const auto bl = (scratch() / "base").string();
  REQUIRE(cli("baseline --network " + net + " --t-grid 0:20:0.25 --out " + bl) == 0);
  const auto base = read_csv(bl + ".csv");
  CHECK(std::stod(base.meta.at("max_c_b")) <= 1.0);
  CHECK(base.rows.size() == 81);
}
