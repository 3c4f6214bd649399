#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccrm/cli.hpp"
#include "ccrm/closed_form.hpp"
#include "ccrm/error.hpp"
#include "ccrm/transport.hpp"

using namespace ccrm;

namespace {

struct RunOutcome {
  int exit_code;
  std::string out;
  std::string err;
};

RunOutcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/ccrm_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}
}  // namespace

TEST_CASE("compute prints a single json line") {
  RunOutcome r = run_cli({"compute", "--op", "standard", "--grid",
                          "line:0:2:0.5", "--a", "point:0", "--b",
                          "point:1.5"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"value\":1.5}\n");
  CHECK(r.err.empty());
}

TEST_CASE("compute reports unreachable mass as the infinite value") {
  RunOutcome r = run_cli({"compute", "--op", "hderiv:0.5", "--grid",
                          "line:0:4:0.125", "--a", "point:0", "--b",
                          "point:0.75"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"value\":\"infinite\"}\n");
}

TEST_CASE("compute attaches witness, plan, and cut on request") {
  RunOutcome plain = run_cli({"compute", "--op", "standard", "--grid",
                              "circle:8", "--a", "point:0", "--b",
                              "rect:3.141592653589793:0.7853981633974483"});
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("witness") == std::string::npos);
  CHECK(plain.out.find("plan") == std::string::npos);
  CHECK(plain.out.find("cut_node") == std::string::npos);

  RunOutcome full = run_cli({"compute", "--op", "standard", "--grid",
                             "circle:8", "--a", "point:0", "--b",
                             "rect:3.141592653589793:0.7853981633974483",
                             "--witness", "--plan", "--cut"});
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("\"witness\":[") != std::string::npos);
  CHECK(full.out.find("\"plan\":[[") != std::string::npos);
  CHECK(full.out.find("\"cut_node\":") != std::string::npos);
}

TEST_CASE("compute writes to a file when asked") {
  std::string path = "/tmp/ccrm_test_compute_out.json";
  std::remove(path.c_str());
  RunOutcome r = run_cli({"compute", "--op", "standard", "--grid",
                          "line:0:2:0.5", "--a", "point:0", "--b", "point:1",
                          "--out", path});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string content((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "{\"value\":1}\n");
  std::remove(path.c_str());
}

TEST_CASE("malformed specs exit with the parse code") {
  CHECK(run_cli({"compute", "--op", "standard", "--grid", "line:0:2",
                 "--a", "point:0", "--b", "point:1"})
            .exit_code == 2);
  CHECK(run_cli({"compute", "--op", "wat", "--grid", "line:0:2:0.5",
                 "--a", "point:0", "--b", "point:1"})
            .exit_code == 2);
  CHECK(run_cli({"compute", "--op", "standard", "--grid", "line:0:2:0.5",
                 "--a", "point:zero", "--b", "point:1"})
            .exit_code == 2);
  CHECK(run_cli({"compute", "--grid", "line:0:2:0.5", "--a", "point:0",
                 "--b", "point:1"})
            .exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
}

TEST_CASE("model violations exit with the model code") {
  CHECK(run_cli({"compute", "--op", "qderiv:0.5", "--grid", "line:0:2:0.5",
                 "--a", "point:0", "--b", "point:1"})
            .exit_code == 3);
  CHECK(run_cli({"compute", "--op", "standard", "--grid", "line:0:2:0.5",
                 "--a", "point:9", "--b", "point:1"})
            .exit_code == 3);
  RunOutcome r = run_cli({"compute", "--op", "standard", "--grid",
                          "line:0:2:0.3", "--a", "point:0", "--b", "point:1"});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("NonCommensurateWindow") != std::string::npos);
}

TEST_CASE("help prints usage and succeeds") {
  RunOutcome r = run_cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("compute") != std::string::npos);
  CHECK(r.out.find("sweep") != std::string::npos);
  CHECK(r.out.find("validate") != std::string::npos);
}

TEST_CASE("sweep emits an ordered csv with the literal inf marker") {
  RunOutcome r = run_cli({"sweep", "--op", "hderiv:0.5", "--grid",
                          "line:0:4:0.125", "--a", "point:1", "--b", "point:1",
                          "--axis", "x", "--start", "1.25", "--stop", "2",
                          "--step", "0.25"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "param,value");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "1.25,inf");
  CHECK(rows[1] == "1.5,0.5");
  CHECK(rows[2] == "1.75,inf");
  CHECK(rows[3] == "2,1");
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
  std::vector<std::string> args = {"sweep", "--op", "standard", "--grid",
                                   "circle:64", "--a",
                                   "rect:0:0.7853981633974483", "--b",
                                   "rect:0:0.7853981633974483", "--axis", "x",
                                   "--start", "0.5", "--stop", "3.0",
                                   "--step", "0.1"};
  setenv("CCRM_THREADS", "1", 1);
  RunOutcome serial = run_cli(args);
  RunOutcome serial_again = run_cli(args);
  setenv("CCRM_THREADS", "4", 1);
  RunOutcome parallel = run_cli(args);
  unsetenv("CCRM_THREADS");
  CHECK(serial.exit_code == 0);
  CHECK(serial.out == serial_again.out);
  CHECK(serial.out == parallel.out);
  CHECK(serial.out.substr(0, 12) == "param,value\n");
}

TEST_CASE("sweep validates its range and axis bindings") {
  std::vector<std::string> base = {"sweep", "--op", "standard", "--grid",
                                   "line:0:4:0.5", "--a", "point:0", "--b",
                                   "point:1"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args);
  };
  CHECK(with({"--axis", "x", "--start", "2", "--stop", "1", "--step", "0.5"})
            .exit_code == 2);
  CHECK(with({"--axis", "x", "--start", "1", "--stop", "2", "--step", "-0.5"})
            .exit_code == 2);
  CHECK(with({"--axis", "volume", "--start", "1", "--stop", "2", "--step",
              "0.5"})
            .exit_code == 2);
  CHECK(with({"--axis", "eps", "--start", "1", "--stop", "2", "--step", "0.5"})
            .exit_code == 2);
  CHECK(with({"--axis", "h", "--start", "1", "--stop", "2", "--step", "0.5"})
            .exit_code == 2);
  CHECK(with({"--axis", "q", "--start", "0.2", "--stop", "0.4", "--step",
              "0.1"})
            .exit_code == 2);
}

TEST_CASE("sweep can drive width, step, and ratio axes") {
  RunOutcome eps = run_cli({"sweep", "--op", "standard", "--grid", "circle:32",
                            "--a", "rect:0:0.5", "--b", "rect:1.5:0.5",
                            "--axis", "eps", "--start", "0.3", "--stop", "0.7",
                            "--step", "0.2"});
  CHECK(eps.exit_code == 0);
  CHECK(eps.out.substr(0, 12) == "param,value\n");

  RunOutcome h = run_cli({"sweep", "--op", "hderiv:0.5", "--grid",
                          "line:0:4:0.125", "--a", "point:0", "--b", "point:2",
                          "--axis", "h", "--start", "0.25", "--stop", "0.5",
                          "--step", "0.25"});
  CHECK(h.exit_code == 0);

  RunOutcome q = run_cli({"sweep", "--op", "qderiv:0.5", "--grid",
                          "qlattice:1:0.5:8", "--a", "point:1", "--b",
                          "point:0", "--axis", "q", "--start", "0.25",
                          "--stop", "0.5", "--step", "0.25"});
  CHECK(q.exit_code == 0);
  std::istringstream lines(q.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(row1 == "0.25,0.5");
  CHECK(std::stod(row2.substr(row2.find(',') + 1)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("validate reports the catalog and fails on unknown scenarios") {
  RunOutcome all = run_cli({"validate"});
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("scenario") != std::string::npos);
  CHECK(all.out.find("pass") != std::string::npos);
  CHECK(all.out.find("fail") == std::string::npos);

  RunOutcome one = run_cli({"validate", "euclid"});
  CHECK(one.exit_code == 0);
  CHECK(one.out.find("euclid") != std::string::npos);
  CHECK(one.out.find("qscale") == std::string::npos);

  RunOutcome missing = run_cli({"validate", "no-such"});
  CHECK(missing.exit_code == 3);
  CHECK(missing.err.find("UnknownScenario") != std::string::npos);
}

TEST_CASE("operator and state files are parsed from disk") {
  std::string profile = temp_file("profile.csv",
                                  "0,1\n0.5,1.25\n1,2\n1.5,3.25\n2,5\n");
  RunOutcome nf = run_cli({"compute", "--op", "nonflat:" + profile, "--grid",
                           "line:0:2:0.5", "--a", "point:0", "--b",
                           "point:1"});
  CHECK(nf.exit_code == 0);
  // exact reciprocal integral of the piecewise linear profile over [0, 1]
  double want = 0.5 / 0.25 * std::log(1.25) + 0.5 / 0.75 * std::log(2.0 / 1.25);
  size_t vpos = nf.out.find("\"value\":");
  REQUIRE(vpos != std::string::npos);
  CHECK(std::stod(nf.out.substr(vpos + 8)) ==
        doctest::Approx(want).epsilon(1e-6));

  std::string density = temp_file("hat.csv", "0\n1\n0\n");
  RunOutcome dn = run_cli({"compute", "--op", "standard", "--grid",
                           "line:0:2:0.5", "--a",
                           "density:1:0.5:" + density, "--b", "point:1"});
  CHECK(dn.exit_code == 0);

  std::string psi = temp_file("psi.csv", "1\n1\n0\n0\n0\n");
  RunOutcome rank = run_cli({"compute", "--op", "rank1:" + psi, "--grid",
                             "line:0:2:0.5", "--a", "point:0", "--b",
                             "point:1"});
  CHECK(rank.exit_code == 3);
  CHECK(rank.err.find("NotCompilable") != std::string::npos);

  std::string short_psi = temp_file("short_psi.csv", "1\n1\n");
  CHECK(run_cli({"compute", "--op", "rank1:" + short_psi, "--grid",
                 "line:0:2:0.5", "--a", "point:0", "--b", "point:1"})
            .exit_code == 3);

  std::string bad = temp_file("bad.csv", "0,1\nnope,2\n");
  CHECK(run_cli({"compute", "--op", "nonflat:" + bad, "--grid",
                 "line:0:2:0.5", "--a", "point:0", "--b", "point:1"})
            .exit_code == 2);
  CHECK(run_cli({"compute", "--op", "nonflat:/tmp/ccrm_no_such_file.csv",
                 "--grid", "line:0:2:0.5", "--a", "point:0", "--b",
                 "point:1"})
            .exit_code == 2);
}

TEST_CASE("cut node matches the closed-form prediction on the circle") {
  double eps = 0.7853981633974483;
  RunOutcome r = run_cli({"compute", "--op", "standard", "--grid",
                          "circle:256", "--a", "rect:0:" +
                              std::to_string(eps),
                          "--b", "rect:2.356194490192345:" +
                              std::to_string(eps),
                          "--cut"});
  CHECK(r.exit_code == 0);
  size_t pos = r.out.find("\"cut_node\":");
  REQUIRE(pos != std::string::npos);
  int node = std::atoi(r.out.c_str() + pos + 11);
  double predicted = cut_point(eps, 2.356194490192345);
  double angle = 2 * 3.141592653589793 * node / 256;
  double gap = std::abs(angle - predicted);
  gap = std::min(gap, 2 * 3.141592653589793 - gap);
  CHECK(gap <= 2 * (2 * 3.141592653589793 / 256) + 1e-9);
}
