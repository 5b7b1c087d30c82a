#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QHBLOW_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string tmp(const std::string& name) {
  return std::string("/tmp/qhblow_cli_") + name;
}

}  // namespace

TEST_CASE("scenario list") {
  RunResult r = run("scenario list");
  CHECK(r.code == 0);
  CHECK(r.out == "kk\nlienard\ntwo-fluid\nriccati\n");
}

TEST_CASE("analyze kk reports four equilibria") {
  RunResult r = run("analyze --scenario kk");
  CHECK(r.code == 0);
  CHECK(r.out.find("horizon equilibria: 4") != std::string::npos);
  CHECK(r.out.find("sink") != std::string::npos);
  CHECK(r.out.find("source") != std::string::npos);
  CHECK(r.out.find("saddle") != std::string::npos);
  CHECK(r.out.find("0.9788395072") != std::string::npos);
}

TEST_CASE("analyze two-fluid reports two saddles") {
  RunResult r = run("analyze --scenario two-fluid --rho1 1 --rho2 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("horizon equilibria: 2") != std::string::npos);
  size_t first = r.out.find("saddle");
  REQUIRE(first != std::string::npos);
  CHECK(r.out.find("saddle", first + 1) != std::string::npos);
}

TEST_CASE("analyze on the zero field exits 0 with a message") {
  spit(tmp("zero.json"), R"({"dimension":2,"components":[[],[]]})");
  RunResult r = run("analyze --model " + tmp("zero.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("no quasi-homogeneous signature found") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
  spit(tmp("bad.json"), "{broken");
  CHECK(run("analyze --model " + tmp("bad.json")).code == 2);
  CHECK(run("analyze --model " + tmp("missing_file.json")).code == 2);
  CHECK(run("analyze").code == 2);                     // neither model nor scenario
  CHECK(run("blowup --scenario riccati --x0 a,b").code == 2);
  CHECK(run("frobnicate").code == 2);                  // unknown command
}

TEST_CASE("blowup on a riccati model document gives t_max = 1") {
  spit(tmp("riccati.json"),
       R"({"dimension":1,"components":[[{"exponents":[2],"coefficient":1.0}]]})");
  RunResult r = run("blowup --model " + tmp("riccati.json") +
                    " --x0 1 --tau-max 40 --out " + tmp("ric"));
  CHECK(r.code == 0);
  std::string js = slurp(tmp("ric.json"));
  CHECK(js.find("\"t_max\":1.000000") != std::string::npos);
  std::string csv = slurp(tmp("ric.csv"));
  CHECK(csv.rfind("tau,t,x1,p\n", 0) == 0);
}

TEST_CASE("unclassified divergence exits 4 with a partial report") {
  // tau horizon far too short: trajectory ends at TauLimit
  RunResult r = run("blowup --scenario riccati --x0 1 --tau-max 0.5");
  CHECK(r.code == 4);
  CHECK(r.out.find("tau-limit") != std::string::npos);
}

TEST_CASE("blowup lienard reproduces the figure trajectory data") {
  RunResult r = run("blowup --scenario lienard --n 2 --x0 0.1,0.1 --backward"
                    " --tau-max 400 --out " + tmp("li"));
  CHECK(r.code == 0);
  std::string js = slurp(tmp("li.json"));
  CHECK(js.find("converged-to-cycle") != std::string::npos);
  // header of the trajectory CSV, one row per accepted step
  std::string csv = slurp(tmp("li.csv"));
  CHECK(csv.rfind("tau,t,x1,x2,p\n", 0) == 0);
}

TEST_CASE("deterministic outputs: repeated runs are byte-identical") {
  RunResult a = run("analyze --scenario kk --out " + tmp("a.json"));
  RunResult b = run("analyze --scenario kk --out " + tmp("b.json"));
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(slurp(tmp("a.json")) == slurp(tmp("b.json")));

  RunResult c = run("portrait --scenario kk --grid -0.8:0.8:4,-0.8:0.8:4"
                    " --tau-max 20 --jobs 2 --out " + tmp("p1"));
  RunResult d = run("portrait --scenario kk --grid -0.8:0.8:4,-0.8:0.8:4"
                    " --tau-max 20 --jobs 4 --out " + tmp("p2"));
  CHECK(c.code == 0);
  CHECK(d.code == 0);
  CHECK(slurp(tmp("p1.csv")) == slurp(tmp("p2.csv")));
}

TEST_CASE("empty grid produces a header-only CSV") {
  RunResult r = run("portrait --scenario kk --grid -1:1:0,-1:1:0 --out " + tmp("empty"));
  CHECK(r.code == 0);
  CHECK(slurp(tmp("empty.csv")) == "x1,x2,termination,target,final_t\n");
}

TEST_CASE("portrait --svg renders the horizon curve and trajectories") {
  RunResult r = run("portrait --scenario kk --grid -0.6:0.6:3,-0.6:0.6:3"
                    " --tau-max 20 --svg --out " + tmp("svg"));
  CHECK(r.code == 0);
  std::string svg = slurp(tmp("svg.svg"));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("viewBox=\"0 0 720 720\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);

  RunResult again = run("portrait --scenario kk --grid -0.6:0.6:3,-0.6:0.6:3"
                        " --tau-max 20 --svg --out " + tmp("svg2"));
  CHECK(slurp(tmp("svg2.svg")) == svg);  // golden-file byte equality
}

TEST_CASE("plot renders a trajectory CSV deterministically") {
  run("blowup --scenario riccati --x0 1 --tau-max 40 --out " + tmp("ric2"));
  RunResult r = run("plot --csv " + tmp("ric2.csv") + " --x t --y x1 --out " +
                    tmp("plot1.svg"));
  CHECK(r.code == 0);
  std::string svg = slurp(tmp("plot1.svg"));
  CHECK(svg.rfind("<svg", 0) == 0);
  run("plot --csv " + tmp("ric2.csv") + " --x t --y x1 --out " + tmp("plot2.svg"));
  CHECK(slurp(tmp("plot2.svg")) == svg);

  CHECK(run("plot --csv " + tmp("ric2.csv") + " --x nope --y x1 --out " +
            tmp("plot3.svg")).code == 2);
}

TEST_CASE("HORIZON_SEED changes seed shuffling but not the result set") {
  std::string base = slurp(tmp("a.json"));
  if (base.empty()) {
    run("analyze --scenario kk --out " + tmp("a.json"));
    base = slurp(tmp("a.json"));
  }
  std::string cmd = std::string("HORIZON_SEED=12345 ") + QHBLOW_CLI_PATH +
                    " analyze --scenario kk --out " + tmp("seeded.json") +
                    " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(tmp("seeded.json")) == base);
}

TEST_CASE("model scheme block is honored and validated") {
  spit(tmp("kk_scheme.json"), R"({"dimension":2,
    "components":[[{"exponents":[2,0],"coefficient":1.0},
                   {"exponents":[0,1],"coefficient":-1.0}],
                  [{"exponents":[3,0],"coefficient":0.3333333333333333}]],
    "scheme":{"alpha":[1,2],"a":[1.0,2.0],"k":1}})");
  RunResult r = run("analyze --model " + tmp("kk_scheme.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("horizon equilibria: 4") != std::string::npos);

  spit(tmp("kk_badscheme.json"), R"({"dimension":2,
    "components":[[{"exponents":[2,0],"coefficient":1.0}],
                  [{"exponents":[3,0],"coefficient":1.0}]],
    "scheme":{"alpha":[5,1],"a":[1.0,1.0],"k":9}})");
  CHECK(run("analyze --model " + tmp("kk_badscheme.json")).code == 2);
}

