#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ntwfsm/alignment.hpp"
#include "ntwfsm/machine_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NTWFSM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "ntwfsm_cli_test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST_CASE("align") {
  auto r = run("align gemacht machen");
  CHECK(r.status == 0);
  CHECK(r.out == "gemacht--\t--mach-en\tDDKKKKDII\t5\n");

  r = run("align a a");
  CHECK(r.out == "a\ta\tK\t0\n");

  r = run("align swum swim");
  CHECK((r.out == "swu-m\tsw-im\tKKDIK\t2\n" || r.out == "sw-um\tswi-m\tKKIDK\t2\n"));

  r = run("align --forbid-id swum swim");
  CHECK(r.out == "swu-m\tsw-im\tKKDIK\t2\n");

  const auto batch = scratch("pairs.tsv", "swum\tswim\ngemacht\tmachen\n");
  r = run("align --batch " + batch.string());
  CHECK(r.status == 0);
  CHECK(r.out == "swu-m\tsw-im\tKKDIK\t2\ngemacht--\t--mach-en\tDDKKKKDII\t5\n");

  CHECK(run("align onlyone").status == 2);
  CHECK(run("align a- a").status == 2);
  CHECK(run("align --marker ab a b").status == 2);
}

TEST_CASE("bestpath and transduce") {
  const auto aligner = scratch("aligner.fsm", ntwfsm::write_machine(ntwfsm::build_aligner({})));
  auto r = run("--machine " + aligner.string() + " bestpath swum swim");
  CHECK(r.status == 0);
  CHECK(r.out.find("weight 2\n") != std::string::npos);
  CHECK(r.out.find("tape 1\tswum\n") != std::string::npos);

  r = run("--machine " + aligner.string() + " transduce gemacht machen");
  CHECK(r.status == 0);
  CHECK(r.out == "gemacht<aeps><aeps>\t<aeps><aeps>mach<aeps>en\tDDKKKKDII\t5\n");

  r = run("--machine " + aligner.string() + " --direction max bestpath a b");
  CHECK(r.status == 0);

  const auto ab = scratch("ab.fsm", "ntwfsm n=1 semiring=tropical-min\ni 0 0\nf 2 0\nt 0 1 a 1\nt 1 2 b 1\n");
  CHECK(run("--machine " + ab.string() + " bestpath ab").status == 0);
  CHECK(run("--machine " + ab.string() + " bestpath ba").status == 1);
  CHECK(run("--machine " + (ab.parent_path() / "missing.fsm").string() + " bestpath ab").status == 2);
  CHECK(run("--machine " + ab.string() + " bestpath a b").status == 2);

  const auto eps = scratch("eps.fsm", "ntwfsm n=1 semiring=tropical-min\ni 0 0\nf 1 0\nt 0 1 <eps> 1\n");
  CHECK(run("--machine " + eps.string() + " bestpath a").status == 3);
  CHECK(run("--machine " + eps.string() + " validate").status == 3);
  CHECK(run("--machine " + ab.string() + " validate").status == 0);

  const auto broken = scratch("broken.fsm", "ntwfsm n=1 semiring=tropical-min\nt 0 1\n");
  CHECK(run("--machine " + broken.string() + " validate").status == 3);
  CHECK(run("--bogus validate").status == 2);
}

TEST_CASE("oracle-check") {
  auto r = run("--seed 3 oracle-check --cases 100");
  CHECK(r.status == 0);
  CHECK(r.out.find("100/100 cases agree") != std::string::npos);
  CHECK(r.out == run("--seed 3 oracle-check --cases 100").out);

  r = run("--seed 3 oracle-check --cases 20 --inject-fault 4");
  CHECK(r.status == 1);
  CHECK(r.out.rfind("MISMATCH seed 3 case 4", 0) == 0);
}

TEST_CASE("bench") {
  auto r = run("--format csv bench --rmax 2 --trials 1");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("r,len_a,len_b,time_ms,weight,A,B,C\n", 0) == 0);
  CHECK(run("bench --rmax 0").status == 2);
}
