#include <doctest.h>

#include "brauer/structured.hpp"

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace brauer;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stdout of the CLI with the given arguments; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(BRAUER_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("regconst and relations") {
  auto r = run("regconst S3");
  CHECK(r.status == 0);
  CHECK(has(r, "2S3+1-2C2-C3 : 3 3 3"));
  r = run("relations C5");
  CHECK(r.status == 0);
  CHECK(has(r, "lattice rank 0"));
  r = run("relations S3");
  CHECK(has(r, "lattice rank 1"));
  CHECK(has(r, "2S3+1-2C2-C3"));
  r = run("regconst A5");
  CHECK(has(r, "C3-C5-2A4+2A5 : 15 15 3 5"));
  CHECK(has(r, "prime 2"));
  r = run("regconst \"(0 1 2);(0 1)\"");
  CHECK(r.status == 0);
  CHECK(has(r, ": 3 3 3"));
  CHECK(run("regconst S3 --relation 1-C2").status == 2);
}

TEST_CASE("isogeny-check") {
  auto r = run("isogeny-check --family borel --p 3");
  CHECK(r.status == 0);
  CHECK(has(r, "|det f| = 63"));
  CHECK(has(r, "matches printed matrix: yes"));
  r = run("isogeny-check --family dihedral --p 5");
  CHECK(has(r, "det alpha2 = 2000, 2^(n-1) n^3 = 2000: yes"));
  CHECK(run("isogeny-check --family borel --p 4").status == 2);
}

TEST_CASE("parity commands") {
  auto r = run("parity --tower borel --p 3 --curve x1_11.toml --m 22");
  CHECK(r.status == 0);
  CHECK(has(r, "Tamagawa quotient class: 3"));
  CHECK(has(r, "rk(E/K)+rk(E/M)+rk(E/L) is odd  [evidence: both]"));
  r = run("falsetate --p 3 --m 2 --n 3 --curve 49a1.toml");
  CHECK(has(r, "3   -1       -1       3           27"));
  r = run("dihedral --p 5 --curve dihedral5_synthetic.toml");
  CHECK(has(r, "|S1| = 1, |S2| = 1"));
  CHECK(has(r, "is even"));
  r = run("parity --tower s3 --curve s3_split.toml");
  CHECK(has(r, "rk(E/K)+rk(E/M)+rk(E/L) is odd"));
}

TEST_CASE("exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("regconst").status == 2);
  CHECK(run("parity --curve /nonexistent.toml").status == 2);
  CHECK(run("parity --curve x1_11.toml --m 8").status == 2);
  CHECK(run("dihedral --p 5 --curve x1_11.toml").status == 2);
  // ramified at 2 with additive reduction there
  CHECK(run("falsetate --p 3 --m 2 --curve " BRAUER_TEST_DATA "/additive_at_2.toml").status == 1);
  CHECK(run("parity --curve " BRAUER_TEST_DATA "/bad_key.toml").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("structured output parses back") {
  for (const char* args : {"--structured regconst A5", "--structured relations S4",
                           "--structured parity --p 3 --curve x1_11.toml --m 11",
                           "--structured --seed 5 falsetate --p 3 --m 2 --curve 49a1.toml",
                           "--structured dihedral --p 5 --curve dihedral5_synthetic.toml",
                           "--structured isogeny-check --p 5"}) {
    CAPTURE(args);
    const auto r = run(args);
    CHECK(r.status == 0);
    const auto recs = read_records(r.out);
    REQUIRE(recs.size() >= 2);
    CHECK(recs[0].type == "run");
    CHECK(read_records(write_records(recs)) == recs);
  }
  const auto recs = read_records(run("--structured parity --p 3 --curve x1_11.toml --m 11").out);
  CHECK(recs[0].get("seed") == "20261019");
  CHECK(read_records(run("--structured --seed 5 relations S3").out)[0].get("seed") == "5");
  const auto v = verdict_from_record(recs[1]);
  CHECK(v.parity == 1);
  CHECK(v.evidence == Evidence::both);
  const auto t = table_from_record(read_records(run("--structured regconst S3").out)[1]);
  CHECK(t.relations == std::vector<std::string>{"2S3+1-2C2-C3"});
}
