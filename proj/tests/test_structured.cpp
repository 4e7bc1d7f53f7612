#include <doctest.h>

#include "brauer/curve_file.hpp"
#include "brauer/structured.hpp"

#include <random>

using namespace brauer;

TEST_CASE("records round trip with escapes") {
  Record a{"misc", {{"key", "plain"}, {"multi", "line one\nline two"}, {"slash", "a\\nb\\"}, {"empty", ""}}};
  Record b{"other", {{"k", "x=y=z"}, {"k", "second"}}};
  const std::string text = write_records({a, b});
  CHECK(text.rfind("format: brauer-out v1\n", 0) == 0);
  const auto back = read_records(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);
  CHECK(back[1].get_all("k").size() == 2);
  CHECK_THROWS_AS(back[0].get("missing"), std::out_of_range);
}

TEST_CASE("malformed structured input") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      read_records(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  CHECK(line_of("format: brauer-out v2\n") == 1);
  CHECK(line_of("format: brauer-out v1\nrecord x\nnovalue\nend\n") == 3);
  CHECK(line_of("format: brauer-out v1\nrecord x\nk=v\n") == 3);
  CHECK(line_of("format: brauer-out v1\nk=v\n") == 2);
  CHECK(line_of("format: brauer-out v1\nrecord x\nk=bad\\q\nend\n") == 3);
  CHECK(line_of("format: brauer-out v1\nrecord x\nBad=1\nend\n") == 3);
  CHECK(read_records("format: brauer-out v1\n").empty());
  CHECK_THROWS_AS(write_records({Record{"x", {{"Bad Key", "1"}}}}), std::invalid_argument);
}

TEST_CASE("random verdicts round trip") {
  std::mt19937 rng(42);
  const std::string alphabet = "abc XYZ+-()=/\\\n01";
  auto word = [&] {
    std::string s;
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    ParityVerdict v;
    v.combination = word();
    v.parity = static_cast<int>(rng() % 2);
    v.evidence = static_cast<Evidence>(rng() % 3);
    for (unsigned i = rng() % 3; i > 0; --i) v.assumptions.push_back(word());
    for (unsigned i = rng() % 3; i > 0; --i) v.notes.push_back(word());
    const auto back = read_records(write_records({to_record(v)}));
    REQUIRE(back.size() == 1);
    CHECK(verdict_from_record(back[0]) == v);
  }
}

TEST_CASE("regulator constant tables round trip") {
  for (const char* name : {"S3", "A5", "D2n:5", "Borel:5"}) {
    CAPTURE(name);
    const Group g = presets::by_name(name);
    const auto table = regconst_table(g, standard_relations(g));
    const TableSummary s = summarize(table);
    CHECK(s.entries.size() == s.relations.size());
    const auto back = read_records(write_records({to_record(s)}));
    REQUIRE(back.size() == 1);
    CHECK(table_from_record(back[0]) == s);
  }
  const Group s3 = presets::by_name("S3");
  const auto rec = to_record(summarize(regconst_table(s3, standard_relations(s3), false)));
  CHECK(rec.get("row") == "2S3+1-2C2-C3 : 3 3 3");
  CHECK_THROWS_AS(verdict_from_record(rec), std::invalid_argument);
}
