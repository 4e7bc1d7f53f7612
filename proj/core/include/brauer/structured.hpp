#pragma once

#include "brauer/parity.hpp"
#include "brauer/regconst.hpp"

#include <string>
#include <utility>
#include <vector>

namespace brauer {

// Line-oriented output:
//   format: brauer-out v1
//   record <type>
//   key=value            (repeated keys allowed; '\' and newlines escaped)
//   end
struct Record {
  std::string type;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
  // First value of key; throws std::out_of_range if absent.
  const std::string& get(const std::string& key) const;
  std::vector<std::string> get_all(const std::string& key) const;
  bool has(const std::string& key) const;
  bool operator==(const Record&) const = default;
};

inline constexpr const char* kStructuredHeader = "format: brauer-out v1";

std::string write_records(const std::vector<Record>& records);
// Throws ParseError (see curve_file.hpp) on malformed input.
std::vector<Record> read_records(const std::string& text);

// Keys: combination, parity (even|odd), evidence, assumption*, note*.
Record to_record(const ParityVerdict& v);
ParityVerdict verdict_from_record(const Record& r);

// Regulator constant table without the module data.
struct TableSummary {
  std::string group;
  std::vector<std::string> irreducibles;
  std::vector<std::string> relations;
  std::vector<std::vector<Integer>> entries;  // square class representatives
  bool operator==(const TableSummary&) const = default;
};
TableSummary summarize(const RegConstTable& t);
// Keys: group, irreducible*, row* ("<relation> : e1 e2 ...").
Record to_record(const TableSummary& t);
TableSummary table_from_record(const Record& r);

}  // namespace brauer
