#pragma once

// Command surface shared by the binary and the tests: counting reports,
// correspondence tables, verification targets, and the self-test suite.

#include <iosfwd>
#include <string>

#include "asmbij/signed_set.hpp"

namespace asmbij {

struct RunConfig {
  std::string command;           // counts | table | verify | selftest
  std::string problem = "main";  // for table: main | asmdpp
  std::string target = "all";    // for verify
  i64 n = 3;
  i64 i = 1;
  i64 x = 0;
  std::string impl = "fallback";  // fallback | parti
  std::string format = "text";    // text | json
  double budget_sec = 600.0;
  std::string out;  // optional output file

  void validate() const;  // throws on violated invariants
};

// exit codes: 0 pass, 1 verification failure, 2 usage error
int run_command(const RunConfig& cfg, std::ostream& os);

int cmd_counts(const RunConfig& cfg, std::ostream& os);
int cmd_table(const RunConfig& cfg, std::ostream& os);
int cmd_verify(const RunConfig& cfg, std::ostream& os);
int cmd_selftest(const RunConfig& cfg, std::ostream& os);

// One line per acceptance criterion; true iff everything passed in budget.
bool acceptance_suite(double budget_sec, std::ostream& os);

// rendering helpers (text format)
std::string render_bset(const Elem& e);
std::string render_asm(const Elem& e);
std::string render_dpp(const Elem& e);
std::string mt_pretty(const std::vector<Ints>& rows);

}  // namespace asmbij
