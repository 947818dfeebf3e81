#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "asmbij/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"signed-set bijections between alternating sign matrices, descending plane "
               "partitions, and median subsets"};
  app.require_subcommand(1);

  asmbij::RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "order parameter");
    sub->add_option("--i", cfg.i, "top-row column index, 1 <= i <= n");
    sub->add_option("--x", cfg.x, "integer parameter threaded to Gamma");
    sub->add_option("--impl", cfg.impl, "pi/Gamma implementation: fallback | parti");
    sub->add_option("--format", cfg.format, "output format: text | json");
    sub->add_option("--budget-sec", cfg.budget_sec, "time budget in seconds");
    sub->add_option("--out", cfg.out, "write output to a file instead of stdout");
  };

  auto* counts = app.add_subcommand("counts", "enumerate and cross-check the family sizes");
  add_common(counts);
  auto* table = app.add_subcommand("table", "emit a full correspondence table");
  table->add_option("--problem", cfg.problem, "main | asmdpp");
  add_common(table);
  auto* verify = app.add_subcommand("verify", "verify constructions at desk scale");
  verify->add_option("--target", cfg.target,
                     "alpha | chu-vandermonde | b-recurrence | det-product | cramer | "
                     "prep-elementary | e-zero | rotate-mt | gamma | pi | mti | "
                     "asm-recurrence | from-det | lgv | main | asmdpp | corrupted | all");
  add_common(verify);
  auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = counts->parsed() ? "counts"
               : table->parsed() ? "table"
               : verify->parsed() ? "verify"
                                  : "selftest";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "usage error: cannot open " << cfg.out << "\n";
      return 2;
    }
    return asmbij::run_command(cfg, f);
  }
  return asmbij::run_command(cfg, std::cout);
}
