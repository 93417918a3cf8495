#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cob/cli.hpp"

int main(int argc, char** argv) {
  cob::cli::RunConfig config;
  std::string format = "json";
  std::string out;
  std::string symbol;
  std::string group_file;

  CLI::App app{"Completely co-bounded norm experiments"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--n", config.n, "matrix size");
  app.add_option("--p", config.p, "Schatten exponent (number or inf)");
  app.add_option("--group", config.group, "catalog group: cyclic:k, S3, D4, Q8");
  app.add_option("--seed", config.seed, "base seed");
  app.add_option("--tol", config.tol, "assertion tolerance");
  app.add_option("--trials", config.trials, "number of seeded trials");
  app.add_option("--format", format, "json, csv or text");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--symbol", symbol, "Schur symbol file (matrix text or .json)");
  app.add_option("--group-file", group_file, "group table and irreps in the catalog text format");
  const std::map<std::string, std::string> about = {
      {"cob-schur", "cob norm of random Schur multipliers vs the modulus formula"},
      {"cb-schur", "Haagerup and diamond SDPs on random Schur multipliers"},
      {"transpose-norm", "cb norm of the n x n transposition"},
      {"sandwich", "cob norm of x -> a x b vs the Hilbert-Schmidt product"},
      {"schatten-identities", "block Schatten identities and S_p multiplier bounds"},
      {"s1-check", "S1 domination bound for dominated symbols"},
      {"group", "catalog checks and group multiplier norms"},
      {"kesten", "l1 mass vs norm of the translation modulus matrix"},
      {"compare-herz-schur", "constant symbol: Schur vs Herz-Schur cob norms"},
      {"validate", "SDP-free checks: catalogs, Schatten identities, witnesses"},
      {"report", "every suite except validate"},
  };
  for (const auto& name : cob::cli::commands()) {
    const auto it = about.find(name);
    app.add_subcommand(name, it == about.end() ? "" : it->second);
  }

  try {
    app.parse(argc, argv);
    config.format = cob::cli::parse_format(format);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (!out.empty()) config.out = out;
  if (!symbol.empty()) config.symbol_file = symbol;
  if (!group_file.empty()) config.group_file = group_file;
  return cob::cli::run(config, std::cout, std::cerr);
}
