// hopt command-line driver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hopt/driver.hpp"
#include "hopt/errors.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopt: higher-order process theory checker"};
  app.require_subcommand(1);

  std::string mode = "causal";
  std::uint64_t seed = 0;
  std::size_t max_dim = 3;
  bool json = false;
  app.add_option("--mode", mode, "causal or full")->check(CLI::IsMember({"causal", "full"}));
  app.add_option("--seed", seed, "base seed")->envname("HOPT_SEED");
  app.add_option("--max-dim", max_dim, "largest base dimension in default suite ranges")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "JSON-lines output");

  std::string file, term, skeleton, dot_out;
  auto* check = app.add_subcommand("check", "run every directive of a file");
  check->add_option("file", file)->required();
  auto* eval = app.add_subcommand("eval", "evaluate a let-bound term");
  eval->add_option("file", file)->required();
  eval->add_option("--term", term)->required();
  auto* dot = app.add_subcommand("export-dot", "Graphviz for the skeletons of a file");
  dot->add_option("file", file)->required();
  dot->add_option("--skeleton", skeleton, "only this skeleton");
  dot->add_option("-o,--output", dot_out, "write to a file instead of stdout");
  auto* list = app.add_subcommand("list-theorems", "list the built-in theorem suites");

  // global flags are accepted after the subcommand as well
  for (auto* sub : {check, eval, dot, list}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : hopt::kExitError;
  }

  hopt::RunConfig cfg;
  cfg.mode = hopt::parse_mode(mode);
  cfg.seed = seed;
  cfg.max_dim = max_dim;
  cfg.json = json;
  if (!dot_out.empty()) cfg.dot_out = dot_out;

  if (list->parsed()) {
    hopt::list_theorems(json, std::cout);
    return hopt::kExitPass;
  }
  std::string source;
  if (!read_file(file, source)) {
    std::cerr << "error: cannot read '" << file << "'\n";
    return hopt::kExitError;
  }
  if (check->parsed()) return hopt::run_source(cfg, source, std::cout, std::cerr);
  if (eval->parsed()) return hopt::eval_source(cfg, source, term, std::cout, std::cerr);
  std::optional<std::string> only;
  if (!skeleton.empty()) only = skeleton;
  if (cfg.dot_out) {
    std::ofstream os(*cfg.dot_out);
    if (!os) {
      std::cerr << "error: cannot write '" << *cfg.dot_out << "'\n";
      return hopt::kExitError;
    }
    return hopt::export_dot_source(source, only, os, std::cerr);
  }
  return hopt::export_dot_source(source, only, std::cout, std::cerr);
}
