#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "thinprod/errors.hpp"

namespace {

int run_and_emit(const thinprod::cli::RunRequest& request, const std::string& out_path) {
  try {
    const thinprod::cli::RunReport report = thinprod::cli::run(request);
    const std::string text = thinprod::cli::render(report);
    if (out_path.empty()) {
      std::fputs(text.c_str(), stdout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
        return 1;
      }
      out << text;
    }
    return 0;
  } catch (const thinprod::InvalidResidueError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const thinprod::CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const thinprod::UnbalancedSelectionError& e) {
    std::fprintf(stderr, "error: %s (pass --allow-unbalanced for per-class constants)\n",
                 e.what());
    return 4;
  } catch (const thinprod::InsufficientDataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinned Euler products of A(p) = (p - chi4(p))/(p + chi4(p)) over primes in "
               "residue classes mod 2^m"};
  app.require_subcommand(1);

  thinprod::cli::RunRequest request;
  std::string out_path;
  std::string format = "text";
  std::string method = "williams";
  std::string limit_arg;
  std::string p0_arg;
  std::vector<std::string> checkpoint_args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out_path, "write output to FILE instead of stdout");
    cmd->add_option("--threads", request.threads,
                    "sieve worker threads (default all cores; never changes values)");
    cmd->add_option("--segment-size", request.segment_size,
                    "sieve segment size in odd numbers (never changes values)");
  };
  auto add_selection = [&](CLI::App* cmd) {
    cmd->add_option("-m,--modulus-exponent", request.modulus_exponent,
                    "modulus exponent: q = 2^m")
        ->required();
    cmd->add_option("--classes", request.classes, "odd residue classes mod 2^m")
        ->required()
        ->delimiter(',');
  };
  auto add_checkpoints = [&](CLI::App* cmd) {
    cmd->add_option("--checkpoints", checkpoint_args,
                    "ascending checkpoint list; scientific notation accepted")
        ->required()
        ->delimiter(',');
  };

  CLI::App* product = app.add_subcommand("product", "checkpointed partial products of A(p)");
  add_selection(product);
  add_checkpoints(product);
  product->add_option("--limit", limit_arg, "cap; must be >= the largest checkpoint");
  add_common(product);

  CLI::App* classify = app.add_subcommand(
      "classify", "mu, predicted (log x)^(-2 mu/phi) exponent, and convergence verdict");
  add_selection(classify);
  add_common(classify);

  CLI::App* constant =
      app.add_subcommand("constant", "limiting constant K(q,S) for balanced selections");
  add_selection(constant);
  constant->add_option("--p0,--P0", p0_arg, "Euler product truncation (default 1e6)");
  constant->add_option("--method", method, "constant evaluation route")
      ->check(CLI::IsMember({"williams", "direct", "both"}));
  constant->add_flag("--allow-unbalanced", request.allow_unbalanced,
                     "report per-class C, D for unbalanced selections");
  constant->add_option("--limit", limit_arg, "prime cutoff for the direct route (default 1e7)");
  add_common(constant);

  CLI::App* table = app.add_subcommand("table", "regenerate the reference tables");
  table->add_option("--reproduce", request.reproduce, "which table set; only: appendix")
      ->required();
  add_common(table);

  CLI::App* fit =
      app.add_subcommand("fit", "least-squares slope of log P_S(x) against log log x");
  add_selection(fit);
  add_checkpoints(fit);
  fit->add_option("--limit", limit_arg, "cap; must be >= the largest checkpoint");
  add_common(fit);

  CLI11_PARSE(app, argc, argv);

  if (product->parsed()) request.command = thinprod::cli::Command::product;
  if (classify->parsed()) request.command = thinprod::cli::Command::classify;
  if (constant->parsed()) request.command = thinprod::cli::Command::constant;
  if (table->parsed()) request.command = thinprod::cli::Command::table;
  if (fit->parsed()) request.command = thinprod::cli::Command::fit;

  try {
    for (const std::string& c : checkpoint_args)
      request.checkpoints.push_back(thinprod::cli::parse_count(c));
    if (!limit_arg.empty()) request.limit = thinprod::cli::parse_count(limit_arg);
    if (!p0_arg.empty()) request.P0 = thinprod::cli::parse_count(p0_arg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  if (format == "json") request.format = thinprod::cli::OutputFormat::json;
  if (format == "csv") request.format = thinprod::cli::OutputFormat::csv;
  if (method == "direct") request.method = thinprod::CMethod::direct;
  if (method == "both") request.method = thinprod::CMethod::both;

  return run_and_emit(request, out_path);
}
