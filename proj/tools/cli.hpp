#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinprod/constants.hpp"
#include "thinprod/products.hpp"
#include "thinprod/residue_group.hpp"

namespace thinprod::cli {

enum class Command { product, classify, constant, table, fit };
enum class OutputFormat { json, csv, text };

std::string to_string(Command command);
std::string to_string(OutputFormat format);

// Accepts exact integers ("250000") and scientific notation ("1e6", "2.5e5");
// anything non-integral or non-positive is rejected.
std::uint64_t parse_count(const std::string& text);

struct RunRequest {
  Command command = Command::product;
  int modulus_exponent = 2;
  std::vector<std::int64_t> classes;
  std::uint64_t limit = 0;  // 0: largest checkpoint (product/fit), 1e7 (constant --method direct)
  std::vector<std::uint64_t> checkpoints;
  OutputFormat format = OutputFormat::text;
  std::uint64_t P0 = 1'000'000;
  CMethod method = CMethod::williams;
  bool allow_unbalanced = false;
  std::string reproduce;   // table subcommand: must be "appendix"
  unsigned threads = 0;    // 0: all cores
  std::size_t segment_size = 0;  // 0: library default
};

struct ClassConstants {
  double C = 0.0;
  double D = 0.0;
};

// Both tables emitted by `table --reproduce appendix`: balanced products over
// {+-1 mod 2^m} for m = 3..6, and the {3,13} mod 16 series raw and divided
// by sqrt(log x), each at x = 10^4..10^7.
struct AppendixTables {
  std::vector<std::uint64_t> checkpoints;
  std::vector<int> balanced_exponents;
  std::vector<std::vector<double>> balanced;  // [checkpoint][exponent]
  std::vector<double> unbalanced_raw;
  std::vector<double> unbalanced_normalized;
};

struct RunReport {
  RunRequest request;
  std::uint32_t modulus = 0;
  std::vector<std::uint32_t> classes;  // normalized, ascending
  int mu = 0;
  Rational predicted_exponent;
  bool converges = false;
  std::optional<ProductSeries> series;
  std::optional<LimitConstant> constant;
  std::map<std::uint32_t, ClassConstants> class_constants;  // unbalanced route
  std::optional<ExponentFit> fit;
  std::optional<AppendixTables> table;
  std::vector<std::string> warnings;
};

RunReport run(const RunRequest& request);

// Serializes per request.format: JSON round-trips byte-identically through
// parse/re-emit, CSV carries a header row and full binary64 precision, text
// uses fixed 10 decimals.
std::string render(const RunReport& report);

}  // namespace thinprod::cli
