#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "thinprod/errors.hpp"
#include "thinprod/sieve.hpp"

namespace thinprod::cli {

using nlohmann::json;

std::string to_string(Command command) {
  switch (command) {
    case Command::product: return "product";
    case Command::classify: return "classify";
    case Command::constant: return "constant";
    case Command::table: return "table";
    default: return "fit";
  }
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    default: return "text";
  }
}

std::uint64_t parse_count(const std::string& text) {
  if (text.empty() || text[0] == '-') throw std::invalid_argument("count must be positive: '" + text + "'");
  std::size_t pos = 0;
  if (text.find_first_of(".eE") == std::string::npos) {
    const std::uint64_t v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
  }
  const double v = std::stod(text, &pos);
  if (pos != text.size() || !(v >= 1.0) || v > 1e18 || std::floor(v) != v)
    throw std::invalid_argument("not a positive integer: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

namespace {

SieveConfig sieve_config(const RunRequest& request) {
  SieveConfig cfg;
  if (request.segment_size) cfg.segment_size = request.segment_size;
  cfg.threads = request.threads;
  return cfg;
}

// {3,13} mod 16 is balanced by the mu definition (13 is 1 mod 4), while the
// appendix table reproduced by `table` introduces the same selection as
// unbalanced with mu = -2. The raw values match mu = 0; flag the conflict
// wherever this selection shows up.
void note_appendix_prose(const Selection& s, std::vector<std::string>& warnings) {
  if (s.mod.q == 16 && s.classes == std::vector<std::uint32_t>{3, 13})
    warnings.push_back(
        "selection {3,13} mod 16 has mu = 0 (13 is 1 mod 4), so its products converge; "
        "the appendix prose introducing this table calls it unbalanced with mu = -2 and "
        "exponent 1/2, which the raw values themselves contradict");
}

AppendixTables reproduce_appendix(const SieveConfig& cfg) {
  AppendixTables t;
  t.checkpoints = {10'000, 100'000, 1'000'000, 10'000'000};
  t.balanced_exponents = {3, 4, 5, 6};

  // One sieve pass at modulus 64 serves every sub-modulus by aggregation.
  const ClassSeriesTable table = accumulate_classes(Modulus::from_exponent(6), t.checkpoints, cfg);

  t.balanced.assign(t.checkpoints.size(), std::vector<double>(t.balanced_exponents.size()));
  for (std::size_t c = 0; c < t.balanced_exponents.size(); ++c) {
    const Modulus mod = Modulus::from_exponent(t.balanced_exponents[c]);
    const Selection s =
        Selection::from_residues(mod, {1, static_cast<std::int64_t>(mod.q) - 1});
    const ProductSeries series = partial_products(table, s);
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r)
      t.balanced[r][c] = series.checkpoints[r].product;
  }

  const Selection u = Selection::from_residues(Modulus::from_exponent(4), {3, 13});
  const ProductSeries raw = partial_products(table, u);
  for (std::size_t r = 0; r < t.checkpoints.size(); ++r) {
    const double value = raw.checkpoints[r].product;
    t.unbalanced_raw.push_back(value);
    t.unbalanced_normalized.push_back(value / std::sqrt(std::log(double(t.checkpoints[r]))));
  }
  return t;
}

std::string fixed10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

// Shortest decimal that round-trips binary64 exactly.
std::string full(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string join_classes(const std::vector<std::uint32_t>& classes) {
  std::string s;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(classes[i]);
  }
  return s;
}

std::string render_json(const RunReport& report) {
  json j;
  j["meta"] = {{"P0", report.request.P0}, {"method", thinprod::to_string(report.request.method)}};
  if (!report.warnings.empty()) j["warnings"] = report.warnings;

  if (report.request.command != Command::table) {
    j["modulus"] = report.modulus;
    j["classes"] = report.classes;
    j["mu"] = report.mu;
    j["predicted_exponent"] = to_string(report.predicted_exponent);
  }
  if (report.request.command == Command::classify) j["converges"] = report.converges;

  if (report.series) {
    json rows = json::array();
    for (const ProductCheckpoint& c : report.series->checkpoints)
      rows.push_back({{"x", c.x}, {"product", c.product}, {"log_product", c.log_product}});
    j["checkpoints"] = rows;
  }
  if (report.constant || !report.class_constants.empty()) {
    json c;
    if (report.constant) {
      c["K"] = report.constant->K;
      if (report.constant->williams_K) c["williams_K"] = *report.constant->williams_K;
      if (report.constant->direct_K) {
        c["direct_K"] = *report.constant->direct_K;
        c["direct_x"] = report.constant->direct_x;
      }
      if (report.constant->discrepancy) c["discrepancy"] = *report.constant->discrepancy;
    }
    for (const auto& [a, cc] : report.class_constants)
      c["per_class"][std::to_string(a)] = {{"C", cc.C}, {"D", cc.D}};
    j["constants"] = c;
  }
  if (report.fit)
    j["fit"] = {{"slope", report.fit->slope},
                {"intercept", report.fit->intercept},
                {"residual", report.fit->residual},
                {"points", report.fit->points},
                {"theoretical_exponent", to_string(report.predicted_exponent)}};
  if (report.table) {
    const AppendixTables& t = *report.table;
    json balanced = json::array();
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r) {
      json row = {{"x", t.checkpoints[r]}};
      for (std::size_t c = 0; c < t.balanced_exponents.size(); ++c)
        row["mod" + std::to_string(1u << t.balanced_exponents[c])] = t.balanced[r][c];
      balanced.push_back(row);
    }
    json unbalanced = json::array();
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r)
      unbalanced.push_back({{"x", t.checkpoints[r]},
                            {"raw", t.unbalanced_raw[r]},
                            {"normalized", t.unbalanced_normalized[r]}});
    j["tables"] = {{"balanced", balanced}, {"unbalanced_3_13_mod16", unbalanced}};
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const RunReport& report) {
  std::string out;
  for (const std::string& w : report.warnings) out += "# warning: " + w + "\n";

  if (report.table) {
    const AppendixTables& t = *report.table;
    out += "x";
    for (int m : t.balanced_exponents) out += ",mod" + std::to_string(1u << m);
    out += "\n";
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r) {
      out += std::to_string(t.checkpoints[r]);
      for (double v : t.balanced[r]) out += "," + full(v);
      out += "\n";
    }
    out += "\nx,raw,normalized\n";
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r)
      out += std::to_string(t.checkpoints[r]) + "," + full(t.unbalanced_raw[r]) + "," +
             full(t.unbalanced_normalized[r]) + "\n";
    return out;
  }
  if (report.series && report.request.command == Command::product) {
    out += "x,product,log_product\n";
    for (const ProductCheckpoint& c : report.series->checkpoints)
      out += std::to_string(c.x) + "," + full(c.product) + "," + full(c.log_product) + "\n";
    return out;
  }

  out += "name,value\n";
  out += "modulus," + std::to_string(report.modulus) + "\n";
  out += "classes,\"" + join_classes(report.classes) + "\"\n";
  out += "mu," + std::to_string(report.mu) + "\n";
  out += "predicted_exponent," + to_string(report.predicted_exponent) + "\n";
  if (report.request.command == Command::classify)
    out += std::string("converges,") + (report.converges ? "yes" : "no") + "\n";
  if (report.constant) {
    out += "K," + full(report.constant->K) + "\n";
    if (report.constant->williams_K) out += "williams_K," + full(*report.constant->williams_K) + "\n";
    if (report.constant->direct_K) out += "direct_K," + full(*report.constant->direct_K) + "\n";
    if (report.constant->discrepancy)
      out += "discrepancy," + full(*report.constant->discrepancy) + "\n";
  }
  for (const auto& [a, cc] : report.class_constants) {
    out += "C_" + std::to_string(a) + "," + full(cc.C) + "\n";
    out += "D_" + std::to_string(a) + "," + full(cc.D) + "\n";
  }
  if (report.fit) {
    out += "slope," + full(report.fit->slope) + "\n";
    out += "intercept," + full(report.fit->intercept) + "\n";
    out += "residual," + full(report.fit->residual) + "\n";
    out += "points," + std::to_string(report.fit->points) + "\n";
  }
  return out;
}

std::string render_text(const RunReport& report) {
  std::string out;
  char line[160];

  if (report.request.command != Command::table) {
    out += "modulus: " + std::to_string(report.modulus) + "\n";
    out += "classes: " + join_classes(report.classes) + "\n";
    out += "mu: " + std::to_string(report.mu) + "\n";
    out += "predicted_exponent: " + to_string(report.predicted_exponent) + "\n";
  }
  if (report.request.command == Command::classify)
    out += std::string("converges: ") + (report.converges ? "yes" : "no") + "\n";
  for (const std::string& w : report.warnings) out += "warning: " + w + "\n";

  if (report.series && report.request.command == Command::product) {
    std::snprintf(line, sizeof line, "%12s  %14s  %14s\n", "x", "product", "log_product");
    out += line;
    for (const ProductCheckpoint& c : report.series->checkpoints) {
      std::snprintf(line, sizeof line, "%12llu  %14.10f  %14.10f\n",
                    static_cast<unsigned long long>(c.x), c.product, c.log_product);
      out += line;
    }
  }
  if (report.constant) {
    const LimitConstant& k = *report.constant;
    out += "K: " + fixed10(k.K) + " (method " + thinprod::to_string(k.method) +
           ", P0 " + std::to_string(k.P0) + ")\n";
    if (k.williams_K) out += "williams_K: " + fixed10(*k.williams_K) + "\n";
    if (k.direct_K)
      out += "direct_K: " + fixed10(*k.direct_K) + " (x " + std::to_string(k.direct_x) + ")\n";
    if (k.discrepancy) out += "discrepancy: " + fixed10(*k.discrepancy) + "\n";
  }
  for (const auto& [a, cc] : report.class_constants)
    out += "class " + std::to_string(a) + ": C " + fixed10(cc.C) + ", D " + fixed10(cc.D) + "\n";
  if (report.fit) {
    out += "slope: " + fixed10(report.fit->slope) + "\n";
    out += "intercept: " + fixed10(report.fit->intercept) + "\n";
    out += "residual: " + fixed10(report.fit->residual) + "\n";
    out += "points: " + std::to_string(report.fit->points) + "\n";
    out += "theoretical_exponent: " + to_string(report.predicted_exponent) + "\n";
  }
  if (report.table) {
    const AppendixTables& t = *report.table;
    out += "Balanced products over p = +-1 (mod 2^m):\n\n";
    out += "| x |";
    for (int m : t.balanced_exponents) out += " mod " + std::to_string(1u << m) + " |";
    out += "\n|---|";
    for (std::size_t c = 0; c < t.balanced_exponents.size(); ++c) out += "---|";
    out += "\n";
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r) {
      out += "| " + std::to_string(t.checkpoints[r]) + " |";
      for (double v : t.balanced[r]) out += " " + fixed10(v) + " |";
      out += "\n";
    }
    out += "\nProducts over p = 3, 13 (mod 16), raw and divided by sqrt(log x):\n\n";
    out += "| x | raw | normalized |\n|---|---|---|\n";
    for (std::size_t r = 0; r < t.checkpoints.size(); ++r)
      out += "| " + std::to_string(t.checkpoints[r]) + " | " + fixed10(t.unbalanced_raw[r]) +
             " | " + fixed10(t.unbalanced_normalized[r]) + " |\n";
  }
  return out;
}

}  // namespace

RunReport run(const RunRequest& request) {
  RunReport report;
  report.request = request;
  const SieveConfig cfg = sieve_config(request);

  if (request.command == Command::table) {
    if (request.reproduce != "appendix")
      throw std::invalid_argument("table supports only --reproduce appendix");
    report.table = reproduce_appendix(cfg);
    note_appendix_prose(Selection::from_residues(Modulus::from_exponent(4), {3, 13}),
                        report.warnings);
    return report;
  }

  const Modulus mod = Modulus::from_exponent(request.modulus_exponent);
  const Selection sel = Selection::from_residues(mod, request.classes);
  report.modulus = mod.q;
  report.classes = sel.classes;
  report.mu = sel.mu;
  report.predicted_exponent = sel.predicted_exponent;
  report.converges = sel.mu == 0;
  note_appendix_prose(sel, report.warnings);

  switch (request.command) {
    case Command::classify:
      break;

    case Command::product:
    case Command::fit: {
      if (request.checkpoints.empty())
        throw InsufficientDataError("at least one checkpoint is required");
      if (request.limit && request.limit < request.checkpoints.back())
        throw std::invalid_argument("limit is below the largest checkpoint");
      report.series = partial_products(sel, request.checkpoints, cfg);
      if (request.command == Command::fit) report.fit = fit_exponent(*report.series);
      break;
    }

    case Command::constant: {
      UnitGroup group(mod);
      if (sel.mu != 0 && request.allow_unbalanced) {
        report.warnings.push_back("selection is unbalanced (mu = " + std::to_string(sel.mu) +
                                  "); no finite limit exists; reporting per-class constants only");
        const ConstantsBundle bundle = constants_bundle(group, request.P0, cfg);
        for (std::uint32_t a : sel.classes)
          report.class_constants[a] = {bundle.C.at(a), bundle.D.at(a)};
      } else {
        const std::uint64_t direct_x = request.limit ? request.limit : 10'000'000;
        report.constant = limit_constant(group, sel, request.method, request.P0, direct_x, cfg);
      }
      break;
    }

    case Command::table:
      break;  // handled above
  }
  return report;
}

std::string render(const RunReport& report) {
  switch (report.request.format) {
    case OutputFormat::json: return render_json(report);
    case OutputFormat::csv: return render_csv(report);
    default: return render_text(report);
  }
}

}  // namespace thinprod::cli
