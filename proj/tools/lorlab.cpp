// lorlab command line: embedding decisions, verification campaigns against
// the counterexample families, and triangle-constant sweeps.
//
// Exit codes: 0 success/consistent, 1 verification mismatch, 2 usage error,
// 3 infeasible grid.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lorlab/counterexamples.hpp"
#include "lorlab/embedding_oracle.hpp"
#include "lorlab/triangle_lab.hpp"

using json = nlohmann::json;
using namespace lorlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rat(const std::string& text, const char* name) {
  auto r = Rat::parse(text);
  if (!r) throw UsageError(std::string("malformed exponent for ") + name + ": " + text);
  return *r;
}

ExtRat parse_ext(const std::string& text, const char* name) {
  auto r = ExtRat::parse(text);
  if (!r) throw UsageError(std::string("malformed exponent for ") + name + ": " + text);
  return *r;
}

struct QueryFlags {
  std::string pair = "BF";
  std::string d = "1";
  std::string s0, p0, q0, r0, s1, p1, q1, r1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--pair", pair, "scale pair: BF, FB, BB or FF");
    cmd->add_option("--d", d, "dimension (rational)");
    cmd->add_option("--s0", s0);
    cmd->add_option("--p0", p0);
    cmd->add_option("--q0", q0);
    cmd->add_option("--r0", r0);
    cmd->add_option("--s1", s1);
    cmd->add_option("--p1", p1);
    cmd->add_option("--q1", q1);
    cmd->add_option("--r1", r1);
  }

  void from_json(const json& j) {
    auto get = [&](const char* key, std::string& out) {
      if (j.contains(key)) {
        if (j[key].is_string())
          out = j[key].get<std::string>();
        else if (j[key].is_number())
          out = std::to_string(j[key].get<double>());
        else
          throw UsageError(std::string("config field must be string or number: ") + key);
      }
    };
    get("pair", pair);
    get("d", d);
    get("s0", s0);
    get("p0", p0);
    get("q0", q0);
    get("r0", r0);
    get("s1", s1);
    get("p1", p1);
    get("q1", q1);
    get("r1", r1);
  }

  oracle::EmbeddingQuery build() const {
    for (const auto& [name, value] :
         {std::pair<const char*, const std::string*>{"s0", &s0}, {"p0", &p0}, {"q0", &q0},
          {"r0", &r0}, {"s1", &s1}, {"p1", &p1}, {"q1", &q1}, {"r1", &r1}}) {
      if (value->empty()) throw UsageError(std::string("missing exponent --") + name);
    }
    oracle::Scale sc0, sc1;
    if (pair == "BF") {
      sc0 = oracle::Scale::B;
      sc1 = oracle::Scale::F;
    } else if (pair == "FB") {
      sc0 = oracle::Scale::F;
      sc1 = oracle::Scale::B;
    } else if (pair == "BB") {
      sc0 = oracle::Scale::B;
      sc1 = oracle::Scale::B;
    } else if (pair == "FF") {
      sc0 = oracle::Scale::F;
      sc1 = oracle::Scale::F;
    } else {
      throw UsageError("unknown pair: " + pair);
    }
    oracle::EmbeddingQuery q;
    q.source = {sc0, parse_rat(s0, "s0"), parse_rat(p0, "p0"), parse_ext(q0, "q0"),
                parse_ext(r0, "r0")};
    q.target = {sc1, parse_rat(s1, "s1"), parse_rat(p1, "p1"), parse_ext(q1, "q1"),
                parse_ext(r1, "r1")};
    q.d = parse_rat(d, "d");
    if (q.d.num <= 0) throw UsageError("d must be positive");
    return q;
  }
};

json verdict_json(const oracle::Verdict& v) {
  json out;
  out["holds"] = v.holds;
  out["theorem"] = oracle::pair_name(v.theorem);
  if (v.clause)
    out["clause"] = oracle::clause_name(*v.clause);
  else
    out["clause"] = nullptr;
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_decide(const QueryFlags& flags) {
  const auto verdict = oracle::decide(flags.build());
  std::cout << verdict_json(verdict).dump() << "\n";
  return kExitOk;
}

int cmd_verify(const QueryFlags& flags, std::vector<int> sizes, const std::string& family_override,
               const std::string& csv_path, const std::string& json_path) {
  const oracle::EmbeddingQuery query = flags.build();
  const oracle::Verdict verdict = oracle::decide(query);

  FamilySpec rule;
  if (!family_override.empty()) {
    auto fam = family_from_name(family_override);
    if (!fam) throw UsageError("unknown family: " + family_override);
    rule.family = *fam;
  } else {
    rule = verdict.holds ? natural_family(query, verdict) : select_family(query, verdict);
  }
  if (sizes.empty()) sizes = {2, 3, 4, 5};

  const RatioTable table = measure_ratio(query, rule, sizes);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot write " + csv_path);
    csv << "N,source_norm,target_norm,ratio\n";
    for (const auto& row : table.rows)
      csv << fmt(row.size) << "," << fmt(row.source_norm) << "," << fmt(row.target_norm) << ","
          << fmt(row.ratio) << "\n";
  }

  const bool consistent = (table.classification == "growth" && !verdict.holds) ||
                          (table.classification == "bounded" && verdict.holds);
  json summary;
  summary["verdict"] = verdict_json(verdict);
  summary["family"] = family_name(rule.family);
  summary["classification"] = table.classification;
  summary["consistent"] = consistent;
  if (table.slope) summary["slope"] = *table.slope;
  summary["rows"] = json::array();
  for (const auto& row : table.rows)
    summary["rows"].push_back({{"N", row.size},
                               {"source_norm", row.source_norm},
                               {"target_norm", row.target_norm},
                               {"ratio", row.ratio}});
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot write " + json_path);
    out << summary.dump(2) << "\n";
  }
  std::cout << summary.dump() << "\n";
  return consistent ? kExitOk : kExitMismatch;
}

int cmd_constants(const std::vector<std::string>& p_grid, const std::vector<std::string>& r_grid,
                  long budget, std::uint64_t seed, bool seed_set, const std::string& csv_path,
                  const std::string& json_path, const std::string& svg_path) {
  if (p_grid.empty() || r_grid.empty()) throw UsageError("empty (p, r) grid");
  if (!seed_set) throw UsageError("randomized command requires --seed");
  if (budget < 1) throw UsageError("budget must be >= 1");

  struct Cell {
    double p, r;
    ConstantReport rep;
    std::string status;
  };
  std::vector<Cell> cells;
  for (const auto& ps : p_grid) {
    for (const auto& rs : r_grid) {
      Cell cell;
      auto pv = ExtRat::parse(ps);
      auto rv = ExtRat::parse(rs);
      if (!pv || pv->is_inf() || !rv) {
        cell.status = "malformed exponent";
        cell.p = 0.0;
        cell.r = 0.0;
        cells.push_back(cell);
        continue;
      }
      cell.p = pv->value();
      cell.r = rv->value();
      if (!(cell.p > 0.0) || !(cell.r > 0.0)) {
        cell.status = "domain violation: exponents must be positive";
        cells.push_back(cell);
        continue;
      }
      if (cell.r < cell.p) {
        cell.status = "domain violation: need r >= p";
        cells.push_back(cell);
        continue;
      }
      cell.rep = empirical_constant(cell.p, cell.r, budget, seed);
      cell.status = "ok";
      cells.push_back(cell);
    }
  }

  std::ostringstream csv;
  csv << "p,r,bound_modulo_A,stw_bound,bks_constant,empirical_lower,best_configuration,status\n";
  for (const auto& c : cells) {
    auto field = [&](double v) { return std::isnan(v) ? std::string() : fmt(v); };
    csv << fmt(c.p) << "," << fmt(c.r) << ",";
    if (c.status == "ok")
      csv << field(c.rep.analytic_bound_mod_A) << "," << field(c.rep.stw) << ","
          << field(c.rep.bks) << "," << fmt(c.rep.empirical_lower) << ",\""
          << c.rep.best_configuration << "\"," << c.status << "\n";
    else
      csv << ",,,,,," << c.status << "\n";
  }
  const std::string csv_text = csv.str();
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw UsageError("cannot write " + csv_path);
    out << csv_text;
  } else {
    std::cout << csv_text;
  }

  if (!json_path.empty()) {
    json cells_json = json::array();
    for (const auto& c : cells) {
      json cell;
      cell["p"] = c.p;
      cell["r"] = std::isinf(c.r) ? json("inf") : json(c.r);
      cell["status"] = c.status;
      if (c.status == "ok") {
        auto put = [&](const char* key, double v) {
          cell[key] = std::isnan(v) ? json(nullptr) : json(v);
        };
        put("analytic_bound_mod_A", c.rep.analytic_bound_mod_A);
        put("stw_bound", c.rep.stw);
        put("bks_constant", c.rep.bks);
        cell["empirical_lower"] = c.rep.empirical_lower;
        cell["best_configuration"] = c.rep.best_configuration;
        cell["budget"] = c.rep.budget;
        cell["seed"] = c.rep.seed;
      }
      cells_json.push_back(cell);
    }
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot write " + json_path);
    out << cells_json.dump(2) << "\n";
  }

  if (!svg_path.empty()) {
    // one polyline pair (empirical, bound_modulo_A) per p row across finite r
    std::ofstream svg(svg_path);
    if (!svg) throw UsageError("cannot write " + svg_path);
    const int W = 640, H = 400, margin = 48;
    double rmin = kInf, rmax = 0.0, ymax = 1.0;
    for (const auto& c : cells) {
      if (c.status != "ok" || std::isinf(c.r)) continue;
      rmin = std::min(rmin, c.r);
      rmax = std::max(rmax, c.r);
      ymax = std::max({ymax, c.rep.empirical_lower,
                       std::isnan(c.rep.analytic_bound_mod_A) ? 0.0 : c.rep.analytic_bound_mod_A});
    }
    if (!(rmax > rmin)) rmax = rmin + 1.0;
    auto X = [&](double r) { return margin + (W - 2 * margin) * (r - rmin) / (rmax - rmin); };
    auto Y = [&](double y) { return H - margin - (H - 2 * margin) * y / (1.1 * ymax); };
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int color_idx = 0;
    for (const auto& ps : p_grid) {
      auto pv = ExtRat::parse(ps);
      if (!pv || pv->is_inf()) continue;
      const double p = pv->value();
      std::ostringstream emp, bnd;
      for (const auto& c : cells) {
        if (c.status != "ok" || c.p != p || std::isinf(c.r)) continue;
        emp << X(c.r) << "," << Y(c.rep.empirical_lower) << " ";
        if (!std::isnan(c.rep.analytic_bound_mod_A))
          bnd << X(c.r) << "," << Y(c.rep.analytic_bound_mod_A) << " ";
      }
      const char* color = colors[color_idx++ % 4];
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << emp.str()
          << "\"/>\n";
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-dasharray=\"4\" points=\"" << bnd.str() << "\"/>\n";
    }
    svg << "<text x=\"" << margin << "\" y=\"20\">empirical (solid) vs bound_modulo_A (dashed) "
        << "across r</text>\n</svg>\n";
  }
  return kExitOk;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::string> parse_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lorlab: Lorentz-space embedding laboratory"};
  app.require_subcommand(1);

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "decide an embedding query");
  QueryFlags decide_flags;
  decide_flags.add_to(decide_cmd);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "verify a query against a test family");
  QueryFlags verify_flags;
  verify_flags.add_to(verify_cmd);
  std::string sizes_text, family_override, out_csv, out_json, config_path;
  verify_cmd->add_option("--sizes", sizes_text, "comma-separated size list");
  verify_cmd->add_option("--family", family_override,
                         "family override: translation|dilation|critical_h|lattice|modulation|log");
  verify_cmd->add_option("--out-csv", out_csv, "ratio table CSV path");
  verify_cmd->add_option("--out-json", out_json, "classification JSON path");
  verify_cmd->add_option("--config", config_path, "JSON campaign config (flags override)");

  // constants
  auto* constants_cmd = app.add_subcommand("constants", "triangle-constant sweep");
  std::string p_grid_text, r_grid_text, const_csv, const_json, const_svg;
  long budget = 10000;
  std::uint64_t seed = 0;
  constants_cmd->add_option("--p-grid", p_grid_text, "comma-separated p values")->required();
  constants_cmd->add_option("--r-grid", r_grid_text, "comma-separated r values (inf allowed)")
      ->required();
  constants_cmd->add_option("--budget", budget, "family evaluations per cell");
  auto* seed_opt = constants_cmd->add_option("--seed", seed, "RNG seed (required)");
  constants_cmd->add_option("--out-csv", const_csv, "sweep CSV path (default stdout)");
  constants_cmd->add_option("--out-json", const_json, "per-cell ConstantReport JSON path");
  constants_cmd->add_option("--svg", const_svg, "optional SVG plot path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (decide_cmd->parsed()) return cmd_decide(decide_flags);
    if (verify_cmd->parsed()) {
      std::vector<int> sizes = parse_sizes(sizes_text);
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot read config " + config_path);
        json cfg;
        try {
          in >> cfg;
        } catch (const json::exception& e) {
          throw UsageError(std::string("malformed config JSON: ") + e.what());
        }
        static const std::vector<std::string> known = {"pair", "d",  "s0",    "p0",     "q0",
                                                       "r0",   "s1", "p1",    "q1",     "r1",
                                                       "sizes", "family", "out_csv", "out_json"};
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
          if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw UsageError("unknown config key: " + it.key());
        }
        verify_flags.from_json(cfg);
        if (sizes.empty() && cfg.contains("sizes")) {
          if (!cfg["sizes"].is_array()) throw UsageError("config sizes must be an array");
          for (const auto& v : cfg["sizes"]) sizes.push_back(v.get<int>());
        }
        if (family_override.empty() && cfg.contains("family"))
          family_override = cfg["family"].get<std::string>();
        if (out_csv.empty() && cfg.contains("out_csv")) out_csv = cfg["out_csv"].get<std::string>();
        if (out_json.empty() && cfg.contains("out_json"))
          out_json = cfg["out_json"].get<std::string>();
      }
      return cmd_verify(verify_flags, sizes, family_override, out_csv, out_json);
    }
    if (constants_cmd->parsed())
      return cmd_constants(parse_list(p_grid_text), parse_list(r_grid_text), budget, seed,
                           seed_opt->count() > 0, const_csv, const_json, const_svg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GridInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
