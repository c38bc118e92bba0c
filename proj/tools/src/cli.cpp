// Copyright 2026 The cploss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cploss_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "cploss/analysis.hpp"
#include "cploss/composite.hpp"
#include "cploss/error.hpp"
#include "cploss/experiments.hpp"
#include "cploss/expression.hpp"
#include "cploss/link.hpp"
#include "cploss/loss_spec.hpp"
#include "cploss/proper_loss.hpp"
#include "cploss/robustness.hpp"
#include "cploss/weight.hpp"
#include "json.hpp"

namespace cploss::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "cploss/1";

struct Options {
  std::string format;  // empty: the command's default
  int grid_size = 999;
  std::optional<double> tol;
  bool strict = false;
};

Json report(std::string_view command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Inline JSON or a file holding it.
Json load_document(const std::string& text) {
  std::string body = text;
  const auto i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos || text[i] != '{') {
    std::ifstream in(text);
    if (!in) throw DomainError("cannot read " + text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

std::string doc_string(const Json& doc, const char* key,
                       const std::string& fallback = {}) {
  if (!doc.contains(key)) {
    if (!fallback.empty()) return fallback;
    throw DomainError(std::string("missing \"") + key + "\"");
  }
  if (!doc.at(key).is_string()) {
    throw DomainError(std::string("\"") + key + "\" must be a string");
  }
  return doc.at(key).get<std::string>();
}

RealFn compiled(const std::string& text, const std::string& variable) {
  const Expression e = Expression::compile(text, variable);
  return [e](double x) { return e(x); };
}

Label parse_label(const std::string& y) {
  if (y == "+1" || y == "1") return Label::positive;
  if (y == "-1") return Label::negative;
  throw DomainError("--y must be +1 or -1");
}

void require_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0, 1]");
  }
}

Link link_by_name(const std::string& name, const WeightFunction* wf) {
  if (name == "canonical") {
    if (wf == nullptr) throw DomainError("canonical link needs a weight");
    return canonical_link(*wf);
  }
  return catalog_link(name);
}

// Writes a table as CSV or as JSON rows, to `path` if given.
void write_table(std::ostream& out, const Options& opt,
                 const std::string& default_format, Json meta,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows,
                 const std::string& path) {
  const std::string format = opt.format.empty() ? default_format : opt.format;
  std::ostringstream body;
  if (format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      body << (i ? "," : "") << columns[i];
    }
    body << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        body << (i ? "," : "") << fmt17(row[i]);
      }
      body << '\n';
    }
  } else {
    Json j = meta;
    j["columns"] = columns;
    j["rows"] = rows;
    body << j.dump(2) << '\n';
  }
  if (path.empty()) {
    out << body.str();
    return;
  }
  std::ofstream file(path);
  if (!file) throw DomainError("cannot write " + path);
  file << body.str();
  meta["out"] = path;
  meta["format"] = format;
  meta["rows"] = rows.size();
  emit(out, meta);
}

const char* weight_formula(std::string_view name) {
  if (name == "zero-one") return "2 delta(c - 1/2)";
  if (name == "cost") return "delta(c - c0)";
  if (name == "square") return "1";
  if (name == "log") return "1 / (c (1 - c))";
  if (name == "boosting") return "1 / (c (1 - c))^(3/2)";
  if (name == "w1-over-c") return "1 / c";
  if (name == "w1-over-1mc") return "1 / (1 - c)";
  if (name == "minimal") return "min(1/c, 1/(1 - c)) / 2";
  return "";
}

const char* link_formula(std::string_view name) {
  if (name == "identity") return "c";
  if (name == "logit") return "log(c / (1 - c))";
  if (name == "cll") return "log(-log(1 - c))";
  if (name == "square-link") return "c^2";
  if (name == "cosine") return "1 - cos(pi c)";
  return "";
}

int cmd_catalog(std::ostream& out) {
  Json j = report("catalog");
  Json weights = Json::array();
  for (const auto& name : catalog_weight_names()) {
    Json w{{"name", name}, {"formula", weight_formula(name)}};
    w["params"] = name == "cost" ? Json::array({"c0"}) : Json::array();
    weights.push_back(w);
  }
  Json links = Json::array();
  for (const auto& name : catalog_link_names()) {
    const Link link = catalog_link(name);
    links.push_back({{"name", name},
                     {"formula", link_formula(name)},
                     {"range", {link.range().lo, link.range().hi}}});
  }
  links.push_back({{"name", "canonical"}, {"formula", "W(c) - W(1/2)"}});
  j["weights"] = weights;
  j["links"] = links;
  emit(out, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Composite binary losses: evaluation and certification",
               "cploss"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  double tol = 0.0;
  app.add_option("--format", opt.format, "Output format for tables")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid-size", opt.grid_size, "Interior grid points")
      ->check(CLI::Range(3, 10000000));
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance override")
                      ->check(CLI::PositiveNumber);
  app.add_flag("--strict", opt.strict,
               "Exit 1 when a certification comes out negative");

  std::string loss_text, link_name, y_text, partials_path, half_path,
      side_text = "lower", phi_text, weight_text, out_path;
  double etahat = 0.0, v = 0.0, eta = 0.0, c = 0.5, c0 = 0.5, alpha = 0.0,
         x = 0.0, vmin = -8.0, vmax = 8.0;
  bool bayes = false, want_regret = false, oracle = false, curve = false;

  auto* catalog = app.add_subcommand("catalog", "List weights and links");

  auto* eval = app.add_subcommand("eval", "Partial or composite loss value");
  eval->add_option("--loss", loss_text, "Loss spec (JSON or file)")
      ->required();
  eval->add_option("--y", y_text, "Label +1 or -1")->required();
  auto* eval_etahat = eval->add_option("--etahat", etahat, "Prediction");
  eval->add_option("--link", link_name, "Link overriding the spec");
  auto* eval_v = eval->add_option("--v", v, "Score");

  auto* risk = app.add_subcommand("risk", "Conditional and Bayes risk");
  risk->add_option("--loss", loss_text, "Loss spec")->required();
  risk->add_option("--eta", eta, "Class probability")->required();
  auto* risk_etahat = risk->add_option("--etahat", etahat, "Prediction");
  risk->add_flag("--bayes", bayes, "Report the Bayes risk");
  risk->add_flag("--regret", want_regret, "Report the regret");

  auto* proper = app.add_subcommand("check-proper",
                                    "Properness test of two partial losses");
  proper->add_option("--partials", partials_path,
                     "JSON {\"pos\": EXPR, \"neg\": EXPR} or a file")
      ->required();

  auto* convex = app.add_subcommand("check-convexity",
                                    "Convexity of a composite loss");
  convex->add_option("--loss", loss_text, "Loss spec")->required();
  convex->add_flag("--oracle", oracle, "Use the numerical oracle");

  auto* region = app.add_subcommand("region", "Allowable weight region");
  region->add_option("--link", link_name, "Catalog link")->required();
  region->add_option("--out", out_path, "Output file");

  auto* calib = app.add_subcommand("check-calibration",
                                   "Classification calibration at c");
  calib->add_option("--loss", loss_text, "Loss spec")->required();
  calib->add_option("--c", c, "Threshold")->required();

  auto* recon = app.add_subcommand("reconstruct-symmetric",
                                   "Symmetric loss from half a partial");
  recon->add_option("--half", half_path,
                    "JSON {\"expr\": EXPR, \"variable\": \"p\"} or a file")
      ->required();
  recon->add_option("--side", side_text, "Half supplied")
      ->check(CLI::IsMember({"lower", "upper"}));

  auto* mlink = app.add_subcommand("margin-link", "Link of a margin loss");
  mlink->add_option("--phi", phi_text, "exponential, logistic, hinge, zhang:A")
      ->required();
  mlink->add_option("--vmin", vmin, "Smallest score");
  mlink->add_option("--vmax", vmax, "Largest score");
  mlink->add_option("--out", out_path, "Output file");

  auto* robust = app.add_subcommand("robustness", "Label-noise robustness");
  auto* robust_c0 = robust->add_option("--c0", c0, "Cost threshold");
  auto* robust_w = robust->add_option("--weight", weight_text, "Weight spec");
  robust_c0->excludes(robust_w);
  robust->add_option("--alpha", alpha, "Flip probability")->required();

  auto* surrogate = app.add_subcommand("surrogate-experiment",
                                       "Two-surrogate linear-class experiment");

  auto* bound = app.add_subcommand("regret-bound",
                                   "Regret bound of the minimal loss");
  auto* bound_x = bound->add_option("--x", x, "Regret level");
  auto* bound_curve = bound->add_flag("--curve", curve, "Tabulate on [0, 1]");
  bound_x->excludes(bound_curve);
  bound->add_option("--out", out_path, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (tol_opt->count() > 0) opt.tol = tol;

  try {
    const std::vector<double> grid = interior_grid(opt.grid_size);

    if (catalog->parsed()) return cmd_catalog(out);

    if (eval->parsed()) {
      const Label y = parse_label(y_text);
      const LossSpec spec = parse_loss_spec(loss_text);
      const ProperLoss base = from_weight(spec.weight);
      Json j = report("eval");
      j["loss"] = base.name();
      j["y"] = y == Label::positive ? 1 : -1;
      if (eval_v->count() > 0) {
        std::optional<Link> link = spec.link;
        if (!link_name.empty()) link = link_by_name(link_name, &spec.weight);
        if (!link) throw DomainError("--v needs a link");
        const CompositeLoss cl = make_composite(base, *link);
        if (!link->range().contains(v)) {
          throw DomainError("--v lies outside the link range");
        }
        j["link"] = link->name();
        j["v"] = v;
        j["etahat"] = link->q(v);
        j["value"] = cl.ell(y, v);
      } else {
        if (eval_etahat->count() == 0) {
          throw DomainError("eval needs --etahat or --v");
        }
        require_unit(etahat, "--etahat");
        j["etahat"] = etahat;
        j["value"] = base.ell(y, etahat);
      }
      emit(out, j);
      return kOk;
    }

    if (risk->parsed()) {
      const ProperLoss loss = from_weight(parse_loss_spec(loss_text).weight);
      require_unit(eta, "--eta");
      Json j = report("risk");
      j["loss"] = loss.name();
      j["eta"] = eta;
      if (risk_etahat->count() > 0) {
        j["etahat"] = etahat;
        j["conditional_risk"] = conditional_risk(loss, eta, etahat);
      } else if (!bayes) {
        throw DomainError("risk needs --etahat or --bayes");
      }
      if (bayes) j["bayes_risk"] = bayes_risk(loss, eta);
      if (want_regret) {
        if (risk_etahat->count() == 0) {
          throw DomainError("--regret needs --etahat");
        }
        j["regret"] = regret(loss, eta, etahat);
      }
      emit(out, j);
      return kOk;
    }

    if (proper->parsed()) {
      const Json doc = load_document(partials_path);
      const std::string var = doc_string(doc, "variable", "p");
      const RealFn pos = compiled(doc_string(doc, "pos"), var);
      const RealFn neg = compiled(doc_string(doc, "neg"), var);
      const ProperCheck check =
          check_proper(pos, neg, grid, opt.tol.value_or(1e-6));
      Json j = report("check-proper");
      j["proper"] = check.proper;
      j["max_residual"] = check.max_residual;
      Json w = Json::array();
      for (double p : grid) w.push_back({p, check.weight_estimate.w(p)});
      j["weight"] = w;
      emit(out, j);
      return opt.strict && !check.proper ? kNegative : kOk;
    }

    if (convex->parsed()) {
      const LossSpec spec = parse_loss_spec(loss_text);
      const Link link = spec.link ? *spec.link : catalog_link("identity");
      ConvexityReport rep;
      if (oracle) {
        const CompositeLoss cl = make_composite(from_weight(spec.weight), link);
        rep = convexity_oracle(cl, score_grid_for(link, grid),
                               opt.tol.value_or(1e-8));
      } else {
        rep = convexity_characterization(spec.weight, link, grid,
                                         opt.tol.value_or(1e-9));
      }
      Json j = report("check-convexity");
      j["loss"] = spec.weight.name();
      j["link"] = link.name();
      j["method"] = oracle ? "oracle" : "characterization";
      j["convex"] = rep.convex;
      Json vs = Json::array();
      for (const Violation& vi : rep.violations) {
        vs.push_back({{"x", vi.x},
                      {"side", vi.side == BoundSide::lower ? "lower" : "upper"},
                      {"lhs", vi.lhs},
                      {"rhs", vi.rhs}});
      }
      j["violations"] = vs;
      emit(out, j);
      return opt.strict && !rep.convex ? kNegative : kOk;
    }

    if (region->parsed()) {
      const Link link = catalog_link(link_name);
      const RegionCurve rc = allowable_region(link, grid);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < rc.xs.size(); ++i) {
        rows.push_back({rc.xs[i], rc.lower[i], rc.upper[i]});
      }
      Json meta = report("region");
      meta["link"] = link.name();
      write_table(out, opt, "csv", meta, {"x", "lower", "upper"}, rows,
                  out_path);
      return kOk;
    }

    if (calib->parsed()) {
      require_unit(c, "--c");
      const LossSpec spec = parse_loss_spec(loss_text);
      const ProperLoss base = from_weight(spec.weight);
      const Calibration result =
          spec.link ? calibration_composite(make_composite(base, *spec.link), c)
                    : calibration_cc(base, c);
      Json j = report("check-calibration");
      j["loss"] = base.name();
      if (spec.link) j["link"] = spec.link->name();
      j["c"] = c;
      j["calibration"] = to_string(result);
      emit(out, j);
      return opt.strict && result != Calibration::calibrated ? kNegative : kOk;
    }

    if (recon->parsed()) {
      const Json doc = load_document(half_path);
      const std::string var = doc_string(doc, "variable", "p");
      const RealFn half = compiled(doc_string(doc, "expr"), var);
      std::optional<double> at_half;
      if (doc.contains("value_at_half")) {
        at_half = doc.at("value_at_half").get<double>();
      }
      const HalfSide side =
          side_text == "upper" ? HalfSide::upper : HalfSide::lower;
      const ProperLoss loss = reconstruct_symmetric(half, side, at_half);
      std::vector<std::vector<double>> rows;
      for (double p : grid) {
        rows.push_back({p, loss.ell_neg(p), loss.ell_pos(p)});
      }
      Json meta = report("reconstruct-symmetric");
      meta["side"] = side_text;
      meta["fair"] = loss.parts().fair;
      write_table(out, opt, "json", meta, {"p", "ell_neg", "ell_pos"}, rows,
                  out_path);
      return kOk;
    }

    if (mlink->parsed()) {
      if (!(vmin < vmax)) throw DomainError("--vmin must be below --vmax");
      const Link link = margin_to_link(margin_loss(phi_text));
      std::vector<std::vector<double>> rows;
      for (double s : linspace(vmin, vmax, opt.grid_size)) {
        rows.push_back({s, link.q(s)});
      }
      Json meta = report("margin-link");
      meta["phi"] = phi_text;
      write_table(out, opt, "csv", meta, {"v", "q"}, rows, out_path);
      return kOk;
    }

    if (robust->parsed()) {
      const NoiseLevel level(alpha);
      Json j = report("robustness");
      if (robust_w->count() > 0) {
        const WeightFunction wf = parse_weight_spec(weight_text);
        const auto union_set = proper_nonrobust_region(wf, level, grid);
        j["weight"] = wf.name();
        j["alpha"] = alpha;
        Json ivs = Json::array();
        Json closed = Json::array();
        for (const RealInterval& iv : union_set) {
          ivs.push_back({iv.lo, iv.hi});
          closed.push_back({iv.lo_closed, iv.hi_closed});
        }
        j["nonrobust_union"] = ivs;
        j["closed"] = closed;
      } else {
        if (robust_c0->count() == 0) {
          throw DomainError("robustness needs --c0 or --weight");
        }
        require_unit(c0, "--c0");
        const RobustInterval ri = cost_robust_interval(c0, level);
        j["c0"] = c0;
        j["alpha"] = alpha;
        if (ri.interval.empty()) {
          j["interval"] = nullptr;
        } else {
          j["interval"] = {ri.interval.lo, ri.interval.hi};
          j["closed"] = {ri.interval.lo_closed, ri.interval.hi_closed};
        }
      }
      emit(out, j);
      return kOk;
    }

    if (surrogate->parsed()) {
      const SurrogateReport rep = incommensurability_report();
      Json j = report("surrogate-experiment");
      Json cells = Json::array();
      bool matches = true;
      for (const SurrogateCell& cell : rep.cells) {
        const double da = std::abs(cell.alpha_star - cell.reference_alpha);
        const double dz =
            std::abs(cell.zero_one_risk - cell.reference_zero_one);
        matches = matches && da <= 1e-4 && dz <= 1e-4;
        cells.push_back({{"experiment", cell.experiment},
                         {"surrogate", cell.surrogate},
                         {"alpha_star", cell.alpha_star},
                         {"surrogate_risk", cell.surrogate_risk},
                         {"zero_one_risk", cell.zero_one_risk},
                         {"reference_alpha", cell.reference_alpha},
                         {"reference_zero_one", cell.reference_zero_one},
                         {"alpha_deviation", da},
                         {"zero_one_deviation", dz},
                         {"flat", cell.flat}});
      }
      j["cells"] = cells;
      j["surrogate2_better_on_eta1"] = rep.surrogate2_better_on_eta1;
      j["surrogate1_better_on_eta2"] = rep.surrogate1_better_on_eta2;
      j["note"] =
          "cells are labelled by (experiment, surrogate); the fourth is "
          "(eta2, w1-over-1mc)";
      emit(out, j);
      const bool ok = matches && rep.surrogate2_better_on_eta1 &&
                      rep.surrogate1_better_on_eta2;
      return opt.strict && !ok ? kNegative : kOk;
    }

    if (bound->parsed()) {
      if (curve) {
        std::vector<std::vector<double>> rows;
        for (double s : linspace(0.0, 1.0, opt.grid_size)) {
          rows.push_back({s, regret_bound_invert(s)});
        }
        write_table(out, opt, "csv", report("regret-bound"), {"x", "bound"},
                    rows, out_path);
        return kOk;
      }
      if (bound_x->count() == 0) {
        throw DomainError("regret-bound needs --x or --curve");
      }
      Json j = report("regret-bound");
      j["x"] = x;
      j["bound"] = regret_bound_invert(x);
      emit(out, j);
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace cploss::cli
