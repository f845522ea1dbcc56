#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdec/functions.hpp"
#include "hyperdec/identities.hpp"
#include "hyperdec/verify.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using hyperdec::Family;
using hyperdec::FunctionSpec;
using hyperdec::Rational;

constexpr int kUsageError = 2;
constexpr int kRunError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

using NamedRationals = std::map<std::string, std::vector<Rational>>;

NamedRationals parse_params(const std::vector<std::string>& raw) {
  NamedRationals out;
  for (const auto& item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects name=value, got \"" + item + "\"");
    std::string name = item.substr(0, eq);
    std::vector<Rational> vals;
    for (const auto& tok : split(item.substr(eq + 1), ',')) {
      auto r = hyperdec::parse_rational(tok);
      if (!r)
        throw UsageError("parameter " + name + ": \"" + tok +
                         "\" is not a rational p/q");
      vals.push_back(*r);
    }
    if (out.count(name))
      throw UsageError("parameter " + name + " given twice");
    out[name] = std::move(vals);
  }
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--point: \"" + tok + "\" is not a number");
    }
  }
  return out;
}

Rational scalar(const NamedRationals& ps, const std::string& name) {
  auto it = ps.find(name);
  if (it == ps.end() || it->second.size() != 1)
    throw UsageError("needs scalar parameter " + name);
  return it->second[0];
}

std::vector<Rational> vect(const NamedRationals& ps, const std::string& name) {
  auto it = ps.find(name);
  if (it == ps.end())
    throw UsageError("needs parameter " + name);
  return it->second;
}

FunctionSpec make_function(Family fam, const NamedRationals& ps,
                           std::size_t point_len) {
  using hyperdec::bessel_jn;
  using hyperdec::confluent_ha;
  using hyperdec::erdelyi_h;
  using hyperdec::gauss2f1;
  using hyperdec::horn_h2;
  using hyperdec::humbert_eta11;
  using hyperdec::humbert_eta2;
  using hyperdec::humbert_eta3;
  using hyperdec::humbert_eta4;
  using hyperdec::humbert_eta5;
  using hyperdec::lauricella_fa;
  using hyperdec::lauricella_fb;
  switch (fam) {
    case Family::Gauss2F1:
      return gauss2f1(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "c"));
    case Family::HornH2:
      return horn_h2(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "c"),
                     scalar(ps, "d"), scalar(ps, "e"));
    case Family::HumbertEta2:
      return humbert_eta2(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "c"),
                          scalar(ps, "d"));
    case Family::HumbertEta3:
      return humbert_eta3(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "d"));
    case Family::HumbertEta4:
      return humbert_eta4(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "d"));
    case Family::HumbertEta5:
      return humbert_eta5(scalar(ps, "a"), scalar(ps, "d"));
    case Family::HumbertEta11:
      return humbert_eta11(scalar(ps, "a"), scalar(ps, "b"), scalar(ps, "c"),
                           scalar(ps, "d"));
    case Family::LauricellaFA:
      return lauricella_fa(scalar(ps, "a"), vect(ps, "b"), vect(ps, "c"));
    case Family::LauricellaFB:
      return lauricella_fb(vect(ps, "c"), vect(ps, "b"), scalar(ps, "a"));
    case Family::ErdelyiH:
      return erdelyi_h(scalar(ps, "a"), vect(ps, "b"), vect(ps, "c"),
                       vect(ps, "d"), vect(ps, "e"));
    case Family::ConfluentHA: {
      auto b = vect(ps, "b");
      int n = static_cast<int>(point_len) - static_cast<int>(b.size());
      if (n < 1)
        throw UsageError("confluent-ha: point needs more coordinates than "
                         "x-side parameters");
      return confluent_ha(scalar(ps, "a"), b, vect(ps, "c"), n);
    }
    case Family::BesselJn:
      return bessel_jn(scalar(ps, "a"), static_cast<int>(point_len));
    default:
      throw UsageError("family not evaluable from the command line");
  }
}

int cmd_eval(const std::string& fname, const std::vector<std::string>& raw,
             const std::string& point_text, double tol, bool as_json) {
  auto fam = hyperdec::family_from_cli_name(fname);
  if (!fam) throw UsageError("unknown function \"" + fname + "\"");
  auto ps = parse_params(raw);
  auto pt = parse_point(point_text);
  FunctionSpec spec;
  try {
    spec = make_function(*fam, ps, pt.size());
    if (static_cast<int>(pt.size()) != spec.arity.vars())
      throw UsageError("--point needs " + std::to_string(spec.arity.vars()) +
                       " coordinates for " + fname);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  hyperdec::EvalOptions opt;
  opt.tol = tol;
  hyperdec::EvalDiagnostics diag;
  double value = hyperdec::eval_numeric(spec, pt, opt, &diag);
  if (as_json) {
    nlohmann::json j;
    j["value"] = value;
    j["layers"] = diag.layers;
    j["lastLayerMag"] = diag.last_layer_mag;
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("%.17g\n", value);
    std::fprintf(stderr, "layers=%d lastLayerMag=%.3g\n", diag.layers,
                 diag.last_layer_mag);
  }
  return 0;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void print_outcome_line(const std::string& id, bool pass, int trials,
                        int skipped, const std::string& disc) {
  std::printf("%s  %-16s trials=%d skipped=%d maxDiscrepancy=%s\n",
              pass ? "PASS" : "FAIL", id.c_str(), trials, skipped,
              disc.c_str());
}

int cmd_verify(const std::string& ids, int degree, int trials,
               std::uint64_t seed, const std::string& mode_text, double tol,
               const std::string& out_path) {
  hyperdec::TrialConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.degree = degree;
  cfg.tol = tol;
  if (mode_text == "exact")
    cfg.mode = hyperdec::Mode::Exact;
  else if (mode_text == "numeric")
    cfg.mode = hyperdec::Mode::Numeric;
  else if (mode_text == "both")
    cfg.mode = hyperdec::Mode::Both;
  else
    throw UsageError("--mode must be exact, numeric, or both");
  cfg.id_patterns = split(ids, ',');
  bool any = false;
  for (const auto& rec : hyperdec::identity_registry())
    for (const auto& pat : cfg.id_patterns)
      any = any || hyperdec::glob_match(pat, rec.id);
  if (!any) throw UsageError("no identity matches pattern \"" + ids + "\"");

  auto suite = hyperdec::run_suite(cfg);
  for (const auto& out : suite.identities) {
    std::string disc = suite.config.mode == hyperdec::Mode::Numeric
                           ? std::to_string(out.max_numeric_discrepancy)
                           : out.max_discrepancy;
    print_outcome_line(out.id, out.pass, out.trials, out.skipped, disc);
    if (!out.pass && !out.detail.empty())
      std::fprintf(stderr, "  %s\n", out.detail.c_str());
  }
  if (!suite.skip_diagnostic.empty())
    std::fprintf(stderr, "%s\n", suite.skip_diagnostic.c_str());

  auto j = nlohmann::json::parse(hyperdec::report_json(suite));
  j["timestamp"] = utc_timestamp();
  std::ofstream file(out_path);
  if (!file) throw UsageError("cannot write " + out_path);
  file << j.dump(2) << "\n";
  std::printf("report written to %s\n", out_path.c_str());
  return suite.all_pass ? 0 : kRunError;
}

int cmd_list() {
  for (const auto& rec : hyperdec::identity_registry()) {
    std::string marker;
    if (!rec.errata.empty())
      marker = "  [errata applied: " +
               std::to_string(rec.errata.size()) + "]";
    std::printf("%-16s  %-22s  %-14s  %s%s\n", rec.id.c_str(),
                rec.lhs_name.c_str(), hyperdec::rhs_kind_name(rec.rhs_kind),
                rec.display.c_str(), marker.c_str());
  }
  return 0;
}

int cmd_report(const std::string& in_path) {
  std::ifstream file(in_path);
  if (!file) throw UsageError("cannot read " + in_path);
  nlohmann::json j;
  try {
    file >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad report file: ") + e.what());
  }
  if (!j.contains("identities") || !j["identities"].is_array())
    throw UsageError("bad report file: no identities array");
  bool all_pass = true;
  for (const auto& e : j["identities"]) {
    bool pass = e.value("pass", false);
    all_pass = all_pass && pass;
    auto disc = e.contains("maxDiscrepancy")
                    ? (e["maxDiscrepancy"].is_string()
                           ? e["maxDiscrepancy"].get<std::string>()
                           : e["maxDiscrepancy"].dump())
                    : std::string("?");
    print_outcome_line(e.value("id", "?"), pass, e.value("trials", 0),
                       e.value("skipped", 0), disc);
  }
  if (j.contains("suite"))
    std::printf("suite: %s\n", j["suite"].dump().c_str());
  return all_pass ? 0 : kRunError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Evaluate multivariable hypergeometric families and verify their "
      "decomposition identities"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate a function at a point");
  std::string fname, point_text;
  std::vector<std::string> raw_params;
  double eval_tol = 1e-16;
  bool eval_json = false;
  eval->add_option("--function", fname, "Family name (kebab-case)")
      ->required();
  eval->add_option("--param", raw_params,
                   "Parameter name=rational (repeatable; lists as p/q,p/q)");
  eval->add_option("--point", point_text, "Comma-separated coordinates")
      ->required();
  eval->add_option("--tol", eval_tol, "Layer convergence tolerance");
  eval->add_flag("--json", eval_json, "Emit {value, layers, lastLayerMag}");

  auto* verify = app.add_subcommand("verify", "Verify identity families");
  std::string ids = "*", mode_text = "exact", out_path = "report.json";
  int degree = 12, trials = 5;
  std::uint64_t seed = 42;
  double verify_tol = 1e-10;
  verify->add_option("--ids", ids, "Comma-separated id globs");
  verify->add_option("--degree", degree, "Truncation degree");
  verify->add_option("--trials", trials, "Random parameter sets per identity");
  verify->add_option("--seed", seed, "Parameter generator seed");
  verify->add_option("--mode", mode_text, "exact | numeric | both");
  verify->add_option("--tol", verify_tol, "Numeric relative tolerance");
  verify->add_option("--out", out_path, "Report file path");

  app.add_subcommand("list", "Print the identity catalog");

  auto* report = app.add_subcommand("report", "Re-render a report file");
  std::string in_path = "report.json";
  report->add_option("file", in_path, "Report file to read");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (app.got_subcommand("eval"))
      return cmd_eval(fname, raw_params, point_text, eval_tol, eval_json);
    if (app.got_subcommand("verify"))
      return cmd_verify(ids, degree, trials, seed, mode_text, verify_tol,
                        out_path);
    if (app.got_subcommand("list")) return cmd_list();
    return cmd_report(in_path);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const hyperdec::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kRunError;
  } catch (const hyperdec::NonConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return kRunError;
  } catch (const hyperdec::PoleError& e) {
    std::fprintf(stderr, "pole error: %s\n", e.what());
    return kRunError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  }
}
