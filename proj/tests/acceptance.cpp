// Acceptance gate: one timed pass/fail line per criterion, nonzero exit on
// any failure. Budgets are part of the criteria.
#include "hyperdec/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace hyperdec;

namespace {

int failures = 0;

void criterion(int number, const char* label, double budget_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  bool in_budget = secs < budget_s;
  bool pass = ok && in_budget;
  if (!pass) ++failures;
  std::printf("%s  criterion %d  %-52s  %6.2fs < %2.0fs%s%s\n",
              pass ? "PASS" : "FAIL", number, label, secs, budget_s,
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
}

const char* kOpIds[] = {"H2.op",       "H2.op.inv",    "Eta2.op",
                        "Eta2.op.inv", "Eta3.op",      "Eta3.op.inv",
                        "Eta4.op",     "Eta4.op.inv",  "Eta5.op",
                        "Eta5.op.inv", "Eta11.op",     "Eta11.op.inv"};
const char* kSeriesIds[] = {"H2.series",       "H2.series.inv",
                            "Eta2.series",     "Eta2.series.inv",
                            "Eta3.series",     "Eta3.series.inv",
                            "Eta4.series",     "Eta4.series.inv",
                            "Eta5.series",     "Eta5.series.inv",
                            "Eta11.series",    "Eta11.series.inv"};

bool suite_clean(const SuiteResult& suite, std::size_t expected_ids,
                 std::string& detail) {
  if (suite.identities.size() != expected_ids) {
    detail = "matched " + std::to_string(suite.identities.size()) +
             " records, expected " + std::to_string(expected_ids);
    return false;
  }
  if (suite.total_skipped != 0) {
    detail = "skipped " + std::to_string(suite.total_skipped) + " instances";
    return false;
  }
  if (!suite.all_pass) {
    for (const auto& out : suite.identities)
      if (!out.pass) {
        detail = out.detail.empty() ? out.id + " failed" : out.detail;
        return false;
      }
    detail = suite.skip_diagnostic;
    return false;
  }
  return true;
}

ParamSet fixed_tv_params() {
  return {{"a", {Rational(1, 2)}},
          {"b", {Rational(2, 3)}},
          {"c", {Rational(1, 5)}},
          {"d", {Rational(5, 7)}},
          {"e", {Rational(9, 7)}}};
}

ParamSet fixed_block_params(int m) {
  ParamSet ps{{"a", {Rational(1, 2)}}};
  for (int s = 0; s < m; ++s) {
    ps["b"].push_back(Rational(2 * s + 1, 3));
    ps["c"].push_back(Rational(4 * s + 5, 4));
  }
  return ps;
}

std::uint64_t poly_rng_state = 0x5EEDULL;

Rational small_rational() {
  static const int den[] = {1, 2, 3, 4, 5};
  int q = den[splitmix64_next(poly_rng_state) % 5];
  int p = static_cast<int>(splitmix64_next(poly_rng_state) % 13) - 6;
  return Rational(p, q);
}

}  // namespace

int main() {
  criterion(1, "operator identities, 5 parameter sets each, D=12 exact", 10.0,
            [](std::string& detail) {
              TrialConfig cfg;
              cfg.id_patterns.assign(std::begin(kOpIds), std::end(kOpIds));
              auto suite = run_suite(cfg);
              return suite_clean(suite, 12, detail);
            });

  criterion(2, "series decompositions D=12 exact + localized control", 20.0,
            [](std::string& detail) {
              TrialConfig cfg;
              cfg.id_patterns.assign(std::begin(kSeriesIds),
                                     std::end(kSeriesIds));
              auto suite = run_suite(cfg);
              if (!suite_clean(suite, 12, detail)) return false;
              // With the correction disabled the record must fail, first at
              // (0,1), with the y = 0 row untouched.
              BuildOptions literal{false};
              auto ps = fixed_tv_params();
              Arity ar{1, 1};
              auto lhs =
                  build_lhs<Rational>("Eta5.series.inv", ps, ar, 8, literal);
              auto rhs =
                  build_rhs<Rational>("Eta5.series.inv", ps, ar, 8, literal);
              auto r = compare(lhs, rhs);
              if (r.equal) {
                detail = "negative control unexpectedly verified";
                return false;
              }
              if (r.sample.empty() ||
                  !(r.sample.front().index == MultiIndex{{0}, {1}})) {
                detail = "control mismatch not localized at (0,1)";
                return false;
              }
              for (int i = 0; i <= 8; ++i)
                if (lhs.coeff({{i}, {0}}) != rhs.coeff({{i}, {0}})) {
                  detail = "control leaked into the y = 0 row";
                  return false;
                }
              return true;
            });

  criterion(3, "triangular decomposition m=2,3 D=8 + closed two-var form",
            10.0, [](std::string& detail) {
              TrialConfig cfg;
              cfg.degree = 8;
              cfg.id_patterns = {"FA.lemma1"};
              auto suite = run_suite(cfg);
              if (!suite_clean(suite, 1, detail)) return false;
              auto ps = fixed_block_params(2);
              auto closed = fa_lemma1_closed_m2(ps, 8);
              auto general = build_rhs_series("FA.lemma1", ps, {2, 0}, 8);
              if (!compare(closed, general).equal) {
                detail = "closed form disagrees with the general machinery";
                return false;
              }
              return true;
            });

  criterion(4, "split-eigenvalue operator identities m=2,3 D=8", 10.0,
            [](std::string& detail) {
              TrialConfig cfg;
              cfg.degree = 8;
              cfg.id_patterns = {"FA.op", "FB.op"};
              auto suite = run_suite(cfg);
              return suite_clean(suite, 2, detail);
            });

  criterion(5, "confluent identities, 4 arities D=8 + control + collapse",
            20.0, [](std::string& detail) {
              TrialConfig cfg;
              cfg.degree = 8;
              cfg.trials = 4;  // rotates through all four (m,n) shapes
              cfg.id_patterns = {"HA.op", "HA.op.inv", "HA.series",
                                 "HA.series.inv"};
              auto suite = run_suite(cfg);
              if (!suite_clean(suite, 4, detail)) return false;

              Arity ar{1, 1};
              ParamSet ha{{"a", {Rational(1, 2)}},
                          {"b", {Rational(2, 3)}},
                          {"c", {Rational(5, 7)}}};
              BuildOptions literal{false};
              auto bad_l = build_lhs<Rational>("HA.series.inv", ha, ar, 6,
                                               literal);
              auto bad_r = build_rhs<Rational>("HA.series.inv", ha, ar, 6,
                                               literal);
              auto r = compare(bad_l, bad_r);
              if (r.equal) {
                detail = "uncorrected inverse series unexpectedly verified";
                return false;
              }
              if (r.sample.empty() ||
                  !(r.sample.front().index == MultiIndex{{1}, {1}})) {
                detail = "control mismatch not first at (1,1)";
                return false;
              }

              // One x and one y variable must reproduce the Eta3 records.
              ParamSet eta3{{"a", {Rational(1, 2)}},
                            {"b", {Rational(2, 3)}},
                            {"d", {Rational(5, 7)}}};
              const int d = 8;
              bool collapse =
                  compare(build_lhs<Rational>("HA.series", ha, ar, d),
                          build_lhs<Rational>("Eta3.series", eta3, ar, d))
                      .equal &&
                  compare(build_rhs<Rational>("HA.series", ha, ar, d),
                          build_rhs<Rational>("Eta3.series", eta3, ar, d))
                      .equal &&
                  compare(
                      build_lhs<Rational>("HA.series.inv", ha, ar, d),
                      build_lhs<Rational>("Eta3.series.inv", eta3, ar, d)
                          .flip_y())
                      .equal &&
                  compare(
                      build_rhs<Rational>("HA.series.inv", ha, ar, d),
                      build_rhs<Rational>("Eta3.series.inv", eta3, ar, d)
                          .flip_y())
                      .equal &&
                  compare(build_rhs<Rational>("HA.op", ha, ar, d),
                          build_rhs<Rational>("Eta3.op", eta3, ar, d))
                      .equal;
              if (!collapse) {
                detail = "one-variable collapse onto Eta3 records broke";
                return false;
              }
              return true;
            });

  criterion(6, "derivative vs diagonal Pochhammer action, 50 random polys",
            5.0, [](std::string& detail) {
              const Arity shapes[] = {{1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}};
              for (int trial = 0; trial < 50; ++trial) {
                Arity ar = shapes[trial % 5];
                const int degree = 4;
                auto f = RationalSeries::from_fn(
                    ar, degree,
                    [&](const MultiIndex&) { return small_rational(); });
                int k = static_cast<int>(splitmix64_next(poly_rng_state) % 7);
                auto brute_x = f.op_pochhammer_brute(k, Block::X);
                auto brute_y = f.op_pochhammer_brute(k, Block::Y);
                auto want_x = RationalSeries::from_fn(
                    ar, degree, [&](const MultiIndex& i) {
                      return f.coeff(i) *
                             pochhammer(Rational(-i.total_x()), k);
                    });
                auto want_y = RationalSeries::from_fn(
                    ar, degree, [&](const MultiIndex& i) {
                      return f.coeff(i) *
                             pochhammer(Rational(i.total_y()), k);
                    });
                if (!compare(brute_x, want_x).equal ||
                    !compare(brute_y, want_y).equal) {
                  detail = "poly trial " + std::to_string(trial) + " arity (" +
                           std::to_string(ar.m) + "," + std::to_string(ar.n) +
                           ") k=" + std::to_string(k);
                  return false;
                }
              }
              return true;
            });

  criterion(7, "specialization lattice, exact to D=8", 5.0,
            [](std::string& detail) {
              const int d = 8;
              const Rational a(1, 2);
              std::vector<Rational> b{Rational(1, 3), Rational(2, 5)};
              std::vector<Rational> c{Rational(4, 3), Rational(6, 5)};

              auto h_x = truncate<Rational>(erdelyi_h(a, b, c, {}, {}), d);
              auto fa = truncate<Rational>(lauricella_fa(a, b, c), d);
              if (!compare(h_x, fa).equal) {
                detail = "empty y block is not the FA series";
                return false;
              }

              auto h_y = truncate<Rational>(erdelyi_h(a, {}, {}, b, c), d);
              auto fb = truncate<Rational>(lauricella_fb(b, c, 1 - a), d);
              if (!compare(h_y, embed(fb, {0, 2}, {0, 1}, d).flip_y())
                       .equal) {
                detail = "empty x block is not the FB series at -y";
                return false;
              }

              auto h11 = truncate<Rational>(
                  erdelyi_h(a, {b[0]}, {c[0]}, {b[1]}, {c[1]}), d);
              auto h2 = truncate<Rational>(horn_h2(a, b[0], b[1], c[1], c[0]),
                                           d);
              if (!compare(h11, h2).equal) {
                detail = "one-plus-one shape is not the Horn series";
                return false;
              }

              auto j = truncate<Rational>(bessel_jn(a, 1), d);
              auto f01 = truncate<Rational>(gen_pfq({}, {1 + a}), d);
              if (!compare(j, embed(f01, {0, 1}, {0}, d).flip_y()).equal) {
                detail = "one-variable Bessel row is not 0F1 at -y";
                return false;
              }
              return true;
            });

  criterion(8, "numeric coherence at 3 points, tol 1e-10 (+limit 1e-2)", 30.0,
            [](std::string& detail) {
              TrialConfig cfg;
              cfg.mode = Mode::Numeric;
              cfg.trials = 1;
              cfg.tol = 1e-10;
              auto suite = run_suite(cfg);
              if (!suite_clean(suite, 32, detail)) return false;
              for (const auto& out : suite.identities) {
                double cap = out.id == "HA.limit" ? 1e-2 : 1e-10;
                if (out.max_numeric_discrepancy > cap) {
                  detail = out.id + " discrepancy " +
                           std::to_string(out.max_numeric_discrepancy);
                  return false;
                }
              }
              return true;
            });

  criterion(9, "two seed-42 suite runs are byte-identical", 60.0,
            [](std::string& detail) {
              TrialConfig cfg;  // defaults: seed 42, exact, D=12, 5 trials
              auto one = report_json(run_suite(cfg));
              auto two = report_json(run_suite(cfg));
              if (one != two) {
                detail = "exact-mode reports differ";
                return false;
              }
              TrialConfig both;
              both.mode = Mode::Both;
              both.trials = 2;
              both.degree = 8;
              auto three = report_json(run_suite(both));
              auto four = report_json(run_suite(both));
              if (three != four) {
                detail = "both-mode reports differ";
                return false;
              }
              return true;
            });

  if (failures == 0)
    std::printf("acceptance: all 9 criteria pass\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
