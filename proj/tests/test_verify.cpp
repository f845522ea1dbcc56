#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperdec/verify.hpp"

#include <json.hpp>

using namespace hyperdec;
using nlohmann::json;

TEST_CASE("random_params is deterministic and pole free") {
  const auto& rec = *find_identity("H2.op");
  Arity ar{1, 1};
  auto a = random_params(rec, ar, 42, 3);
  auto b = random_params(rec, ar, 42, 3);
  CHECK(a == b);
  auto c = random_params(rec, ar, 42, 4);
  CHECK(a != c);
  auto d = random_params(rec, ar, 43, 3);
  CHECK(a != d);

  bool saw_negative = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto ps = random_params(rec, ar, seed, 0);
    for (const auto& [name, values] : ps) {
      REQUIRE(values.size() == 1);
      const Rational& v = values.front();
      CAPTURE(name);
      CHECK_FALSE(is_integer(v));
      auto num = boost::multiprecision::numerator(v);
      auto den = boost::multiprecision::denominator(v);
      CHECK(den >= 2);
      CHECK(den <= 7);
      CHECK(abs(num) <= 9 * den);
      if (v < 0) saw_negative = true;
    }
  }
  CHECK(saw_negative);
}

TEST_CASE("random_params keys differ per record") {
  Arity ar{2, 0};
  auto fa = random_params(*find_identity("FA.op"), ar, 42, 0);
  REQUIRE(fa.count("a") == 1);
  REQUIRE(fa.count("b") == 1);
  CHECK(fa.at("a").size() == 1);
  CHECK(fa.at("b").size() == 2);  // one per x variable
  CHECK(fa.at("c").size() == 2);
  auto eta5 = random_params(*find_identity("Eta5.op"), {1, 1}, 42, 0);
  CHECK(eta5.count("b") == 0);
  CHECK(eta5.count("a") == 1);
  CHECK(eta5.count("d") == 1);
}

TEST_CASE("arity schedules") {
  const auto& h2 = *find_identity("H2.op");
  for (int t = 0; t < 4; ++t) CHECK(arity_for_trial(h2, t) == Arity{1, 1});

  const auto& fa = *find_identity("FA.lemma1");
  CHECK(arity_for_trial(fa, 0) == Arity{2, 0});
  CHECK(arity_for_trial(fa, 1) == Arity{3, 0});
  CHECK(arity_for_trial(fa, 2) == Arity{2, 0});

  const auto& ha = *find_identity("HA.series");
  CHECK(arity_for_trial(ha, 0) == Arity{1, 1});
  CHECK(arity_for_trial(ha, 1) == Arity{2, 1});
  CHECK(arity_for_trial(ha, 2) == Arity{1, 2});
  CHECK(arity_for_trial(ha, 3) == Arity{2, 2});
  CHECK(arity_for_trial(ha, 4) == Arity{1, 1});

  const auto& lim = *find_identity("HA.limit");
  for (int t = 0; t < 4; ++t) CHECK(arity_for_trial(lim, t) == Arity{1, 1});

  CHECK(degree_for({1, 1}, 12) == 12);
  CHECK(degree_for({2, 1}, 12) == 8);
  CHECK(degree_for({2, 2}, 12) == 8);
  CHECK(degree_for({2, 0}, 6) == 6);
}

TEST_CASE("glob matching") {
  CHECK(glob_match("*", "Eta3.op"));
  CHECK(glob_match("Eta3.*", "Eta3.op"));
  CHECK(glob_match("Eta3.*", "Eta3.series.inv"));
  CHECK_FALSE(glob_match("Eta3.*", "Eta4.op"));
  CHECK(glob_match("*.op", "H2.op"));
  CHECK_FALSE(glob_match("*.op", "H2.op.inv"));
  CHECK(glob_match("*.op*", "H2.op.inv"));
  CHECK(glob_match("Eta?.op", "Eta3.op"));
  CHECK_FALSE(glob_match("Eta?.op", "Eta11.op"));
  CHECK(glob_match("", ""));
  CHECK_FALSE(glob_match("", "x"));
  CHECK(glob_match("a*b*c", "a123b45c"));
  CHECK_FALSE(glob_match("a*b*c", "a123b45d"));
}

TEST_CASE("numeric points stay inside every gate") {
  for (const auto& rec : identity_registry()) {
    for (int t = 0; t < 2; ++t) {
      Arity ar = arity_for_trial(rec, t);
      auto pts = numeric_points(rec, ar);
      REQUIRE(pts.size() == 3);
      for (const auto& pt : pts) {
        CHECK(static_cast<int>(pt.size()) == ar.vars());
        for (double v : pt) CHECK(std::fabs(v) <= 0.125);
      }
    }
  }
}

TEST_CASE("suite runs are reproducible") {
  TrialConfig cfg;
  cfg.trials = 2;
  cfg.degree = 6;
  cfg.id_patterns = {"Eta3.*", "Eta5.*"};
  auto first = run_suite(cfg);
  auto second = run_suite(cfg);
  CHECK(report_json(first) == report_json(second));
  CHECK(first.all_pass);
  CHECK(first.identities.size() == 8);
  for (std::size_t i = 1; i < first.identities.size(); ++i)
    CHECK(first.identities[i - 1].id < first.identities[i].id);
}

TEST_CASE("exact mode leaves the limit record out") {
  TrialConfig cfg;
  cfg.trials = 1;
  cfg.degree = 4;
  cfg.id_patterns = {"HA.*"};
  auto suite = run_suite(cfg);
  for (const auto& out : suite.identities) CHECK(out.id != "HA.limit");
  CHECK(suite.identities.size() == 4);
}

TEST_CASE("numeric mode covers the limit record") {
  TrialConfig cfg;
  cfg.mode = Mode::Numeric;
  cfg.trials = 1;
  cfg.id_patterns = {"HA.limit", "Eta4.op"};
  auto suite = run_suite(cfg);
  REQUIRE(suite.identities.size() == 2);
  CHECK(suite.all_pass);
  for (const auto& out : suite.identities) {
    CAPTURE(out.id);
    CHECK(out.pass);
    CHECK(out.skipped == 0);
  }
}

TEST_CASE("no matching identities yields an empty suite") {
  TrialConfig cfg;
  cfg.id_patterns = {"nope.*"};
  auto suite = run_suite(cfg);
  CHECK(suite.identities.empty());
  CHECK(suite.total_trials == 0);
}

TEST_CASE("skip policy") {
  SuiteResult suite;
  suite.total_trials = 20;
  suite.total_skipped = 2;
  CHECK(apply_skip_policy(suite).empty());
  CHECK(suite.all_pass);
  suite.total_skipped = 3;  // 15% > 10%
  auto diag = apply_skip_policy(suite);
  CHECK_FALSE(diag.empty());
  CHECK_FALSE(suite.all_pass);
  CHECK(suite.skip_diagnostic == diag);
}

TEST_CASE("report schema") {
  TrialConfig cfg;
  cfg.trials = 1;
  cfg.degree = 4;
  cfg.id_patterns = {"Eta3.op", "Eta5.series.inv"};
  SUBCASE("exact mode uses rational strings") {
    auto suite = run_suite(cfg);
    auto j = json::parse(report_json(suite));
    CHECK(j.at("suite").at("seed") == 42);
    CHECK(j.at("suite").at("mode") == "exact");
    CHECK(j.at("suite").at("degree") == 4);
    CHECK(j.at("suite").at("trials") == 1);
    CHECK(j.at("suite").contains("tolerance"));
    REQUIRE(j.at("identities").size() == 2);
    const auto& first = j.at("identities").at(0);
    CHECK(first.at("id") == "Eta3.op");
    CHECK(first.at("trials") == 1);
    CHECK(first.at("skipped") == 0);
    CHECK(first.at("pass") == true);
    CHECK(first.at("maxDiscrepancy").is_string());
    CHECK(first.at("maxDiscrepancy") == "0");
    CHECK_FALSE(first.contains("maxNumericDiscrepancy"));
    const auto& second = j.at("identities").at(1);
    CHECK(second.at("id") == "Eta5.series.inv");
    CHECK(second.at("errata").size() == 1);
    CHECK_FALSE(j.contains("timestamp"));
  }
  SUBCASE("numeric mode uses numbers") {
    cfg.mode = Mode::Numeric;
    auto suite = run_suite(cfg);
    auto j = json::parse(report_json(suite));
    CHECK(j.at("suite").at("mode") == "numeric");
    CHECK(j.at("identities").at(0).at("maxDiscrepancy").is_number());
  }
  SUBCASE("both mode carries both fields") {
    cfg.mode = Mode::Both;
    cfg.id_patterns = {"Eta3.op"};
    auto suite = run_suite(cfg);
    auto j = json::parse(report_json(suite));
    const auto& entry = j.at("identities").at(0);
    CHECK(entry.at("maxDiscrepancy").is_string());
    CHECK(entry.at("maxNumericDiscrepancy").is_number());
  }
}

TEST_CASE("rng primitives are the reference sequences") {
  std::uint64_t state = 0;
  // splitmix64 of seed 0: first outputs of the reference implementation.
  CHECK(splitmix64_next(state) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64_next(state) == 0x6E789E6AA1B965F4ULL);
  CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8CULL);
}
