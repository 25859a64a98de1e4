// Acceptance suite: machine-checks every headline claim at the scales and
// budgets pinned below, printing one PASS/FAIL line per criterion. Exit code
// is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "localrat/cli.hpp"
#include "localrat/localrat.hpp"

using namespace localrat;

namespace {

constexpr std::uint64_t kSeed = 20260808;
int g_failures = 0;
int g_criterion = 0;

struct Criterion {
  std::string name;
  bool ok = true;
  std::vector<std::string> details;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back(what);
    }
  }

  void absorb(const VerifyReport& r) {
    if (!r.pass()) {
      ok = false;
      for (size_t i = 0; i < r.violations.size() && i < 5; ++i)
        details.push_back(r.claim + ": " + r.violations[i]);
      if (r.violations.size() > 5)
        details.push_back(r.claim + ": ... " + std::to_string(r.violations.size()) +
                          " violations total");
    }
  }

  ~Criterion() {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("[%2d/10] %-58s %s (%.2fs)\n", ++g_criterion, name.c_str(),
                ok ? "PASS" : "FAIL", secs);
    for (const auto& d : details) std::printf("        %s\n", d.c_str());
    if (!ok) ++g_failures;
  }
};

int workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 2;
}

VerifyParams exhaustive3() {
  VerifyParams p;
  p.n = 3;
  p.mode = VerifyMode::exhaustive;
  p.workers = workers();
  return p;
}

VerifyParams sampled(int n, std::uint64_t samples) {
  VerifyParams p;
  p.n = n;
  p.mode = VerifyMode::sample;
  p.samples = samples;
  p.seed = kSeed;
  p.workers = workers();
  return p;
}

}  // namespace

static void criterion1_theorem1() {
  Criterion cr("theorem 1: gamma iff locally rationalizable by LRP");
  VerifyReport small = verify_claim("theorem1", exhaustive3());
  cr.absorb(small);
  cr.expect(small.checked == 189, "expected 189 tables at n=3");
  cr.expect(small.seconds < 1.0, "n=3 scan must finish under 1s");
  VerifyReport big = verify_claim("theorem1", sampled(4, 100000));
  cr.absorb(big);
  cr.expect(big.seconds < 60.0, "n=4 sampled scan must finish under 60s");
}

static void criterion2_theorems245() {
  Criterion cr("theorems 2/4/5: quasi-transitive, transitive, PIP families");
  for (const char* claim : {"theorem2", "theorem4", "theorem5"}) {
    cr.absorb(verify_claim(claim, exhaustive3()));
    cr.absorb(verify_claim(claim, sampled(4, 100000)));
  }
}

static void criterion3_hull() {
  Criterion cr("theorem 3: hull = fixpoint oracle = intersection oracle");
  VerifyReport small = verify_claim("theorem3", exhaustive3());
  cr.absorb(small);
  cr.expect(small.checked == 189, "expected 189 tables at n=3");
  cr.absorb(verify_claim("theorem3", sampled(4, 100000)));
}

static void criterion4_corollaries() {
  Criterion cr("corollaries 1-3 and lemmas 2/3 via revealed preference");
  for (const char* claim : {"corollary1", "corollary2", "corollary3", "lemma2", "lemma3"})
    cr.absorb(verify_claim(claim, exhaustive3()));
}

static void criterion5_figure1() {
  Criterion cr("figure 1: forward implications and converse witnesses");
  VerifyReport r = verify_claim("figure1", exhaustive3());
  cr.absorb(r);
  cr.expect(r.notes.size() == 4, "expected four converse witnesses");
  for (const auto& note : r.notes) cr.details.push_back(note);
}

static void criterion6_propositions() {
  Criterion cr("propositions 1-2 and the Bordes/McKelvey/deep variants");
  auto t0 = std::chrono::steady_clock::now();
  for (const char* claim : {"prop1", "prop2", "prop_bordes", "prop_mckelvey", "prop_deep"}) {
    VerifyReport small = verify_claim(claim, exhaustive3());
    cr.absorb(small);
    cr.expect(small.checked == 27, "expected 27 bases at n=3");
    cr.absorb(verify_claim(claim, sampled(4, 100)));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  cr.expect(secs < 600.0, "proposition sweeps must finish under 10 minutes");
}

static void criterion7_scf_properties() {
  Criterion cr("rule tables: gamma/beta_plus levels, inclusions, tie behavior");
  for (int n = 3; n <= 6; ++n) cr.absorb(verify_claim("scf_properties", sampled(n, 250)));
}

static void criterion8_cores() {
  Criterion cr("gamma cores: chain, uncovered-set fixpoints, valid families");
  cr.absorb(verify_claim("core_chain", sampled(4, 1000)));
  cr.absorb(verify_claim("core_uncovered", sampled(4, 100)));
  cr.absorb(verify_claim("core_uncovered", sampled(5, 100)));
}

static void criterion9_hulls() {
  Criterion cr("hull remarks: omninomination/Pareto, Copeland, alpha, epsilon_plus");
  for (int n = 3; n <= 5; ++n) {
    cr.absorb(verify_claim("hull_omni_pareto", sampled(n, 334)));
    cr.absorb(verify_claim("hull_copeland", sampled(n, 334)));
  }
  cr.absorb(verify_claim("hull_alpha_epsilon", exhaustive3()));
}

static void criterion10_cli() {
  Criterion cr("CLI goldens and parse/serialize round trips");

  std::ofstream("acc_t0.ct") << "alts: x y z\n"
                                "x y z : x y\n"
                                "x y : x\n"
                                "y z : y\n"
                                "x z : x\n";
  std::ofstream("acc_cycle.prof") << "alts: a b c\n"
                                     "2: a>b>c\n"
                                     "4: b>c>a\n"
                                     "3: c>a>b\n";

  auto run = [&](const std::vector<std::string>& args, int expect_code,
                 const std::string& expect_out, const std::string& what) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    cr.expect(code == expect_code && out.str() == expect_out,
              what + (code != expect_code ? " (exit code)" : " (output)"));
  };

  run({"axioms", "--table", "acc_t0.ct"}, 1,
      "alpha: FAIL (A={x,y,z} B={x,y} y)\n"
      "gamma: PASS\n"
      "epsilon_plus: PASS\n"
      "beta_plus: PASS\n"
      "gamma_plus: PASS\n"
      "w4: PASS\n"
      "weak_idempotency: FAIL (A={x,y,z} B={x,y} y)\n"
      "star: PASS\n"
      "star_strong: PASS\n",
      "axioms golden");
  run({"rational", "--table", "acc_t0.ct"}, 0, "local: transitive\nstandard: none\n",
      "rational golden");
  run({"hull", "--table", "acc_t0.ct"}, 0,
      "alts: x y z\nx y : x\nx z : x\ny z : y\nx y z : x y\n", "hull golden");

  const std::vector<std::pair<std::string, std::string>> winner_golden = {
      {"topcycle", "a b c\n"}, {"uc-gillies", "a b c\n"}, {"uc-bordes", "a b c\n"},
      {"uc-mckelvey", "a b c\n"}, {"uc-deep", "a b c\n"}, {"splitcycle", "b\n"},
      {"copeland", "a b c\n"}, {"borda", "b c\n"}, {"omni", "a b c\n"},
      {"pareto", "a b c\n"}};
  for (const auto& [rule, expected] : winner_golden)
    run({"winners", "--rule", rule, "--profile", "acc_cycle.prof"}, 0, expected,
        "winners golden: " + rule);
  run({"winners", "--rule", "tsmc", "--profile", "acc_cycle.prof", "--tiebreak", "a>b>c"}, 0,
      "a\n", "winners golden: tsmc");

  ChoiceTable t0 = parse_choice_table(detail::read_file("acc_t0.ct"));
  cr.expect(parse_choice_table(serialize_table(t0)) == t0, "table round trip");
  Profile cycle = parse_profile(detail::read_file("acc_cycle.prof"));
  Profile back = parse_profile(serialize_profile(cycle));
  cr.expect(serialize_profile(back) == serialize_profile(cycle), "profile round trip");

  std::remove("acc_t0.ct");
  std::remove("acc_cycle.prof");
}

int main() {
  std::printf("acceptance suite: seed %llu, %d workers\n",
              static_cast<unsigned long long>(kSeed), workers());
  criterion1_theorem1();
  criterion2_theorems245();
  criterion3_hull();
  criterion4_corollaries();
  criterion5_figure1();
  criterion6_propositions();
  criterion7_scf_properties();
  criterion8_cores();
  criterion9_hulls();
  criterion10_cli();
  std::printf(g_failures ? "%d criterion(s) FAILED\n" : "all criteria passed\n", g_failures);
  return g_failures;
}
