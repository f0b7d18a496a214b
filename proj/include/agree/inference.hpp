#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "agree/estimators.hpp"
#include "agree/rng.hpp"
#include "agree/table.hpp"

namespace agree {

// ---------------------------------------------------------------------------
// Decisions
// ---------------------------------------------------------------------------

// Trichotomy of the inferential decision. h1_minus / h1_plus are rejections
// of the null interpreted as disagreement / agreement; fail means the
// estimate or its test is uncomputable.
enum class Region : std::int8_t {
  h1_minus = -1,
  h0 = 0,
  h1_plus = 1,
  fail = 2,
};

struct Decision {
  Region region = Region::fail;
  std::optional<double> p_value;
  std::optional<int> pbin;  // 1 = zero inside the bootstrap HDI
  // MN carries no direction; rejections are scored on the reject/retain
  // partition only.
  bool undirected = false;

  bool rejected() const {
    return region == Region::h1_minus || region == Region::h1_plus;
  }
};

enum class TestMethod {
  lienert_u,
  kappa_z,
  ac1_z,
  pi_z,
  pearson_t,
  fisher_exact,
  mcnemar_binomial,
  bootstrap_hdi,
};

enum class TestStatus : std::uint8_t {
  ok,
  failed,
  // The variance formula collapsed (all linearized scores equal); a
  // bootstrap fallback may still decide.
  degenerate,
};

struct TestResult {
  TestMethod method;
  TestStatus status = TestStatus::failed;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::optional<std::pair<double, double>> interval;  // 95% HDI or CI

  bool ok() const { return status == TestStatus::ok; }
};

struct BootstrapConfig {
  long resamples = 10000;  // invariant: >= 100
  std::uint64_t seed = 0;
  double mass = 0.95;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Asymptotic / exact tests
// ---------------------------------------------------------------------------

// u = (a+d-n/2)/sqrt(n/4), two-sided normal p. The normal approximation is
// intended for n > 30 but the statistic is computable for any n.
TestResult lienert_u_test(const Table2x2& t);

// z = kappa/SE0 with the null-hypothesis variance from the marginal
// proportions. Fails when kappa is undefined or a row/column marginal is
// zero (the variance degenerates to zero exactly there).
TestResult kappa_asymptotic_test(const Table2x2& t);

// z = AC1/SE with the two-rater subject-level linearized variance.
// status == degenerate when the variance collapses (e.g. b=c=0); callers
// may then fall back to the bootstrap.
TestResult ac1_z_test(const Table2x2& t);

// z = pi/SE with the standard agreement-family standard error
// sqrt(po(1-po)/(n(1-pe)^2)); the binary decision is equivalent to checking
// zero against the 95% CI. Tables with po in {0,1} have a zero-width CI and
// reject outright (pi is +-1 there).
TestResult scott_pi_test(const Table2x2& t);

// t = r*sqrt((n-2)/(1-r^2)) with n-2 degrees of freedom; |r|=1 gives p=0.
TestResult pearson_r_test(const Table2x2& t);

// Fisher's exact conditional test of independence with fixed marginals,
// two-sided by summing hypergeometric outcomes no more likely than the
// observed one. Fails when a row or column marginal is zero.
TestResult exact_q_test(const Table2x2& t);

// Exact binomial test of b successes in b+c trials at p0 = 1/2.
TestResult mcnemar_exact_test(const Table2x2& t);

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

// One multinomial resample of n subjects with cell probabilities
// (a,b,c,d)/n.
Table2x2 bootstrap_resample(const Table2x2& t, Rng& rng);

// The bootstrap stream for a table: seeded by mix(base_seed, n, a, b, c, d)
// so parallel scheduling cannot change any decision.
Rng table_rng(std::uint64_t base_seed, const Table2x2& t);

// Substream for one bootstrap statistic of one table. Keying the stream by
// the statistic keeps different estimators' resampling noise independent:
// with a shared stream their boundary decisions would be correlated, which
// biases benchmark selection toward the bootstrap-based candidates.
Rng statistic_rng(std::uint64_t base_seed, const Table2x2& t, Est statistic);

// Shortest contiguous interval of the sorted sample containing
// ceil(mass*count) points. nullopt when fewer than 2 samples are given.
// Sorts in place.
std::optional<std::pair<double, double>> hdi(std::vector<double>& samples,
                                             double mass);

// Which statistic a bootstrap decision for an estimator tests against zero,
// and where the rejection direction comes from. F1 is tested on the
// rescaled F1_adj scale; raw B is tested against zero on its own scale with
// direction from B_adj; MN is undirected.
struct BootstrapStat {
  Est statistic;
  Est sign_source;
  bool undirected;
};
BootstrapStat bootstrap_stat_for(Est e);

// Builds a Decision from collected bootstrap statistics. `samples` holds
// the non-failed resample statistics (consumed/sorted), `drops` the number
// of resamples where the statistic failed.
Decision decision_from_samples(const EstimateValue& stat_point,
                               const EstimateValue& sign_point,
                               std::vector<double>& samples, long drops,
                               long resamples, double mass, bool undirected);

// Full bootstrap decision for one estimator on one table. Deterministic in
// (table, estimator, cfg); the resample stream depends only on (seed,
// table), so batched evaluation of several estimators over one shared
// stream reproduces exactly this result.
Decision bootstrap_decision(const Table2x2& t, Est e,
                            const BootstrapConfig& cfg);

// Convenience: HDI of an estimator's bootstrap distribution (used for
// interval reporting). nullopt when too few resamples are computable.
std::optional<std::pair<double, double>> bootstrap_interval(
    const Table2x2& t, Est e, const BootstrapConfig& cfg, long* drops_out = nullptr);

// ---------------------------------------------------------------------------
// Decision assembly
// ---------------------------------------------------------------------------

// Combines a point estimate with a test: Fail if the point fails or the
// test is uncomputable; H0 when p >= alpha (or pbin = 1); otherwise the
// region follows the sign of `sign_point`.
Decision decide(const EstimateValue& sign_point, const TestResult& test,
                double alpha, bool undirected = false);

// The estimators that receive decisions in studies (the Figure-2 panel
// set): the benchmark plus eleven scored candidates.
enum class Scored : int {
  g = 0,  // Lienert test for n > 30, bootstrap below
  sac,    // bootstrap decision on G at any n
  ac1,    // linearized z test, bootstrap fallback when degenerate
  pi,     // bootstrap
  kappa,  // null-variance z test
  r,      // t test
  q,      // Fisher exact
  y,      // bootstrap
  b,      // bootstrap of raw B against zero
  b_adj,  // bootstrap of 2B-1 against zero
  f1,     // bootstrap of 2F1-1 against zero
  mn,     // bootstrap, undirected
};

inline constexpr int kScoredCount = 12;

const char* scored_name(Scored s);
std::optional<Scored> scored_from_name(const std::string& name);

// True when the decision for this table needs bootstrap resampling.
bool scored_needs_bootstrap(Scored s, const Table2x2& t,
                            std::int64_t lienert_min_n);

struct InferenceConfig {
  double alpha = 0.05;
  BootstrapConfig boot;     // boot.resamples == 0 disables bootstrap paths
  std::int64_t lienert_min_n = 31;  // smallest n using the asymptotic G test
};

// Per-table decision for one scored estimator. Estimators whose only test
// is the bootstrap return Fail when cfg.boot.resamples == 0.
Decision decide_scored(Scored s, const Table2x2& t, const InferenceConfig& cfg);

}  // namespace agree
