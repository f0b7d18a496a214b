#include "agree/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agree/special.hpp"

namespace agree {

namespace {
inline double dd(std::int64_t v) { return static_cast<double>(v); }
}  // namespace

void BootstrapConfig::validate() const {
  if (resamples < 100) {
    throw std::invalid_argument("bootstrap resamples must be >= 100");
  }
  if (!(mass > 0.0 && mass < 1.0)) {
    throw std::invalid_argument("HDI mass must be in (0,1)");
  }
}

// ---------------------------------------------------------------------------
// Asymptotic / exact tests
// ---------------------------------------------------------------------------

TestResult lienert_u_test(const Table2x2& t) {
  const double n = dd(t.n());
  const double u = (dd(t.a + t.d) - n / 2.0) / std::sqrt(n / 4.0);
  TestResult res{TestMethod::lienert_u, TestStatus::ok, u, {}, {}};
  res.p_value = normal_two_sided_p(u);
  return res;
}

TestResult kappa_asymptotic_test(const Table2x2& t) {
  TestResult res{TestMethod::kappa_z, TestStatus::failed, 0.0, {}, {}};
  const EstimateValue k = cohen_kappa(t);
  if (!k.ok()) return res;
  if (t.row1() == 0 || t.row2() == 0 || t.col1() == 0 || t.col2() == 0) {
    return res;  // variance is exactly zero on an empty row/column
  }
  const double n = dd(t.n());
  const double r1 = dd(t.row1()) / n, r2 = dd(t.row2()) / n;
  const double c1 = dd(t.col1()) / n, c2 = dd(t.col2()) / n;
  const double pc = r1 * c1 + r2 * c2;
  const double num =
      pc + pc * pc - (r1 * c1 * (r1 + c1) + r2 * c2 * (r2 + c2));
  const double var0 = num / (n * (1.0 - pc) * (1.0 - pc));
  if (!(var0 > 0.0)) return res;
  const double z = k.value / std::sqrt(var0);
  res.status = TestStatus::ok;
  res.statistic = z;
  res.p_value = normal_two_sided_p(z);
  return res;
}

TestResult ac1_z_test(const Table2x2& t) {
  TestResult res{TestMethod::ac1_z, TestStatus::failed, 0.0, {}, {}};
  const EstimateValue est = gwet_ac1(t);
  if (!est.ok()) return res;
  const double n = dd(t.n());
  if (t.n() < 2) {
    res.status = TestStatus::degenerate;
    res.statistic = est.value;
    return res;
  }
  const double pi1 = dd(t.row1() + t.col1()) / (2.0 * n);
  const double pe = 2.0 * pi1 * (1.0 - pi1);
  const double one_m_pe = 1.0 - pe;  // >= 1/2, never zero
  const double ac1 = (p_observed(t) - pe) / one_m_pe;

  // Per-subject linearized scores by cell class. Agreement indicator is 1
  // for classes a and d; the chance term is sum_k (r_ik/2)(1-pi_k).
  const double kappa_agree = (1.0 - pe) / one_m_pe;  // = 1
  const double kappa_disagree = (0.0 - pe) / one_m_pe;
  const double pe_a = 1.0 - pi1;
  const double pe_bc = 0.5;
  const double pe_d = pi1;
  auto star = [&](double kappa_i, double pe_i) {
    return kappa_i - 2.0 * (1.0 - ac1) * (pe_i - pe) / one_m_pe;
  };
  const double s_a = star(kappa_agree, pe_a);
  const double s_bc = star(kappa_disagree, pe_bc);
  const double s_d = star(kappa_agree, pe_d);

  auto sq = [](double x) { return x * x; };
  const double ss = dd(t.a) * sq(s_a - ac1) + dd(t.b + t.c) * sq(s_bc - ac1) +
                    dd(t.d) * sq(s_d - ac1);
  const double var = ss / (n * (n - 1.0));
  if (!(var > 0.0)) {
    res.status = TestStatus::degenerate;
    res.statistic = ac1;
    return res;
  }
  const double z = ac1 / std::sqrt(var);
  res.status = TestStatus::ok;
  res.statistic = z;
  res.p_value = normal_two_sided_p(z);
  return res;
}

TestResult scott_pi_test(const Table2x2& t) {
  TestResult res{TestMethod::pi_z, TestStatus::failed, 0.0, {}, {}};
  const EstimateValue pi = scott_pi(t);
  if (!pi.ok()) return res;
  const double n = dd(t.n());
  const double po = p_observed(t);
  const double p1 = dd(t.row1() + t.col1()) / (2.0 * n);
  const double pe = p1 * p1 + (1.0 - p1) * (1.0 - p1);
  const double var = po * (1.0 - po) / (n * (1.0 - pe) * (1.0 - pe));
  res.status = TestStatus::ok;
  if (var > 0.0) {
    const double se = std::sqrt(var);
    res.statistic = pi.value / se;
    res.p_value = normal_two_sided_p(res.statistic);
    res.interval = std::make_pair(pi.value - 1.959963984540054 * se,
                                  pi.value + 1.959963984540054 * se);
  } else {
    // po is 0 or 1, pi is -1 or +1: the CI collapses onto the estimate
    res.statistic = pi.value > 0 ? HUGE_VAL : -HUGE_VAL;
    res.p_value = 0.0;
    res.interval = std::make_pair(pi.value, pi.value);
  }
  return res;
}

TestResult pearson_r_test(const Table2x2& t) {
  TestResult res{TestMethod::pearson_t, TestStatus::failed, 0.0, {}, {}};
  const EstimateValue r = pearson_r(t);
  if (!r.ok()) return res;
  const double df = dd(t.n()) - 2.0;
  if (df < 1.0) return res;
  res.status = TestStatus::ok;
  if (std::abs(r.value) >= 1.0) {
    res.statistic = r.value > 0 ? HUGE_VAL : -HUGE_VAL;
    res.p_value = 0.0;
    return res;
  }
  const double tt = r.value * std::sqrt(df / (1.0 - r.value * r.value));
  res.statistic = tt;
  res.p_value = student_t_two_sided_p(tt, df);
  return res;
}

TestResult exact_q_test(const Table2x2& t) {
  TestResult res{TestMethod::fisher_exact, TestStatus::failed, 0.0, {}, {}};
  const std::int64_t r1 = t.row1(), r2 = t.row2(), c1 = t.col1(), c2 = t.col2();
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) return res;
  const std::int64_t n = t.n();
  const std::int64_t lo = std::max<std::int64_t>(0, c1 - r2);
  const std::int64_t hi = std::min(r1, c1);
  const double log_denom = log_choose(n, c1);
  auto log_pmf = [&](std::int64_t x) {
    return log_choose(r1, x) + log_choose(r2, c1 - x) - log_denom;
  };
  const double obs = std::exp(log_pmf(t.a));
  // Sum every outcome no more likely than the observed one (relative
  // tolerance absorbs rounding in the pmf evaluation).
  const double cutoff = obs * (1.0 + 1e-7);
  double p = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double px = std::exp(log_pmf(x));
    if (px <= cutoff) p += px;
  }
  res.status = TestStatus::ok;
  res.statistic = obs;
  res.p_value = std::min(1.0, p);
  return res;
}

TestResult mcnemar_exact_test(const Table2x2& t) {
  TestResult res{TestMethod::mcnemar_binomial, TestStatus::failed, 0.0, {}, {}};
  const std::int64_t m = t.b + t.c;
  if (m < 1) return res;
  const double lower = binom_half_cdf(t.b, m);
  const double upper = binom_half_cdf(m - t.b, m);  // P(X >= b) by symmetry
  res.status = TestStatus::ok;
  res.statistic = dd(t.b);
  res.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
  return res;
}

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

Rng table_rng(std::uint64_t base_seed, const Table2x2& t) {
  return Rng(mix_seed(base_seed, {t.n(), t.a, t.b, t.c, t.d}));
}

Rng statistic_rng(std::uint64_t base_seed, const Table2x2& t, Est statistic) {
  return Rng(mix_seed(base_seed, {t.n(), t.a, t.b, t.c, t.d,
                                  1000 + static_cast<std::int64_t>(statistic)}));
}

Table2x2 bootstrap_resample(const Table2x2& t, Rng& rng) {
  const std::int64_t n = t.n();
  const double inv_n = 1.0 / dd(n);
  const double ta = dd(t.a) * inv_n;
  const double tb = dd(t.a + t.b) * inv_n;
  const double tc = dd(t.a + t.b + t.c) * inv_n;
  Table2x2 r{0, 0, 0, 0};
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    if (u < ta)
      ++r.a;
    else if (u < tb)
      ++r.b;
    else if (u < tc)
      ++r.c;
    else
      ++r.d;
  }
  return r;
}

std::optional<std::pair<double, double>> hdi(std::vector<double>& samples,
                                             double mass) {
  if (!(mass > 0.0 && mass < 1.0)) {
    throw std::invalid_argument("HDI mass must be in (0,1)");
  }
  const std::size_t m = samples.size();
  if (m < 2) return std::nullopt;
  std::sort(samples.begin(), samples.end());
  const std::size_t window =
      std::min<std::size_t>(m, static_cast<std::size_t>(
                                   std::ceil(mass * static_cast<double>(m))));
  std::size_t best = 0;
  double best_width = samples[window - 1] - samples[0];
  for (std::size_t i = 1; i + window <= m; ++i) {
    const double width = samples[i + window - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return std::make_pair(samples[best], samples[best + window - 1]);
}

BootstrapStat bootstrap_stat_for(Est e) {
  switch (e) {
    // F1 and B are resampled on their own [0,1] scale and tested against
    // zero, with the rejection direction read from the rescaled value.
    case Est::f1:
      return {Est::f1, Est::f1_adj, false};
    case Est::b:
      return {Est::b, Est::b_adj, false};
    case Est::mn_norm:
    case Est::mn_chi2:
      return {Est::mn_norm, Est::mn_norm, true};
    default:
      return {e, e, false};
  }
}

Decision decision_from_samples(const EstimateValue& stat_point,
                               const EstimateValue& sign_point,
                               std::vector<double>& samples, long drops,
                               long resamples, double mass, bool undirected) {
  Decision dec;
  dec.undirected = undirected;
  if (!stat_point.ok() || !sign_point.ok()) return dec;  // fail
  if (2 * drops > resamples) return dec;                 // fail
  const auto interval = hdi(samples, mass);
  if (!interval) return dec;  // fail
  const bool zero_inside = interval->first <= 0.0 && 0.0 <= interval->second;
  dec.pbin = zero_inside ? 1 : 0;
  if (zero_inside) {
    dec.region = Region::h0;
  } else if (undirected) {
    dec.region = Region::h1_plus;  // recorded as plain rejection
  } else if (sign_point.value > 0.0) {
    dec.region = Region::h1_plus;
  } else if (sign_point.value < 0.0) {
    dec.region = Region::h1_minus;
  } else {
    dec.region = Region::h0;  // point estimate exactly at the null
  }
  return dec;
}

Decision bootstrap_decision(const Table2x2& t, Est e,
                            const BootstrapConfig& cfg) {
  cfg.validate();
  const BootstrapStat spec = bootstrap_stat_for(e);
  const EstimateValue stat_point = estimate_one(spec.statistic, t);
  const EstimateValue sign_point = estimate_one(spec.sign_source, t);
  if (!stat_point.ok() || !sign_point.ok()) {
    Decision dec;
    dec.undirected = spec.undirected;
    return dec;
  }
  Rng rng = statistic_rng(cfg.seed, t, spec.statistic);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(cfg.resamples));
  long drops = 0;
  for (long i = 0; i < cfg.resamples; ++i) {
    const Table2x2 rs = bootstrap_resample(t, rng);
    const EstimateValue v = estimate_one(spec.statistic, rs);
    if (v.ok())
      samples.push_back(v.value);
    else
      ++drops;
  }
  return decision_from_samples(stat_point, sign_point, samples, drops,
                               cfg.resamples, cfg.mass, spec.undirected);
}

std::optional<std::pair<double, double>> bootstrap_interval(
    const Table2x2& t, Est e, const BootstrapConfig& cfg, long* drops_out) {
  cfg.validate();
  const BootstrapStat spec = bootstrap_stat_for(e);
  Rng rng = statistic_rng(cfg.seed, t, spec.statistic);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(cfg.resamples));
  long drops = 0;
  for (long i = 0; i < cfg.resamples; ++i) {
    const Table2x2 rs = bootstrap_resample(t, rng);
    const EstimateValue v = estimate_one(spec.statistic, rs);
    if (v.ok())
      samples.push_back(v.value);
    else
      ++drops;
  }
  if (drops_out) *drops_out = drops;
  if (2 * drops > cfg.resamples) return std::nullopt;
  return hdi(samples, cfg.mass);
}

// ---------------------------------------------------------------------------
// Decision assembly
// ---------------------------------------------------------------------------

Decision decide(const EstimateValue& sign_point, const TestResult& test,
                double alpha, bool undirected) {
  Decision dec;
  dec.undirected = undirected;
  if (!sign_point.ok() || !test.ok()) return dec;  // fail
  if (!test.p_value) return dec;
  dec.p_value = test.p_value;
  if (*test.p_value >= alpha) {
    dec.region = Region::h0;
  } else if (undirected) {
    dec.region = Region::h1_plus;
  } else if (sign_point.value > 0.0) {
    dec.region = Region::h1_plus;
  } else if (sign_point.value < 0.0) {
    dec.region = Region::h1_minus;
  } else {
    dec.region = Region::h0;
  }
  return dec;
}

const char* scored_name(Scored s) {
  static constexpr const char* kNames[kScoredCount] = {
      "g", "sac", "ac1", "pi", "kappa", "r",
      "q", "y",   "b",   "b_adj", "f1", "mn",
  };
  return kNames[static_cast<int>(s)];
}

std::optional<Scored> scored_from_name(const std::string& name) {
  for (int i = 0; i < kScoredCount; ++i) {
    if (name == scored_name(static_cast<Scored>(i))) {
      return static_cast<Scored>(i);
    }
  }
  return std::nullopt;
}

bool scored_needs_bootstrap(Scored s, const Table2x2& t,
                            std::int64_t lienert_min_n) {
  switch (s) {
    case Scored::g:
      return t.n() < lienert_min_n;
    case Scored::sac:
    case Scored::y:
    case Scored::b:
    case Scored::b_adj:
    case Scored::f1:
    case Scored::mn:
      return true;
    case Scored::ac1:
      return ac1_z_test(t).status == TestStatus::degenerate;
    case Scored::pi:
    case Scored::kappa:
    case Scored::r:
    case Scored::q:
      return false;
  }
  return false;
}

Decision decide_scored(Scored s, const Table2x2& t,
                       const InferenceConfig& cfg) {
  const bool boot_on = cfg.boot.resamples > 0;
  auto boot = [&](Est e) -> Decision {
    if (!boot_on) return Decision{};  // fail: bootstrap disabled
    return bootstrap_decision(t, e, cfg.boot);
  };
  switch (s) {
    case Scored::g:
      if (t.n() >= cfg.lienert_min_n) {
        return decide(holley_guilford_g(t), lienert_u_test(t), cfg.alpha);
      }
      return boot(Est::g);
    case Scored::sac:
      return boot(Est::g);
    case Scored::ac1: {
      const TestResult z = ac1_z_test(t);
      if (z.status == TestStatus::degenerate) return boot(Est::ac1);
      return decide(gwet_ac1(t), z, cfg.alpha);
    }
    case Scored::pi:
      return decide(scott_pi(t), scott_pi_test(t), cfg.alpha);
    case Scored::kappa:
      return decide(cohen_kappa(t), kappa_asymptotic_test(t), cfg.alpha);
    case Scored::r:
      return decide(pearson_r(t), pearson_r_test(t), cfg.alpha);
    case Scored::q:
      return decide(yule_q(t), exact_q_test(t), cfg.alpha);
    case Scored::y:
      return boot(Est::y);
    case Scored::b:
      return boot(Est::b);
    case Scored::b_adj:
      return boot(Est::b_adj);
    case Scored::f1:
      return boot(Est::f1);
    case Scored::mn:
      return boot(Est::mn_norm);
  }
  return Decision{};
}

}  // namespace agree
