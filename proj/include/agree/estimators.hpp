#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "agree/table.hpp"

namespace agree {

// Why an estimate could not be produced. Zero denominators and log(0) are
// typed fails, never NaN or infinity: downstream mistake counting needs
// them countable, and the human-readable tables print them as div/0.
enum class FailReason : std::uint8_t {
  none,
  division_by_zero,
  undefined,
};

struct EstimateValue {
  double value = 0.0;
  FailReason fail = FailReason::none;

  bool ok() const { return fail == FailReason::none; }

  static EstimateValue of(double v) { return {v, FailReason::none}; }
  static EstimateValue div0() { return {0.0, FailReason::division_by_zero}; }
  static EstimateValue undef() { return {0.0, FailReason::undefined}; }
};

// Estimator identifiers, in the column order used by the study CSV.
enum class Est : int {
  g = 0,
  kappa,
  kappa_max,
  kappa_corrected,
  pi,
  ac1,
  q,
  y,
  r,
  chi2,
  cramer_v,
  pcc,
  mn_chi2,
  mn_norm,
  f1,
  f1_adj,
  b,
  b_adj,
  gamma,
  odds_ratio,
  log_odds_ratio,
  rr_pos,
  rr_neg,
};

inline constexpr int kEstCount = 23;

const char* est_name(Est e);  // CSV/CLI column name, e.g. "or", "log_or"
std::optional<Est> est_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Point estimators. Precondition everywhere: a valid table (cells >= 0,
// n >= 1). Every zero denominator yields a fail value, never a crash.
// ---------------------------------------------------------------------------

double p_observed(const Table2x2& t);  // (a+d)/n
double p_chance(const Table2x2& t);    // ((a+b)(a+c)+(c+d)(b+d))/n^2

// Holley-Guilford G = ((a+d)-(b+c))/n. Always defined; equals 2*p_o-1.
EstimateValue holley_guilford_g(const Table2x2& t);

// Cohen kappa = 2(ad-bc) / ((a+c)(c+d)+(b+d)(a+b)).
EstimateValue cohen_kappa(const Table2x2& t);

// Maximum kappa attainable under the observed marginals.
EstimateValue kappa_max(const Table2x2& t);

// kappa/kappa_max when kappa > 0; kappa unchanged otherwise (no correction
// is defined for disagreement).
EstimateValue kappa_corrected(const Table2x2& t);

// Scott pi = (ad - ((b+c)/2)^2) / ((a+(b+c)/2)(d+(b+c)/2)).
EstimateValue scott_pi(const Table2x2& t);
// Same statistic through the definitional chance-agreement route; kept as
// an independent path for cross-checking.
EstimateValue scott_pi_via_pc(const Table2x2& t);

// Gwet AC1 = (a^2+d^2-(b+c)^2/2) / (a^2+d^2+(b+c)^2/2+(a+d)(b+c)).
EstimateValue gwet_ac1(const Table2x2& t);

// Yule Q = (ad-bc)/(ad+bc).
EstimateValue yule_q(const Table2x2& t);

// Yule Y = (sqrt(ad)-sqrt(bc))/(sqrt(ad)+sqrt(bc)).
EstimateValue yule_y(const Table2x2& t);

// Pearson r = (ad-bc)/sqrt((a+b)(a+c)(b+d)(c+d)); identical to phi,
// Matthews, Spearman rho and Kendall tau on a 2x2 table.
EstimateValue pearson_r(const Table2x2& t);

// Pearson chi-squared, Cramer V = |ad-bc|/sqrt of the marginal product,
// and the contingency coefficient sqrt(chi2/(chi2+n)).
EstimateValue pearson_chi2(const Table2x2& t);
EstimateValue cramer_v(const Table2x2& t);
EstimateValue pcc(const Table2x2& t);

// Hubert Gamma = 1 - 4(a+d)(b+c)/n^2; equals G^2.
EstimateValue hubert_gamma(const Table2x2& t);

// McNemar chi-squared (b-c)^2/(b+c) and its normalized form |b-c|/(b+c).
EstimateValue mcnemar_chi2(const Table2x2& t);
EstimateValue mcnemar_normalized(const Table2x2& t);

// Dice F1 = 2a/(2a+b+c) and the [-1,1] rescaling 2*F1-1.
EstimateValue dice_f1(const Table2x2& t);
EstimateValue f1_adjusted(const Table2x2& t);

// Shankar-Bangdiwala B = (a^2+d^2)/((a+c)(a+b)+(b+d)(c+d)) and 2*B-1.
EstimateValue bangdiwala_b(const Table2x2& t);
EstimateValue b_adjusted(const Table2x2& t);

// Ratio family: OR = ad/bc, log OR, RR+ = (a/(a+b))/(c/(c+d)),
// RR- = (b/(a+b))/(d/(c+d)). Each component fails independently.
EstimateValue odds_ratio(const Table2x2& t);
EstimateValue log_odds_ratio(const Table2x2& t);
EstimateValue risk_ratio_positive(const Table2x2& t);
EstimateValue risk_ratio_negative(const Table2x2& t);

struct RatioFamily {
  EstimateValue odds_ratio;
  EstimateValue log_odds_ratio;
  EstimateValue rr_pos;
  EstimateValue rr_neg;
};
RatioFamily ratio_family(const Table2x2& t);

// All estimators for one table, each evaluated exactly once. Fail entries
// are preserved, never coerced to zero.
struct EstimateVector {
  std::array<EstimateValue, kEstCount> values{};
  double p_o = 0.0;
  double p_c = 0.0;

  const EstimateValue& operator[](Est e) const {
    return values[static_cast<int>(e)];
  }
};

EstimateVector estimate_all(const Table2x2& t);

// Single-estimator evaluation by id (same values as estimate_all).
EstimateValue estimate_one(Est e, const Table2x2& t);

// ---------------------------------------------------------------------------
// Qualitative categorization of kappa-like values.
// ---------------------------------------------------------------------------

enum class KappaScheme { landis_koch, altman, fleiss };

struct KappaCategory {
  KappaScheme scheme;
  std::string label;
};

// Interval membership per scheme; intervals are half-open with the top
// interval closed. Throws std::domain_error for values outside [-1,1].
KappaCategory classify_kappa(double value, KappaScheme scheme);

}  // namespace agree
