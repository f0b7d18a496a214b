#include "agree/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace agree {

namespace {

// All cell products are formed as doubles from exact int64 counts; cells up
// to 1e6 keep every product below 2^53, so the arithmetic is exact until
// the final division.
inline double dd(std::int64_t v) { return static_cast<double>(v); }

}  // namespace

const char* est_name(Est e) {
  static constexpr const char* kNames[kEstCount] = {
      "g",      "kappa", "kappa_max", "kappa_corrected",
      "pi",     "ac1",   "q",         "y",
      "r",      "chi2",  "cramer_v",  "pcc",
      "mn_chi2", "mn_norm", "f1",     "f1_adj",
      "b",      "b_adj", "gamma",     "or",
      "log_or", "rr_pos", "rr_neg",
  };
  return kNames[static_cast<int>(e)];
}

std::optional<Est> est_from_name(const std::string& name) {
  for (int i = 0; i < kEstCount; ++i) {
    if (name == est_name(static_cast<Est>(i))) return static_cast<Est>(i);
  }
  return std::nullopt;
}

double p_observed(const Table2x2& t) { return dd(t.a + t.d) / dd(t.n()); }

double p_chance(const Table2x2& t) {
  const double n = dd(t.n());
  return (dd(t.row1()) * dd(t.col1()) + dd(t.row2()) * dd(t.col2())) / (n * n);
}

EstimateValue holley_guilford_g(const Table2x2& t) {
  return EstimateValue::of(dd((t.a + t.d) - (t.b + t.c)) / dd(t.n()));
}

EstimateValue cohen_kappa(const Table2x2& t) {
  const double den = dd(t.col1()) * dd(t.row2()) + dd(t.col2()) * dd(t.row1());
  if (den == 0.0) return EstimateValue::div0();
  return EstimateValue::of(2.0 * (dd(t.a) * dd(t.d) - dd(t.b) * dd(t.c)) / den);
}

EstimateValue kappa_max(const Table2x2& t) {
  const double n = dd(t.n());
  const double pc = p_chance(t);
  if (1.0 - pc == 0.0) return EstimateValue::div0();
  const double po_max =
      dd(std::min(t.col1(), t.row1()) + std::min(t.col2(), t.row2())) / n;
  return EstimateValue::of((po_max - pc) / (1.0 - pc));
}

EstimateValue kappa_corrected(const Table2x2& t) {
  const EstimateValue k = cohen_kappa(t);
  if (!k.ok() || k.value <= 0.0) return k;
  const EstimateValue km = kappa_max(t);
  if (!km.ok() || km.value == 0.0) return EstimateValue::div0();
  return EstimateValue::of(k.value / km.value);
}

EstimateValue scott_pi(const Table2x2& t) {
  const double half_off = dd(t.b + t.c) / 2.0;
  const double den = (dd(t.a) + half_off) * (dd(t.d) + half_off);
  if (den == 0.0) return EstimateValue::div0();
  return EstimateValue::of((dd(t.a) * dd(t.d) - half_off * half_off) / den);
}

EstimateValue scott_pi_via_pc(const Table2x2& t) {
  const double n = dd(t.n());
  const double p1 = dd(t.col1() + t.row1()) / (2.0 * n);
  const double p2 = dd(t.row2() + t.col2()) / (2.0 * n);
  const double pc = p1 * p1 + p2 * p2;
  if (1.0 - pc == 0.0) return EstimateValue::div0();
  return EstimateValue::of((p_observed(t) - pc) / (1.0 - pc));
}

EstimateValue gwet_ac1(const Table2x2& t) {
  const double diag_sq = dd(t.a) * dd(t.a) + dd(t.d) * dd(t.d);
  const double off = dd(t.b + t.c);
  const double half_off_sq = off * off / 2.0;
  const double den = diag_sq + half_off_sq + dd(t.a + t.d) * off;
  if (den == 0.0) return EstimateValue::div0();
  return EstimateValue::of((diag_sq - half_off_sq) / den);
}

EstimateValue yule_q(const Table2x2& t) {
  const double ad = dd(t.a) * dd(t.d);
  const double bc = dd(t.b) * dd(t.c);
  if (ad + bc == 0.0) return EstimateValue::div0();
  return EstimateValue::of((ad - bc) / (ad + bc));
}

EstimateValue yule_y(const Table2x2& t) {
  const double sad = std::sqrt(dd(t.a) * dd(t.d));
  const double sbc = std::sqrt(dd(t.b) * dd(t.c));
  if (sad + sbc == 0.0) return EstimateValue::div0();
  return EstimateValue::of((sad - sbc) / (sad + sbc));
}

EstimateValue pearson_r(const Table2x2& t) {
  const double prod = dd(t.row1()) * dd(t.col1()) * dd(t.col2()) * dd(t.row2());
  if (prod == 0.0) return EstimateValue::div0();
  return EstimateValue::of((dd(t.a) * dd(t.d) - dd(t.b) * dd(t.c)) /
                           std::sqrt(prod));
}

EstimateValue pearson_chi2(const Table2x2& t) {
  const double prod = dd(t.row1()) * dd(t.row2()) * dd(t.col1()) * dd(t.col2());
  if (prod == 0.0) return EstimateValue::div0();
  const double det = dd(t.a) * dd(t.d) - dd(t.b) * dd(t.c);
  return EstimateValue::of(det * det * dd(t.n()) / prod);
}

EstimateValue cramer_v(const Table2x2& t) {
  const double prod = dd(t.row1()) * dd(t.row2()) * dd(t.col1()) * dd(t.col2());
  if (prod == 0.0) return EstimateValue::div0();
  const double det = dd(t.a) * dd(t.d) - dd(t.b) * dd(t.c);
  return EstimateValue::of(std::abs(det) / std::sqrt(prod));
}

EstimateValue pcc(const Table2x2& t) {
  const EstimateValue chi2 = pearson_chi2(t);
  if (!chi2.ok()) return chi2;
  return EstimateValue::of(std::sqrt(chi2.value / (chi2.value + dd(t.n()))));
}

EstimateValue hubert_gamma(const Table2x2& t) {
  const double n = dd(t.n());
  return EstimateValue::of(1.0 - 4.0 * dd(t.a + t.d) * dd(t.b + t.c) / (n * n));
}

EstimateValue mcnemar_chi2(const Table2x2& t) {
  const double off = dd(t.b + t.c);
  if (off == 0.0) return EstimateValue::div0();
  const double diff = dd(t.b) - dd(t.c);
  return EstimateValue::of(diff * diff / off);
}

EstimateValue mcnemar_normalized(const Table2x2& t) {
  const double off = dd(t.b + t.c);
  if (off == 0.0) return EstimateValue::div0();
  return EstimateValue::of(std::abs(dd(t.b) - dd(t.c)) / off);
}

EstimateValue dice_f1(const Table2x2& t) {
  const double den = 2.0 * dd(t.a) + dd(t.b + t.c);
  if (den == 0.0) return EstimateValue::div0();
  return EstimateValue::of(2.0 * dd(t.a) / den);
}

EstimateValue f1_adjusted(const Table2x2& t) {
  const EstimateValue f1 = dice_f1(t);
  if (!f1.ok()) return f1;
  return EstimateValue::of(2.0 * f1.value - 1.0);
}

EstimateValue bangdiwala_b(const Table2x2& t) {
  const double den = dd(t.col1()) * dd(t.row1()) + dd(t.col2()) * dd(t.row2());
  if (den == 0.0) return EstimateValue::div0();
  return EstimateValue::of((dd(t.a) * dd(t.a) + dd(t.d) * dd(t.d)) / den);
}

EstimateValue b_adjusted(const Table2x2& t) {
  const EstimateValue b = bangdiwala_b(t);
  if (!b.ok()) return b;
  return EstimateValue::of(2.0 * b.value - 1.0);
}

EstimateValue odds_ratio(const Table2x2& t) {
  const double bc = dd(t.b) * dd(t.c);
  if (bc == 0.0) return EstimateValue::div0();
  return EstimateValue::of(dd(t.a) * dd(t.d) / bc);
}

EstimateValue log_odds_ratio(const Table2x2& t) {
  const double ad = dd(t.a) * dd(t.d);
  const double bc = dd(t.b) * dd(t.c);
  if (bc == 0.0) return EstimateValue::div0();
  if (ad == 0.0) return EstimateValue::undef();  // log(0)
  return EstimateValue::of(std::log(ad) - std::log(bc));
}

EstimateValue risk_ratio_positive(const Table2x2& t) {
  if (t.row1() == 0 || t.row2() == 0) return EstimateValue::div0();
  const double denom_rate = dd(t.c) / dd(t.row2());
  if (denom_rate == 0.0) return EstimateValue::div0();
  return EstimateValue::of((dd(t.a) / dd(t.row1())) / denom_rate);
}

EstimateValue risk_ratio_negative(const Table2x2& t) {
  if (t.row1() == 0 || t.row2() == 0) return EstimateValue::div0();
  const double denom_rate = dd(t.d) / dd(t.row2());
  if (denom_rate == 0.0) return EstimateValue::div0();
  return EstimateValue::of((dd(t.b) / dd(t.row1())) / denom_rate);
}

RatioFamily ratio_family(const Table2x2& t) {
  return RatioFamily{odds_ratio(t), log_odds_ratio(t), risk_ratio_positive(t),
                     risk_ratio_negative(t)};
}

EstimateVector estimate_all(const Table2x2& t) {
  EstimateVector v;
  v.p_o = p_observed(t);
  v.p_c = p_chance(t);
  auto set = [&v](Est e, EstimateValue x) {
    v.values[static_cast<int>(e)] = x;
  };
  set(Est::g, holley_guilford_g(t));
  set(Est::kappa, cohen_kappa(t));
  set(Est::kappa_max, kappa_max(t));
  set(Est::kappa_corrected, kappa_corrected(t));
  set(Est::pi, scott_pi(t));
  set(Est::ac1, gwet_ac1(t));
  set(Est::q, yule_q(t));
  set(Est::y, yule_y(t));
  set(Est::r, pearson_r(t));
  set(Est::chi2, pearson_chi2(t));
  set(Est::cramer_v, cramer_v(t));
  set(Est::pcc, pcc(t));
  set(Est::mn_chi2, mcnemar_chi2(t));
  set(Est::mn_norm, mcnemar_normalized(t));
  set(Est::f1, dice_f1(t));
  set(Est::f1_adj, f1_adjusted(t));
  set(Est::b, bangdiwala_b(t));
  set(Est::b_adj, b_adjusted(t));
  set(Est::gamma, hubert_gamma(t));
  set(Est::odds_ratio, odds_ratio(t));
  set(Est::log_odds_ratio, log_odds_ratio(t));
  set(Est::rr_pos, risk_ratio_positive(t));
  set(Est::rr_neg, risk_ratio_negative(t));
  return v;
}

EstimateValue estimate_one(Est e, const Table2x2& t) {
  switch (e) {
    case Est::g: return holley_guilford_g(t);
    case Est::kappa: return cohen_kappa(t);
    case Est::kappa_max: return kappa_max(t);
    case Est::kappa_corrected: return kappa_corrected(t);
    case Est::pi: return scott_pi(t);
    case Est::ac1: return gwet_ac1(t);
    case Est::q: return yule_q(t);
    case Est::y: return yule_y(t);
    case Est::r: return pearson_r(t);
    case Est::chi2: return pearson_chi2(t);
    case Est::cramer_v: return cramer_v(t);
    case Est::pcc: return pcc(t);
    case Est::mn_chi2: return mcnemar_chi2(t);
    case Est::mn_norm: return mcnemar_normalized(t);
    case Est::f1: return dice_f1(t);
    case Est::f1_adj: return f1_adjusted(t);
    case Est::b: return bangdiwala_b(t);
    case Est::b_adj: return b_adjusted(t);
    case Est::gamma: return hubert_gamma(t);
    case Est::odds_ratio: return odds_ratio(t);
    case Est::log_odds_ratio: return log_odds_ratio(t);
    case Est::rr_pos: return risk_ratio_positive(t);
    case Est::rr_neg: return risk_ratio_negative(t);
  }
  return EstimateValue::undef();
}

KappaCategory classify_kappa(double value, KappaScheme scheme) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw std::domain_error("kappa category undefined outside [-1,1]");
  }
  const char* label = nullptr;
  switch (scheme) {
    case KappaScheme::landis_koch:
      if (value < 0.0) label = "Poor";
      else if (value < 0.2) label = "Slight";
      else if (value < 0.4) label = "Fair";
      else if (value < 0.6) label = "Moderate";
      else if (value < 0.8) label = "Substantial";
      else label = "Almost perfect";
      break;
    case KappaScheme::altman:
      if (value < 0.2) label = "Poor";
      else if (value < 0.4) label = "Fair";
      else if (value < 0.6) label = "Moderate";
      else if (value < 0.8) label = "Good";
      else label = "Very good";
      break;
    case KappaScheme::fleiss:
      if (value < 0.4) label = "Poor";
      else if (value < 0.75) label = "Intermediate to Good";
      else label = "Excellent";
      break;
  }
  return KappaCategory{scheme, label};
}

}  // namespace agree
