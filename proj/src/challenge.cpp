#include "agree/challenge.hpp"

namespace agree {

const std::vector<ChallengeColumn>& challenge_columns(ChallengeSet set) {
  static const std::vector<ChallengeColumn> regular = {
      {"agr.high", {90, 10, 10, 90}},
      {"agr.high", {90, 11, 9, 90}},
      {"agr.low", {60, 41, 39, 60}},
      {"dis.high", {10, 90, 90, 10}},
      {"dis.high", {10, 91, 89, 10}},
      {"dis.low", {41, 60, 60, 39}},
      {"neutral", {50, 50, 50, 50}},
      {"neutral", {75, 25, 75, 25}},
      {"dis.parallel", {44, 88, 22, 44}},
  };
  static const std::vector<ChallengeColumn> extreme = {
      {"agr.c1", {94, 11, 1, 94}},
      {"dis.d1", {11, 94, 94, 1}},
      {"agr.b1c1", {99, 1, 1, 99}},
      {"agr.b0c1", {100, 0, 1, 99}},
      {"agr.d0", {180, 10, 10, 0}},
      {"dis.d0", {10, 180, 10, 0}},
      {"agr.c0d0", {190, 10, 0, 0}},
      {"dis.c0d0", {10, 190, 0, 0}},
  };
  return set == ChallengeSet::regular ? regular : extreme;
}

const std::vector<Est>& challenge_rows() {
  static const std::vector<Est> rows = {
      Est::g,     Est::ac1,   Est::pi, Est::kappa, Est::kappa_corrected,
      Est::r,     Est::q,     Est::y,  Est::b,     Est::b_adj,
      Est::f1,    Est::f1_adj, Est::mn_norm,
  };
  return rows;
}

}  // namespace agree
