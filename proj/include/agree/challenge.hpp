#pragma once

#include <string>
#include <vector>

#include "agree/estimators.hpp"
#include "agree/table.hpp"

namespace agree {

// Built-in challenge fixtures: nine regular scenarios (three agreement
// levels, three disagreement levels, two neutral, one parallel table with
// zero determinant) and eight extreme ones with 0/1 cells.
enum class ChallengeSet { regular, extreme };

struct ChallengeColumn {
  std::string label;  // short scenario tag
  Table2x2 table;
};

const std::vector<ChallengeColumn>& challenge_columns(ChallengeSet set);

// The thirteen estimator rows of the challenge report, in print order.
const std::vector<Est>& challenge_rows();

}  // namespace agree
