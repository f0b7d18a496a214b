#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agree/study.hpp"

namespace agree {

// Static SVG renderers. Element order and number formatting are fixed so
// identical inputs produce byte-identical files.

struct DensityPlotData {
  std::string estimator;
  std::string benchmark;
  int nbins = 64;
  H0Band band;                       // benchmark H0 band on the po axis
  std::vector<double> correct_mass;  // indexed by bin, size nbins+1
  std::vector<double> mistake_mass;
  double fail_fraction = 0.0;
  std::int64_t total = 0;
};

std::string density_svg(const DensityPlotData& data);

struct HexbinPlotCell {
  double x = 0.0;
  double y = 0.0;
  std::int64_t count = 0;
};

struct HexbinPlotData {
  std::string estimator;
  std::string filter;  // empty = none
  double hex_radius = 0.05 / 1.7320508075688772;
  std::vector<HexbinPlotCell> cells;
  std::int64_t computable = 0;
  std::int64_t total = 0;
};

std::string hexbin_svg(const HexbinPlotData& data);

}  // namespace agree
