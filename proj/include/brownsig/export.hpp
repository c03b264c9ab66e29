#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "brownsig/brown.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/rmt.hpp"

namespace brownsig {

// %.17g, so every written number parses back to the same double.
std::string fmt(double x);

void write_profile_csv(std::ostream& os, const BrownProfile& prof);
void write_law_csv(std::ostream& os, const AdditiveLaw& law);
void write_cloud_csv(std::ostream& os, const EigenCloud& cloud);

struct SummaryInfo {
  std::string label;
  std::string digest;
  double max_height = 0.0;
};
std::string summary_json(const BrownProfile& prof, const SummaryInfo& info);

// Two stacked panels: the boundary of Omega_t (with an optional eigenvalue scatter), and w_t against a.
std::string render_svg(const BrownProfile& prof, const SummaryInfo& info,
                       const std::vector<std::complex<double>>& cloud = {});

}  // namespace brownsig
