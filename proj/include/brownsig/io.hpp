#pragma once

#include <string>

#include "brownsig/measure.hpp"

namespace brownsig {

// {"type":"atomic","atoms":[{"x":..,"w":..}]} and friends; unknown keys are rejected.
MeasureSpec parse_measure_json(const std::string& text);
MeasureSpec load_measure_file(const std::string& path);
std::string measure_to_json(const MeasureSpec& spec);

// NAME[:p1,p2,...]: semicircle[:variance], uniform[:lo,hi], bernoulli[:alpha],
// power[:k] (density (k+1) x^k on [0,1]).
MeasureSpec parse_preset(const std::string& name);

// FNV-1a hash of the canonical JSON form, as 16 hex digits.
std::string measure_digest(const MeasureSpec& spec);

}  // namespace brownsig
