#pragma once

#include <istream>
#include <string>
#include <vector>

#include "lwsim/distributions.hpp"

namespace lwsim {

/// One registered parameter set: a family plus named parameter values.
struct ReferenceSet {
  FamilyId family;
  ParamMap params;
};

/// Parses the text fixture format:
///
///   # comment
///   version 1
///   weibull2 a=1 b=1
///
/// One record per line. Throws ParamError with the line number on malformed
/// input, unknown families or an unsupported version.
std::vector<ReferenceSet> parse_reference_sets(std::istream& in);

/// The fixture shipped with the library (data/reference_params.txt).
const std::vector<ReferenceSet>& default_reference_sets();

std::vector<ReferenceSet> reference_sets_for(FamilyId family);

}  // namespace lwsim
