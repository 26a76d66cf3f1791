#pragma once

// Machine check of published quantile formulas: each printed expression is
// evaluated as written and fed back through the CDF.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lwsim/distributions.hpp"
#include "lwsim/reference_sets.hpp"

namespace lwsim {

enum class Verdict { VerifiedAsPrinted, CorrectedFormula, NoClosedForm };

std::string_view verdict_name(Verdict v);

/// A printed formula passes when max |F(Q(u)) - u| over the grid is at most
/// this.
inline constexpr double kPrintedFormulaTolerance = 1e-8;

/// Minimum grid size accepted by verify_family.
inline constexpr std::size_t kMinVerificationGrid = 99;

struct ErrataEntry {
  FamilyId family;
  Verdict verdict;
  /// Absent for families without a printed quantile. A printed value that is
  /// undefined (NaN, infinite) at some u counts as error 1.
  std::optional<double> max_roundtrip_error_printed;
  std::optional<double> max_roundtrip_error_implemented;
  /// Every W argument on the grid was >= 0 (principal branch is single-valued).
  bool lambert_argument_nonnegative = true;
  std::string note;
};

/// {i / (n + 1) : i = 1..n}; the default verification grid is n = 99.
std::vector<double> uniform_grid(std::size_t n = kMinVerificationGrid);

/// 0.001, then 0.005 to 0.995 in steps of 0.005, then 0.999 (201 points).
std::vector<double> roundtrip_grid();

/// Verdict for one parameter set. Throws DomainError if the grid has fewer
/// than 99 points or leaves (0, 1).
ErrataEntry verify_family(const DistributionSpec& spec,
                          std::span<const double> grid);

/// One entry per family, worst case over all of that family's reference sets:
/// a family is CorrectedFormula if its printed form fails for any set.
std::vector<ErrataEntry> errata_report(std::span<const ReferenceSet> sets,
                                       std::span<const double> grid);

}  // namespace lwsim
