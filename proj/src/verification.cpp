#include "lwsim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lwsim/errors.hpp"

namespace lwsim {
namespace {

double roundtrip_error(const DistributionSpec& spec, double t, double u) {
  if (!std::isfinite(t)) return 1.0;
  return std::abs(cdf(spec, t) - u);
}

std::string format_error(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", e);
  return buf;
}

std::string compose_note(const FamilyInfo& info, Verdict verdict,
                         double printed_error) {
  switch (verdict) {
    case Verdict::NoClosedForm:
      return std::string(info.note);
    case Verdict::VerifiedAsPrinted: {
      std::string note = info.implements_printed_form
                             ? "printed quantile inverts the CDF"
                             : "printed quantile inverts the CDF for these "
                               "parameters";
      if (info.implements_printed_form && !info.note.empty()) {
        note += "; " + std::string(info.note);
      }
      return note;
    }
    case Verdict::CorrectedFormula:
      if (!info.implements_printed_form) return std::string(info.note);
      return "printed quantile fails the roundtrip (max error " +
             format_error(printed_error) + ")";
  }
  return {};
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::VerifiedAsPrinted:
      return "VerifiedAsPrinted";
    case Verdict::CorrectedFormula:
      return "CorrectedFormula";
    case Verdict::NoClosedForm:
      return "NoClosedForm";
  }
  return "?";
}

std::vector<double> uniform_grid(std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return grid;
}

std::vector<double> roundtrip_grid() {
  std::vector<double> grid;
  grid.reserve(201);
  grid.push_back(0.001);
  for (int i = 1; i <= 199; ++i) grid.push_back(0.005 * i);
  grid.push_back(0.999);
  return grid;
}

ErrataEntry verify_family(const DistributionSpec& spec,
                          std::span<const double> grid) {
  if (grid.size() < kMinVerificationGrid) {
    throw DomainError("verify_family: grid needs at least 99 points");
  }
  for (double u : grid) {
    if (!(u > 0.0 && u < 1.0)) {
      throw DomainError("verify_family: grid points must lie in (0, 1)");
    }
  }

  const FamilyInfo& info = family_info(spec.family());
  ErrataEntry entry{spec.family(), Verdict::NoClosedForm, std::nullopt,
                    std::nullopt, true, {}};
  if (info.kind == QuantileKind::None) {
    entry.note = compose_note(info, entry.verdict, 0.0);
    return entry;
  }

  double printed_max = 0.0;
  double implemented_max = 0.0;
  for (double u : grid) {
    if (!(u < spec.max_probability())) continue;

    double best = 1.0;
    for (double t : printed_quantile(spec, u)) {
      best = std::min(best, roundtrip_error(spec, t, u));
    }
    printed_max = std::max(printed_max, best);

    implemented_max = std::max(implemented_max, quantile(spec, u).roundtrip_residual);

    if (const auto arg = lambert_argument(spec, u); arg && !(*arg >= 0.0)) {
      entry.lambert_argument_nonnegative = false;
    }
  }

  entry.max_roundtrip_error_printed = printed_max;
  entry.max_roundtrip_error_implemented = implemented_max;
  entry.verdict = printed_max <= kPrintedFormulaTolerance
                      ? Verdict::VerifiedAsPrinted
                      : Verdict::CorrectedFormula;
  entry.note = compose_note(info, entry.verdict, printed_max);
  return entry;
}

std::vector<ErrataEntry> errata_report(std::span<const ReferenceSet> sets,
                                       std::span<const double> grid) {
  std::map<FamilyId, ErrataEntry> merged;
  for (const auto& set : sets) {
    const ErrataEntry e = verify_family(validate(set.family, set.params), grid);
    auto [it, inserted] = merged.emplace(set.family, e);
    if (inserted) continue;
    ErrataEntry& acc = it->second;
    if (e.max_roundtrip_error_printed) {
      acc.max_roundtrip_error_printed =
          std::max(*acc.max_roundtrip_error_printed, *e.max_roundtrip_error_printed);
      acc.max_roundtrip_error_implemented = std::max(
          *acc.max_roundtrip_error_implemented, *e.max_roundtrip_error_implemented);
    }
    acc.lambert_argument_nonnegative =
        acc.lambert_argument_nonnegative && e.lambert_argument_nonnegative;
    if (e.verdict == Verdict::CorrectedFormula &&
        acc.verdict != Verdict::CorrectedFormula) {
      acc.verdict = Verdict::CorrectedFormula;
      acc.note = e.note;
    }
  }

  // Registry order; families without a reference set are omitted.
  std::vector<ErrataEntry> out;
  for (FamilyId id : all_families()) {
    if (auto it = merged.find(id); it != merged.end()) {
      out.push_back(it->second);
    }
  }
  return out;
}

}  // namespace lwsim
