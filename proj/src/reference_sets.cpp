#include "lwsim/reference_sets.hpp"

#include <charconv>
#include <sstream>
#include <string_view>

#include "lwsim/errors.hpp"

namespace lwsim {

// Generated from data/reference_params.txt at configure time.
extern const char* const kReferenceParamsText;

namespace {

constexpr int kSupportedVersion = 1;

[[noreturn]] void bad_line(int line_no, const std::string& what) {
  throw ParamError("reference sets, line " + std::to_string(line_no) + ": " +
                   what);
}

double parse_number(std::string_view text, int line_no) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    bad_line(line_no, "invalid number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<ReferenceSet> parse_reference_sets(std::istream& in) {
  std::vector<ReferenceSet> out;
  std::string line;
  int line_no = 0;
  bool seen_version = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;

    if (head == "version") {
      int version = 0;
      if (!(tokens >> version) || version != kSupportedVersion) {
        bad_line(line_no, "unsupported fixture version");
      }
      seen_version = true;
      continue;
    }
    if (!seen_version) bad_line(line_no, "missing 'version' header");

    const auto family = parse_family(head);
    if (!family) bad_line(line_no, "unknown family '" + head + "'");

    ReferenceSet set{*family, {}};
    std::string kv;
    while (tokens >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        bad_line(line_no, "expected key=value, got '" + kv + "'");
      }
      const std::string key = kv.substr(0, eq);
      const double value =
          parse_number(std::string_view(kv).substr(eq + 1), line_no);
      if (!set.params.emplace(key, value).second) {
        bad_line(line_no, "duplicate parameter '" + key + "'");
      }
    }
    out.push_back(std::move(set));
  }
  return out;
}

const std::vector<ReferenceSet>& default_reference_sets() {
  static const std::vector<ReferenceSet> sets = [] {
    std::istringstream in(kReferenceParamsText);
    return parse_reference_sets(in);
  }();
  return sets;
}

std::vector<ReferenceSet> reference_sets_for(FamilyId family) {
  std::vector<ReferenceSet> out;
  for (const auto& set : default_reference_sets()) {
    if (set.family == family) out.push_back(set);
  }
  return out;
}

}  // namespace lwsim
