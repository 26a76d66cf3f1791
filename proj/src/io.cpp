#include "lwsim/io.hpp"

#include <charconv>
#include <cmath>

namespace lwsim::io {
namespace {

nlohmann::json bound(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

nlohmann::json to_json(const DistributionSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : spec.params()) params[name] = value;
  return {{"family", family_name(spec.family())},
          {"params", params},
          {"support", {bound(spec.support().lo), bound(spec.support().hi)}}};
}

nlohmann::json to_json(const SampleBatch& batch) {
  return {{"algorithm", SeededStream::kAlgorithm},
          {"seed", batch.seed},
          {"method", method_name(batch.method)},
          {"n", batch.values.size()},
          {"spec", to_json(batch.spec)},
          {"values", batch.values}};
}

nlohmann::json to_json(const ErrataEntry& entry) {
  return {{"family", family_name(entry.family)},
          {"verdict", verdict_name(entry.verdict)},
          {"max_roundtrip_error_printed",
           optional_number(entry.max_roundtrip_error_printed)},
          {"max_roundtrip_error_implemented",
           optional_number(entry.max_roundtrip_error_implemented)},
          {"lambert_argument_nonnegative", entry.lambert_argument_nonnegative},
          {"note", entry.note}};
}

nlohmann::json to_json(std::span<const ErrataEntry> report) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : report) out.push_back(to_json(e));
  return out;
}

std::string to_csv(const SampleBatch& batch) {
  std::string out = "value\n";
  for (double v : batch.values) {
    out += format_number(v);
    out += '\n';
  }
  return out;
}

std::string to_csv(std::span<const ErrataEntry> report) {
  std::string out =
      "family,verdict,max_roundtrip_error_printed,"
      "max_roundtrip_error_implemented,note\n";
  for (const auto& e : report) {
    out += family_name(e.family);
    out += ',';
    out += verdict_name(e.verdict);
    out += ',';
    if (e.max_roundtrip_error_printed) {
      out += format_number(*e.max_roundtrip_error_printed);
    }
    out += ',';
    if (e.max_roundtrip_error_implemented) {
      out += format_number(*e.max_roundtrip_error_implemented);
    }
    out += ',';
    out += csv_quote(e.note);
    out += '\n';
  }
  return out;
}

}  // namespace lwsim::io
