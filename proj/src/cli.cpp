#include "lwsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lwsim/distributions.hpp"
#include "lwsim/errors.hpp"
#include "lwsim/io.hpp"
#include "lwsim/reference_sets.hpp"
#include "lwsim/sampler.hpp"
#include "lwsim/verification.hpp"

namespace lwsim::cli {
namespace {

/// Analytic quantiles failing this roundtrip are reported as numeric failures.
constexpr double kAnalyticResidualLimit = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::vector<std::string> params;
  double u = 0.0;
  double t = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::string format = "csv";
  std::string method = "auto";
  bool numeric = false;
  unsigned threads = 1;
  std::size_t grid = kMinVerificationGrid;
};

std::string family_listing() {
  std::ostringstream os;
  os << "Families (name: parameters; constraints):\n";
  for (FamilyId id : all_families()) {
    const auto& info = family_info(id);
    os << "  " << info.name << ": ";
    for (std::size_t i = 0; i < info.parameters.size(); ++i) {
      os << (i ? "," : "") << info.parameters[i];
    }
    os << "; " << info.constraints << '\n';
  }
  return os.str();
}

ParamMap parse_params(const std::vector<std::string>& raw) {
  ParamMap out;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
      throw UsageError("--param expects key=value, got '" + kv + "'");
    }
    double v = 0.0;
    const char* first = kv.data() + eq + 1;
    const char* last = kv.data() + kv.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw UsageError("--param " + kv + ": value is not a number");
    }
    if (!out.emplace(kv.substr(0, eq), v).second) {
      throw UsageError("--param " + kv.substr(0, eq) + " given twice");
    }
  }
  return out;
}

FamilyId require_family(const std::string& name) {
  if (name.empty()) throw UsageError("--family is required");
  const auto id = parse_family(name);
  if (!id) {
    throw UsageError("unknown family '" + name + "' (see `list`)");
  }
  return *id;
}

DistributionSpec require_spec(const Options& o) {
  return validate(require_family(o.family), parse_params(o.params));
}

SampleMethod parse_method(const std::string& m) {
  if (m == "analytic") return SampleMethod::Analytic;
  if (m == "numeric") return SampleMethod::Numeric;
  return SampleMethod::Auto;
}

void print_scalar(std::ostream& out, const Options& o, const char* key,
                  double v) {
  if (o.format == "json") {
    out << nlohmann::json{{key, v}}.dump() << '\n';
  } else {
    out << io::format_number(v) << '\n';
  }
}

void cmd_quantile(const Options& o, std::ostream& out) {
  const auto spec = require_spec(o);
  const QuantileResult r =
      o.numeric ? numeric_quantile(spec, o.u, o.tol) : quantile(spec, o.u);
  const double limit = o.numeric ? o.tol : kAnalyticResidualLimit;
  if (!(r.roundtrip_residual <= limit)) {
    throw NumericFailure("quantile residual " +
                         io::format_number(r.roundtrip_residual) +
                         " exceeds " + io::format_number(limit) +
                         " (t = " + io::format_number(r.t) + ")");
  }
  if (o.format == "json") {
    out << nlohmann::json{{"t", r.t},
                          {"path", path_name(r.path)},
                          {"roundtrip_residual", r.roundtrip_residual}}
               .dump()
        << '\n';
  } else {
    out << io::format_number(r.t) << '\n';
  }
}

void cmd_sample(const Options& o, std::ostream& out) {
  const auto spec = require_spec(o);
  const auto batch =
      sample(spec, o.n, o.seed, parse_method(o.method), o.threads);
  if (o.format == "json") {
    out << io::to_json(batch).dump() << '\n';
  } else {
    out << io::to_csv(batch);
  }
}

void cmd_ks(const Options& o, std::ostream& out) {
  const auto spec = require_spec(o);
  const auto batch =
      sample(spec, o.n, o.seed, parse_method(o.method), o.threads);
  const double d = ks_statistic(batch);
  const double scaled = d * std::sqrt(static_cast<double>(o.n));
  if (o.format == "json") {
    out << nlohmann::json{{"n", o.n},
                          {"seed", o.seed},
                          {"method", method_name(batch.method)},
                          {"d", d},
                          {"sqrt_n_d", scaled},
                          {"critical", kKsCriticalScaled},
                          {"pass", scaled <= kKsCriticalScaled}}
               .dump()
        << '\n';
  } else {
    out << "n,seed,method,d,sqrt_n_d,critical\n"
        << o.n << ',' << o.seed << ',' << method_name(batch.method) << ','
        << io::format_number(d) << ',' << io::format_number(scaled) << ','
        << io::format_number(kKsCriticalScaled) << '\n';
  }
}

void print_report(const Options& o, std::span<const ErrataEntry> report,
                  std::ostream& out) {
  if (o.format == "json") {
    out << io::to_json(report).dump(2) << '\n';
  } else {
    out << io::to_csv(report);
  }
}

void cmd_verify(const Options& o, std::ostream& out) {
  const auto grid = uniform_grid(o.grid);
  std::vector<ReferenceSet> sets;
  if (o.family.empty()) {
    if (!o.params.empty()) throw UsageError("--param requires --family");
    sets = default_reference_sets();
  } else if (o.params.empty()) {
    sets = reference_sets_for(require_family(o.family));
  } else {
    sets.push_back({require_family(o.family), parse_params(o.params)});
  }
  const auto report = errata_report(sets, grid);
  print_report(o, report, out);
}

void cmd_errata(const Options& o, std::ostream& out) {
  const auto report =
      errata_report(default_reference_sets(), uniform_grid(o.grid));
  print_report(o, report, out);
}

void cmd_list(const Options& o, std::ostream& out) {
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (FamilyId id : all_families()) {
      const auto& info = family_info(id);
      arr.push_back({{"family", info.name},
                     {"title", info.title},
                     {"parameters", info.parameters},
                     {"constraints", info.constraints},
                     {"survival", info.survival_text},
                     {"analytic_quantile", info.kind != QuantileKind::None}});
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "family,parameters,constraints,survival,analytic_quantile\n";
  for (FamilyId id : all_families()) {
    const auto& info = family_info(id);
    std::string params;
    for (auto p : info.parameters) params += (params.empty() ? "" : " ") + std::string(p);
    out << info.name << ',' << params << ",\"" << info.constraints << "\",\""
        << info.survival_text << "\","
        << (info.kind != QuantileKind::None ? "yes" : "no") << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lambert-W quantile functions and inverse-transform sampling "
               "for lifetime distributions",
               "lwsim"};
  app.footer(family_listing());
  app.require_subcommand(1, 1);

  Options o;
  const std::vector<std::string> formats{"csv", "json"};

  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "Family identifier");
    sub->add_option("--param", o.params, "Parameter as key=value (repeat)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(formats));
  };
  auto* q = app.add_subcommand("quantile", "Evaluate Q(u)");
  add_dist(q);
  add_format(q);
  q->add_option("--u", o.u, "Probability in (0, 1)")->required();
  q->add_flag("--numeric", o.numeric, "Use numeric CDF inversion");
  q->add_option("--tol", o.tol, "Numeric tolerance (>= 1e-14)");

  auto* c = app.add_subcommand("cdf", "Evaluate F(t)");
  add_dist(c);
  add_format(c);
  c->add_option("--t", o.t, "Point")->required();

  auto* s = app.add_subcommand("sf", "Evaluate the survival function");
  add_dist(s);
  add_format(s);
  s->add_option("--t", o.t, "Point")->required();

  auto* sm = app.add_subcommand("sample", "Draw a seeded sample");
  add_dist(sm);
  add_format(sm);

  auto* ks = app.add_subcommand("ks", "Sample and compute the KS statistic");
  add_dist(ks);
  add_format(ks);

  // --n defaults differ per subcommand; bind after creation.
  std::size_t sample_n = 1;
  std::size_t ks_n = 100000;
  sm->add_option("--n", sample_n, "Sample size")->check(CLI::PositiveNumber);
  ks->add_option("--n", ks_n, "Sample size")->check(CLI::PositiveNumber);
  for (auto* sub : {sm, ks}) {
    sub->add_option("--seed", o.seed, "64-bit seed");
    sub->add_option("--method", o.method, "analytic | numeric | auto")
        ->check(CLI::IsMember({"analytic", "numeric", "auto"}));
    sub->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  }

  auto* v = app.add_subcommand(
      "verify", "Check printed quantile formulas (all families by default)");
  add_dist(v);
  add_format(v);
  v->add_option("--grid", o.grid, "Number of grid points (>= 99)")
      ->check(CLI::Range(static_cast<std::size_t>(kMinVerificationGrid),
                         static_cast<std::size_t>(100000)));

  auto* e = app.add_subcommand("errata", "Errata report over reference sets");
  add_format(e);
  e->add_option("--grid", o.grid, "Number of grid points (>= 99)")
      ->check(CLI::Range(static_cast<std::size_t>(kMinVerificationGrid),
                         static_cast<std::size_t>(100000)));

  auto* l = app.add_subcommand("list", "List families");
  add_format(l);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (q->parsed()) {
      cmd_quantile(o, out);
    } else if (c->parsed()) {
      print_scalar(out, o, "cdf", cdf(require_spec(o), o.t));
    } else if (s->parsed()) {
      print_scalar(out, o, "sf", survival(require_spec(o), o.t));
    } else if (sm->parsed()) {
      o.n = sample_n;
      cmd_sample(o, out);
    } else if (ks->parsed()) {
      o.n = ks_n;
      cmd_ks(o, out);
    } else if (v->parsed()) {
      cmd_verify(o, out);
    } else if (e->parsed()) {
      cmd_errata(o, out);
    } else if (l->parsed()) {
      cmd_list(o, out);
    }
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ParamError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const NoAnalyticForm& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const NumericFailure& ex) {
    err << "numeric failure: " << ex.what() << '\n';
    return kExitNumeric;
  } catch (const BracketError& ex) {
    err << "numeric failure: " << ex.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace lwsim::cli
