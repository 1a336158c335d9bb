// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library only through drot.h.
//
// Exit codes: 0 success, 1 configuration error, 2 unresolved result.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "drot/drot.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 1;
constexpr int kUnresolved = 2;

struct ConfigError {
  std::string message;
};

struct Options {
  std::string lambda;
  std::string eta = "rat:0/1";
  std::string radius;
  std::string radius_sq;
  std::string seed;
  std::string out;
  std::string csv_out;
  std::string format;  // default: text for orbit, json elsewhere
  std::string radii;
  std::string max_norm_sq;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t period = 0;
  unsigned threads = 0;
  unsigned size_px = 640;
  std::uint64_t max_listed = 1000;
};

struct StringDeleter {
  void operator()(char* s) const { drot_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ParamsDeleter {
  void operator()(drot_params* p) const { drot_params_destroy(p); }
};
struct ReportDeleter {
  void operator()(drot_report* r) const { drot_report_destroy(r); }
};

void check(drot_status s) {
  if (s != DROT_OK) throw ConfigError{drot_last_error()};
}

std::unique_ptr<drot_params, ParamsDeleter> make_params(const Options& o) {
  if (o.lambda.empty()) throw ConfigError{"--lambda is required"};
  drot_params* p = nullptr;
  check(drot_params_create(o.lambda.c_str(), o.eta.c_str(), &p));
  return std::unique_ptr<drot_params, ParamsDeleter>(p);
}

/// Radius text in the library's grammar: R, or "sq:" R^2.
std::string radius_arg(const Options& o) {
  if (!o.radius.empty() && !o.radius_sq.empty()) throw ConfigError{"give only one of --radius and --radius-sq"};
  if (!o.radius.empty()) return o.radius;
  if (!o.radius_sq.empty()) return "sq:" + o.radius_sq;
  throw ConfigError{"--radius or --radius-sq is required"};
}

drot_budget budget(const Options& o) {
  return drot_budget{o.max_steps, o.max_norm_sq.empty() ? nullptr : o.max_norm_sq.c_str()};
}

std::pair<std::string, std::string> split_seed(const std::string& seed) {
  const auto comma = seed.find(',');
  if (seed.empty() || comma == std::string::npos || seed.find(',', comma + 1) != std::string::npos)
    throw ConfigError{"--seed must have the form x,y"};
  return {seed.substr(0, comma), seed.substr(comma + 1)};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError{"cannot open " + o.out + " for writing"};
  f << text;
  if (!f) throw ConfigError{"failed writing " + o.out};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError{"cannot open " + path + " for writing"};
  f << text;
  if (!f) throw ConfigError{"failed writing " + path};
}

std::string take(char* s) { return std::string(OwnedString(s).get()); }

class Timer {
 public:
  explicit Timer(const char* label) : label_(label), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::fprintf(stderr, "%s: %.3f s\n", label_, s);
  }

 private:
  const char* label_;
  std::chrono::steady_clock::time_point start_;
};

int cmd_orbit(const Options& o) {
  auto p = make_params(o);
  const auto [x, y] = split_seed(o.seed);
  const drot_budget b = budget(o);
  char* raw = nullptr;
  check(drot_orbit_json(p.get(), x.c_str(), y.c_str(), &b, o.max_listed, &raw));
  const std::string json = take(raw);
  drot_orbit_info info{};
  check(drot_detect_period(p.get(), x.c_str(), y.c_str(), &b, &info));
  if (o.format == "json") {
    emit(o, json);
  } else {
    // Text form: read the needed fields back from the JSON document.
    auto doc = nlohmann::json::parse(json);
    std::string text;
    if (info.periodic) {
      text += "period " + std::to_string(info.period) + "\n";
      text += "symmetry " + doc["symmetry"].get<std::string>() + "\n";
      text += "canonical (" + doc["canonical"][0].dump() + "," + doc["canonical"][1].dump() + ")\n";
      if (doc.contains("states")) {
        text += "orbit";
        for (const auto& s : doc["states"]) text += " (" + s[0].dump() + "," + s[1].dump() + ")";
        text += "\n";
      }
    } else {
      text += "UNRESOLVED after " + std::to_string(info.steps_used) + " steps\n";
    }
    emit(o, text);
  }
  return info.periodic ? kOk : kUnresolved;
}

int cmd_census(const Options& o) {
  auto p = make_params(o);
  const drot_budget b = budget(o);
  Timer t("census");
  if (!o.radii.empty()) {
    if (!o.radius.empty() || !o.radius_sq.empty()) throw ConfigError{"--radii replaces --radius"};
    char* raw = nullptr;
    check(drot_growth_json(p.get(), o.radii.c_str(), &b, o.threads, &raw));
    const std::string json = take(raw);
    emit(o, json);
    return nlohmann::json::parse(json)["poisoned"].get<bool>() ? kUnresolved : kOk;
  }
  const std::string radius = radius_arg(o);
  drot_report* raw_report = nullptr;
  check(drot_census_run(p.get(), radius.c_str(), &b, o.threads, &raw_report));
  std::unique_ptr<drot_report, ReportDeleter> report(raw_report);
  char* raw = nullptr;
  if (o.format == "csv")
    check(drot_census_csv(report.get(), &raw));
  else
    check(drot_census_json(report.get(), &raw));
  emit(o, take(raw));
  if (!o.csv_out.empty()) {
    check(drot_census_csv(report.get(), &raw));
    write_file(o.csv_out, take(raw));
  }
  drot_census_counts counts{};
  check(drot_census_get_counts(report.get(), &counts));
  return counts.unresolved_seeds == 0 ? kOk : kUnresolved;
}

int cmd_trap(const Options& o) {
  auto p = make_params(o);
  const std::string radius = radius_arg(o);
  Timer t("trap");
  char* raw = nullptr;
  check(drot_trap_json(p.get(), radius.c_str(), o.threads, &raw));
  emit(o, take(raw));
  return kOk;
}

int cmd_verify(const Options& o) {
  auto p = make_params(o);
  const std::string radius = radius_arg(o);
  Timer t("verify");
  char* raw = nullptr;
  check(drot_verify_json(p.get(), radius.c_str(), o.threads, &raw));
  emit(o, take(raw));
  return kOk;
}

int cmd_enumerate(const Options& o) {
  auto p = make_params(o);
  if (o.period == 0) throw ConfigError{"--period must be at least 1"};
  std::optional<std::string> radius;
  if (!o.radius.empty() || !o.radius_sq.empty()) radius = radius_arg(o);
  const drot_budget b = budget(o);
  Timer t("enumerate-period");
  char* raw = nullptr;
  check(drot_enumerate_period_json(p.get(), o.period, radius ? radius->c_str() : nullptr, &b, o.threads, &raw));
  const std::string json = take(raw);
  emit(o, json);
  return nlohmann::json::parse(json)["complete"].get<bool>() ? kOk : kUnresolved;
}

int cmd_equidist(const Options& o) {
  auto p = make_params(o);
  const std::string radius = radius_arg(o);
  Timer t("equidist");
  char* raw = nullptr;
  check(drot_equidist_json(p.get(), radius.c_str(), &raw));
  emit(o, take(raw));
  return kOk;
}

int cmd_plot(const Options& o) {
  auto p = make_params(o);
  const std::string radius = radius_arg(o);
  char* raw = nullptr;
  check(drot_plot_svg(p.get(), radius.c_str(), o.size_px, o.threads, &raw));
  emit(o, take(raw));
  return kOk;
}

/// Joins "--seed" with its value so that negative coordinates such as
/// "-1,4" are not mistaken for options.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      args.push_back(a + "=" + argv[++i]);
    } else {
      args.push_back(std::move(a));
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-orbit experiments for discretized planar rotations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--lambda", o.lambda, "rotation coefficient, rat:a/c or quad:a,b,c,d")->required();
    sub->add_option("--eta", o.eta, "shift coefficient")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads, 0 for all cores")->capture_default_str();
    sub->add_option("--out", o.out, "output file, default stdout");
  };
  auto radius = [&](CLI::App* sub) {
    sub->add_option("--radius", o.radius, "ball radius R as an exact rational");
    sub->add_option("--radius-sq", o.radius_sq, "R^2 as an exact rational");
  };
  auto budget_opts = [&](CLI::App* sub) {
    sub->add_option("--max-steps", o.max_steps, "step budget per orbit")->capture_default_str();
    sub->add_option("--max-norm-sq", o.max_norm_sq, "abort orbits whose squared norm exceeds this");
  };

  auto* orbit = app.add_subcommand("orbit", "period, symmetry class and states of one orbit");
  common(orbit);
  budget_opts(orbit);
  orbit->add_option("--seed", o.seed, "initial state x,y")->required();
  orbit->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  orbit->add_option("--max-listed", o.max_listed, "list the states of orbits up to this period")
      ->capture_default_str();

  auto* census = app.add_subcommand("census", "all orbits meeting a ball");
  common(census);
  radius(census);
  budget_opts(census);
  census->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  census->add_option("--csv", o.csv_out, "also write the orbit representatives as CSV");
  census->add_option("--radii", o.radii, "comma-separated radii: growth of the orbit count instead");

  auto* trap = app.add_subcommand("trap", "trap-region point counts");
  common(trap);
  radius(trap);

  auto* verify = app.add_subcommand("verify", "symmetric-seed and trap bookkeeping");
  common(verify);
  radius(verify);

  auto* enumerate = app.add_subcommand("enumerate-period", "all orbits of one period");
  common(enumerate);
  radius(enumerate);
  budget_opts(enumerate);
  enumerate->add_option("--period", o.period, "exact period")->required();

  auto* equidist = app.add_subcommand("equidist", "residue statistics of lambda*Y/2 for |Y| <= R");
  common(equidist);
  radius(equidist);

  auto* plot = app.add_subcommand("plot", "SVG figure of the trap region");
  common(plot);
  radius(plot);
  plot->add_option("--size", o.size_px, "image size in pixels")->capture_default_str();

  try {
    auto args = normalize_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }
  if (o.format.empty()) o.format = *orbit ? "text" : "json";

  try {
    if (*orbit) return cmd_orbit(o);
    if (*census) return cmd_census(o);
    if (*trap) return cmd_trap(o);
    if (*verify) return cmd_verify(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*equidist) return cmd_equidist(o);
    if (*plot) return cmd_plot(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
