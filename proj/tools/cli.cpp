#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "polyvol/error.hpp"
#include "polyvol/euclidean.hpp"
#include "polyvol/flexibility.hpp"
#include "polyvol/spherical.hpp"
#include "sides_parser.hpp"

namespace polyvol::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Request {
  std::string space = "spherical";
  std::string sides;
  std::string method = "closed";
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;

  // maximize / sweep
  int n = 0;
  double perimeter = 0.0;
  std::string start;
  unsigned long long seed = kDefaultSeed;
  double x_min = 0.0;
  double x_max = 0.0;
  int steps = 0;
};

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double resolve_tol(const Request& req) {
  if (req.tol) {
    if (!(*req.tol > 0.0)) throw Error(ErrorKind::Domain, "--tol must be positive");
    return *req.tol;
  }
  if (const char* env = std::getenv("POLYVOL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::Domain, "POLYVOL_TOL must be a positive number");
    }
    return v;
  }
  return kDefaultTol;
}

SideLengths make_sides(const Request& req) {
  ParsedSides parsed = parse_sides(req.sides);
  if (req.space == "euclidean") return SideLengths::euclidean(std::move(parsed.values));
  if (parsed.pi_multiples) return SideLengths::spherical_pi_multiples(std::move(*parsed.pi_multiples));
  return SideLengths::spherical(std::move(parsed.values));
}

Json subsets_json(const std::vector<std::uint32_t>& subsets) {
  Json list = Json::array();
  for (const auto s : subsets) {
    Json indices = Json::array();
    for (int i : subset_indices(s)) indices.push_back(i + 1);
    list.push_back(std::move(indices));
  }
  return list;
}

Json feasibility_json(const FeasibilityReport& f) {
  return Json{{"verdict", std::string(to_string(f.verdict))},
              {"min_margin", f.min_margin},
              {"witnesses", subsets_json(f.witnesses)}};
}

Json sides_json(const SideLengths& r) {
  Json sides = Json::array();
  for (double v : r.values()) sides.push_back(v);
  return sides;
}

// Writes to --out when given, otherwise to out.
void emit_csv(const Request& req, const std::string& csv, std::ostream& out) {
  if (req.out_path.empty()) {
    out << csv;
    return;
  }
  std::ofstream file(req.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Domain, "cannot open '" + req.out_path + "' for writing");
  file << csv;
}

int cmd_volume(const Request& req, std::ostream& out) {
  const double tol = resolve_tol(req);
  const SideLengths r = make_sides(req);
  const bool spherical = r.space() == Space::Spherical;
  if (!spherical && req.method != "closed") {
    throw Error(ErrorKind::Unsupported, "euclidean volumes support --method closed only");
  }

  VolumeResult result;
  std::optional<VolumeResult> series;
  if (req.method == "series") {
    result = witten_series(r, tol);
  } else if (req.method == "exact") {
    result = spherical_closed_form(r, true);
  } else {
    result = spherical ? spherical_closed_form(r) : euclidean_closed_form(r);
    if (req.method == "both") series = witten_series(r, tol);
  }

  Json j{{"space", std::string(to_string(r.space()))},
         {"n", r.size()},
         {"sides", sides_json(r)},
         {"method", req.method},
         {"value", result.value},
         {"error_bound", result.error_bound},
         {"feasibility", feasibility_json(result.feasibility)},
         {"terms", result.terms}};
  if (result.exact_coefficient) {
    j["exact"] = to_string(*result.exact_coefficient) + " * pi^" + std::to_string(result.pi_power);
  }
  if (series) {
    j["series_value"] = series->value;
    j["series_error_bound"] = series->error_bound;
    j["discrepancy"] = std::fabs(series->value - result.value);
  }
  out << j.dump() << '\n';
  return kOk;
}

int cmd_feasible(const Request& req, std::ostream& out) {
  const SideLengths r = make_sides(req);
  const FeasibilityReport f =
      r.space() == Space::Spherical ? spherical_feasibility(r) : euclidean_feasibility(r);
  Json j{{"space", std::string(to_string(r.space()))}, {"n", r.size()}, {"sides", sides_json(r)}};
  const Json report = feasibility_json(f);
  for (const auto& [key, value] : report.items()) j[key] = value;
  out << j.dump() << '\n';
  switch (f.verdict) {
    case Verdict::Interior: return kOk;
    case Verdict::Boundary: return kBoundary;
    case Verdict::Empty: return kEmpty;
  }
  return kOk;
}

int cmd_maximize(const Request& req, std::ostream& out) {
  if (req.n < 3 || req.n > static_cast<int>(kMaxSides)) throw Error(ErrorKind::OutOfRange, "--n must be in [3, 24]");
  const auto n = static_cast<std::size_t>(req.n);
  if (!(req.perimeter > 0.0 && req.perimeter < static_cast<double>(n) * std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "--perimeter must lie in (0, n pi)");
  }
  std::vector<double> start =
      req.start.empty() ? random_simplex_point(n, req.perimeter, req.seed) : parse_sides(req.start).values;
  const double tol = resolve_tol(req);
  const OptimizerTrace trace = maximize_flexibility(n, req.perimeter, start, tol);

  std::ostringstream csv;
  csv << "iter";
  for (std::size_t i = 1; i <= n; ++i) csv << ",x_" << i;
  csv << ",volume\r\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    csv << k;
    for (double v : trace.iterates[k]) csv << ',' << csv_number(v);
    csv << ',' << csv_number(trace.volumes[k]) << "\r\n";
  }

  Json limit = Json::array();
  for (double v : trace.iterates.back()) limit.push_back(v);
  Json start_json = Json::array();
  for (double v : start) start_json.push_back(v);
  const Json summary{{"n", n},
                     {"perimeter", req.perimeter},
                     {"start", start_json},
                     {"volume_at_start", trace.volumes.front()},
                     {"limit", limit},
                     {"volume_at_limit", trace.volumes.back()},
                     {"iterations", trace.iterations},
                     {"converged", trace.converged}};

  if (!req.out_path.empty()) {
    emit_csv(req, csv.str(), out);
    out << summary.dump() << '\n';
  } else if (req.format == "csv") {
    out << csv.str();
  } else {
    out << summary.dump() << '\n';
  }
  return trace.converged ? kOk : kUsage;
}

int cmd_sweep(const Request& req, std::ostream& out) {
  if (req.n < 4 || req.n > static_cast<int>(kMaxSides)) throw Error(ErrorKind::OutOfRange, "--n must be in [4, 24]");
  if (!(req.x_min > 0.0 && req.x_min < req.x_max && req.x_max < std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "need 0 < --min < --max < pi");
  }
  if (req.steps < 2) throw Error(ErrorKind::Domain, "--steps must be at least 2");
  const double tol = resolve_tol(req);
  const auto n = static_cast<std::size_t>(req.n);

  std::ostringstream csv;
  csv << "x,volume,dvolume\r\n";
  for (int j = 0; j < req.steps; ++j) {
    double x = req.x_min + (req.x_max - req.x_min) * j / (req.steps - 1);
    if (j == req.steps - 1) x = req.x_max;
    const double v = spherical_closed_form(SideLengths::spherical(std::vector<double>(n, x))).value;
    const double dv = regular_volume_derivative(req.n, x, tol);
    csv << csv_number(x) << ',' << csv_number(v) << ',' << csv_number(dv) << "\r\n";
  }
  emit_csv(req, csv.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symplectic volumes of spherical and euclidean polygon spaces"};
  app.require_subcommand(1);
  Request req;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", req.space, "spherical or euclidean")
        ->check(CLI::IsMember({"spherical", "euclidean"}));
    sub->add_option("--sides", req.sides, "comma-separated side-lengths, e.g. \"pi/2,pi/2,pi/2\"")->required();
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", req.tol, "absolute tolerance (default 1e-8, or POLYVOL_TOL)");
  };

  auto* volume = app.add_subcommand("volume", "symplectic volume of the polygon space");
  add_space(volume);
  add_tol(volume);
  volume->add_option("--method", req.method, "series | closed | both | exact")
      ->check(CLI::IsMember({"series", "closed", "both", "exact"}));

  auto* feasible = app.add_subcommand("feasible", "nonemptiness check; exit 0 interior, 3 boundary, 4 empty");
  add_space(feasible);

  auto* maximize = app.add_subcommand("maximize", "averaging iteration towards the regular polygon");
  maximize->add_option("--n", req.n, "number of sides")->required();
  maximize->add_option("--perimeter", req.perimeter, "perimeter, below n pi")->required();
  maximize->add_option("--start", req.start, "comma-separated start point (default: random)");
  maximize->add_option("--seed", req.seed, "seed for the random start");
  maximize->add_option("--out", req.out_path, "trace CSV path");
  maximize->add_option("--format", req.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  add_tol(maximize);

  auto* sweep = app.add_subcommand("sweep", "regular-polygon volume and derivative on a grid");
  sweep->add_option("--n", req.n, "number of sides")->required();
  sweep->add_option("--min", req.x_min, "smallest side-length")->required();
  sweep->add_option("--max", req.x_max, "largest side-length")->required();
  sweep->add_option("--steps", req.steps, "grid points, endpoints included")->required();
  sweep->add_option("--out", req.out_path, "CSV path (default stdout)");
  add_tol(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "polyvol: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*volume) return cmd_volume(req, out);
    if (*feasible) return cmd_feasible(req, out);
    if (*maximize) return cmd_maximize(req, out);
    if (*sweep) return cmd_sweep(req, out);
  } catch (const Error& e) {
    err << "polyvol: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("polyvol");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace polyvol::cli
