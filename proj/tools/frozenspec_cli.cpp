// frozenspec command-line front end. Talks to the library only through frozenspec.h.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frozenspec/frozenspec.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitUnreliable = 4;

struct ProblemDeleter {
  void operator()(fs_problem* p) const { fs_problem_free(p); }
};
struct ReportDeleter {
  void operator()(fs_report* r) const { fs_report_free(r); }
};
using ProblemPtr = std::unique_ptr<fs_problem, ProblemDeleter>;
using ReportPtr = std::unique_ptr<fs_report, ReportDeleter>;

// Bad input of any kind is a usage error; numerical trouble is "unreliable".
int exit_for(fs_status s) {
  switch (s) {
    case FS_OK: return kExitOk;
    case FS_ERR_PARAMETER:
    case FS_ERR_DOMAIN:
    case FS_ERR_MODE:
    case FS_ERR_CONFIG:
    case FS_ERR_NULL_ARGUMENT: return kExitUsage;
    case FS_ERR_NUMERIC:
    case FS_ERR_CONTOUR_THROUGH_ZERO:
    case FS_ERR_UNRELIABLE_COUNT: return kExitUnreliable;
    case FS_ERR_IO:
    case FS_ERR_INTERNAL: return kExitFailure;
  }
  return kExitFailure;
}

struct Failure {
  int code;
  std::string message;
};

void check(fs_status s) {
  if (s != FS_OK) throw Failure{exit_for(s), std::string(fs_status_name(s)) + ": " + fs_last_error()};
}

struct Globals {
  std::string config;
  std::uint64_t seed = 20240611;
  std::string out = "out";
  std::string format = "csv";
  std::string points;
  int alpha = 0;
  int beta = 0;
};

ProblemPtr load_problem(const Globals& g, bool required) {
  fs_problem* p = nullptr;
  if (!g.config.empty())
    check(fs_problem_load(g.config.c_str(), &p));
  else if (!g.points.empty())
    check(fs_problem_from_points(g.points.c_str(), g.alpha, g.beta, &p));
  else if (required)
    throw Failure{kExitUsage, "this subcommand needs --config or --points"};
  return ProblemPtr(p);
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Failure{kExitFailure, "cannot write " + tmp.string()};
    os << content;
    if (!os.flush()) throw Failure{kExitFailure, "write failed for " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Failure{kExitFailure, "cannot rename " + tmp.string() + ": " + ec.message()};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int precision_digits() {
  const char* env = std::getenv("FROZENSPEC_PRECISION");
  if (!env || !*env) return 50;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 20 || v > 10000)
    throw Failure{kExitUsage, std::string("FROZENSPEC_PRECISION must be an integer in [20, 10000], got '") + env + "'"};
  return static_cast<int>(v);
}

// Writes the table (csv or json), the plot and the manifest; prints the text record.
int finish(const std::string& subcommand, const Globals& g, const fs_report* report) {
  std::error_code ec;
  fs::create_directories(g.out, ec);
  if (ec) throw Failure{kExitFailure, "cannot create output directory " + g.out + ": " + ec.message()};
  std::vector<std::string> outputs;
  const fs::path table = fs::path(g.out) / (subcommand + (g.format == "json" ? ".json" : ".csv"));
  write_atomic(table, g.format == "json" ? fs_report_json(report) : fs_report_csv(report));
  outputs.push_back(table.string());
  const std::string svg = fs_report_svg(report);
  if (!svg.empty()) {
    const fs::path plot = fs::path(g.out) / (subcommand + ".svg");
    write_atomic(plot, svg);
    outputs.push_back(plot.string());
  }
  nlohmann::ordered_json manifest = {{"subcommand", subcommand},
                                     {"config_path", g.config},
                                     {"seed", g.seed},
                                     {"format", g.format},
                                     {"output_paths", outputs},
                                     {"tool_version", fs_version()},
                                     {"timestamp", utc_timestamp()}};
  write_atomic(fs::path(g.out) / "manifest.json", manifest.dump(2) + "\n");
  std::cout << fs_report_text(report);

  switch (fs_report_outcome(report)) {
    case FS_OUTCOME_OK: return kExitOk;
    case FS_OUTCOME_NOT_FOUND: return kExitNotFound;
    case FS_OUTCOME_UNRELIABLE: return kExitUnreliable;
    default: return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frozenspec: spectral laboratory for Sturm-Liouville operators with frozen arguments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fs_version()));

  Globals g;
  app.add_option("--config", g.config, "JSON problem file");
  app.add_option("--seed", g.seed, "random seed (recorded in the manifest)");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--points", g.points, "frozen points over pi when no config is given, e.g. 1/3,2/3");
  app.add_option("--alpha", g.alpha, "left boundary flag with --points")->check(CLI::Range(0, 1));
  app.add_option("--beta", g.beta, "right boundary flag with --points")->check(CLI::Range(0, 1));

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string grid = "0.1:10:0.01", path = "closed";
  CLI::App* charfun = sub("charfun", "Delta along a real grid, CSV plus SVG");
  charfun->add_option("--grid", grid, "start:stop:step");
  charfun->add_option("--path", path, "closed or det")->check(CLI::IsMember({"closed", "det"}));

  double radius = 5.5;
  CLI::App* spectrum = sub("spectrum", "eigenvalues inside |rho| <= radius");
  spectrum->add_option("--radius", radius, "disk radius in the rho-plane");

  std::string function = "charfun", region = "disk:5.5";
  double tol = 1e-6;
  CLI::App* zeros = sub("zeros", "locate zeros of Delta or a builtin");
  zeros->add_option("--function", function, "charfun, sine-transform or builtin:NAME");
  zeros->add_option("--region", region, "disk:R, annulus:r1,r2 or rect:x0,y0,x1,y1");
  zeros->add_option("--tol", tol, "box size tolerance");

  std::string density_function = "builtin:cos_pi";
  std::vector<double> radii = {10.2, 20.2, 40.2, 80.2};
  bool half_lattice = false;
  CLI::App* density = sub("density", "zero density slope over a radius ladder");
  density->add_option("--function", density_function, "charfun, sine-transform or builtin:NAME");
  density->add_option("--radii", radii, "comma-separated radii")->delimiter(',');
  density->add_flag("--half-lattice", half_lattice, "report one sign class");

  long n_max = 600;
  std::string method = "auto";
  CLI::App* lattice = sub("lattice-density", "vanishing density of the cosine sum on the half-integer lattice");
  lattice->add_option("--n-max", n_max, "lattice extent");
  lattice->add_option("--method", method, "auto, exact or numeric")->check(CLI::IsMember({"auto", "exact", "numeric"}));

  std::string rhos = "0.5,1.3+0.2i,2.7-0.4i,5.1+1i,9.3";
  CLI::App* identity = sub("identity-residual", "difference identity check for potential and potential2");
  identity->add_option("--rho", rhos, "comma-separated complex samples");

  fs_isospectral_params iso;
  fs_isospectral_defaults(&iso);
  std::string init = "auto";
  CLI::App* isospectral = sub("isospectral", "least-squares search for an isospectral partner");
  isospectral->add_option("--modes", iso.mode_budget, "sine modes in q^");
  isospectral->add_option("--tol", iso.tol, "objective tolerance");
  isospectral->add_option("--norm-floor", iso.norm_floor, "||q^|| constraint");
  isospectral->add_option("--restarts", iso.restarts, "random restarts");
  isospectral->add_option("--max-iterations", iso.max_iterations, "iterations per start");
  isospectral->add_option("--init", init, "auto, witness, random or zero")
      ->check(CLI::IsMember({"auto", "witness", "random", "zero"}));

  std::vector<double> part3_radii = {10.3, 20.3, 40.3, 80.3};
  CLI::App* part3 = sub("part3", "density bookkeeping for a windowed q^");
  part3->add_option("--radii", part3_radii, "comma-separated radii")->delimiter(',');

  std::vector<int> only;
  double tolerance_scale = 1.0;
  CLI::App* verify = sub("verify", "run the acceptance suite");
  verify->add_option("--only", only, "criterion ids")->delimiter(',');
  verify->add_option("--tolerance-scale", tolerance_scale, "multiplies every tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    fs_report* raw = nullptr;
    std::string name;
    if (charfun->parsed()) {
      name = "charfun";
      const auto p = load_problem(g, true);
      check(fs_charfun_grid(p.get(), grid.c_str(), path == "det" ? FS_PATH_DETERMINANT : FS_PATH_CLOSED_FORM, &raw));
    } else if (spectrum->parsed()) {
      name = "spectrum";
      const auto p = load_problem(g, true);
      check(fs_spectrum(p.get(), radius, g.seed, &raw));
    } else if (zeros->parsed()) {
      name = "zeros";
      const auto p = load_problem(g, function.rfind("builtin:", 0) != 0);
      check(fs_zeros(p.get(), function.c_str(), region.c_str(), tol, &raw));
    } else if (density->parsed()) {
      name = "density";
      const auto p = load_problem(g, density_function.rfind("builtin:", 0) != 0);
      check(fs_density(p.get(), density_function.c_str(), radii.data(), radii.size(), half_lattice, &raw));
    } else if (lattice->parsed()) {
      name = "lattice-density";
      const auto p = load_problem(g, true);
      const int m = method == "exact" ? FS_LATTICE_EXACT : method == "numeric" ? FS_LATTICE_NUMERIC : FS_LATTICE_AUTO;
      check(fs_lattice_density(p.get(), n_max, m, precision_digits(), &raw));
    } else if (identity->parsed()) {
      name = "identity-residual";
      const auto p = load_problem(g, true);
      std::vector<double> re(rhos.size() + 1), im(rhos.size() + 1);
      std::size_t n = 0;
      check(fs_parse_complex_list(rhos.c_str(), re.data(), im.data(), re.size(), &n));
      check(fs_identity_residual(p.get(), re.data(), im.data(), n, &raw));
    } else if (isospectral->parsed()) {
      name = "isospectral";
      const auto p = load_problem(g, true);
      iso.seed = g.seed;
      iso.init = init == "witness" ? FS_INIT_WITNESS
                 : init == "random" ? FS_INIT_RANDOM
                 : init == "zero"   ? FS_INIT_ZERO
                                    : FS_INIT_AUTO;
      check(fs_isospectral(p.get(), &iso, &raw));
    } else if (part3->parsed()) {
      name = "part3";
      const auto p = load_problem(g, true);
      check(fs_part3(p.get(), part3_radii.data(), part3_radii.size(), &raw));
    } else if (verify->parsed()) {
      name = "verify";
      check(fs_verify(only.data(), only.size(), tolerance_scale, &raw));
    }
    const ReportPtr report(raw);
    return finish(name, g, report.get());
  } catch (const Failure& f) {
    std::cerr << "frozenspec: " << f.message << '\n';
    return f.code;
  }
}
