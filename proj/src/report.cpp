#include "frozenspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "frozenspec/errors.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace frozenspec {

namespace {

using ojson = nlohmann::ordered_json;

std::string r17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson cjson(cplx z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_real(const std::string& raw, const char* what) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// Key/value header followed by the CSV block.
std::string record(const std::string& kind, const std::vector<std::pair<std::string, std::string>>& fields,
                   const std::string& csv) {
  std::ostringstream os;
  os << "record: " << kind << '\n';
  for (const auto& [k, v] : fields) os << k << ": " << v << '\n';
  if (!csv.empty()) os << "--- csv\n" << csv << "--- end\n";
  return os.str();
}

ojson config_json(const FrozenConfig& c) {
  ojson j;
  if (c.rational_points()) {
    ojson arr = ojson::array();
    for (const auto& f : *c.rational_points()) arr.push_back(f.str());
    j["points_over_pi"] = arr;
  }
  j["points"] = c.points();
  j["alpha"] = c.alpha();
  j["beta"] = c.beta();
  return j;
}

ojson potential_json(const Potential& q) {
  ojson j;
  j["label"] = q.label();
  if (!q.sine_coeffs().empty()) j["sine_coeffs"] = q.sine_coeffs();
  if (!q.grid_samples().empty()) j["grid_points"] = q.grid_samples().size();
  ojson sup = ojson::array();
  for (const auto& iv : q.support()) sup.push_back({iv.lo, iv.hi});
  j["support"] = sup;
  return j;
}

ojson density_json(const DensityReport& d) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < d.radii.size(); ++i) rows.push_back({{"radius", d.radii[i]}, {"count", d.counts[i]}});
  return ojson{{"counts", rows},
               {"fitted_slope", d.fitted_slope},
               {"slope_stderr", d.slope_stderr},
               {"intercept", d.intercept},
               {"half_lattice", d.half_lattice},
               {"full_disk_slope", d.full_disk_slope},
               {"full_disk_stderr", d.full_disk_stderr}};
}

std::string density_csv(const DensityReport& d) {
  std::ostringstream os;
  os << "radius,count,contour_nodes,max_residual\n";
  for (std::size_t i = 0; i < d.radii.size(); ++i)
    os << r17(d.radii[i]) << ',' << d.counts[i] << ',' << d.details[i].contour_nodes << ','
       << r17(d.details[i].max_residual) << '\n';
  return os.str();
}

std::string svg_density(const DensityReport& d, const std::string& title) {
  detail::PlotSeries counts{"N(r)", d.radii, {}, "#1f77b4", true};
  for (long c : d.counts) counts.y.push_back(static_cast<double>(c));
  detail::PlotSeries fit{"least-squares line", {}, {}, "#d62728", false};
  const double scale = d.half_lattice ? 2.0 : 1.0;  // counts are always full-disk
  for (double r : d.radii) {
    fit.x.push_back(r);
    fit.y.push_back(scale * (d.intercept + d.fitted_slope * r));
  }
  return detail::svg_plot({{title, "r", "zeros in |rho| <= r", {counts, fit}}});
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::ok: return "ok";
    case Outcome::not_found: return "not_found";
    case Outcome::unreliable: return "unreliable";
    case Outcome::failed: return "failed";
  }
  return "?";
}

std::string dump(ojson j, const std::string& kind, Outcome outcome) {
  ojson doc = {{"kind", kind}, {"outcome", outcome_name(outcome)}};
  for (auto it = j.begin(); it != j.end(); ++it) doc[it.key()] = it.value();
  return doc.dump(2) + "\n";
}

const Potential& effective_potential(const ProblemSpec& p, Potential& storage) {
  if (!p.window) return p.potential;
  storage = window_restrict(p.potential, *p.window);
  return storage;
}

}  // namespace

// ---------------------------------------------------------------- parsing

std::vector<double> GridSpec::values() const {
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long k = 0; k < n; ++k) v.push_back(start + static_cast<double>(k) * step);
  return v;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParameterError("grid must be start:stop:step, got '" + text + "'");
  GridSpec g{parse_real(parts[0], "grid start"), parse_real(parts[1], "grid stop"), parse_real(parts[2], "grid step")};
  if (!(g.step > 0.0)) throw ParameterError("grid step must be positive");
  if (g.stop < g.start) throw ParameterError("empty grid '" + text + "'");
  if ((g.stop - g.start) / g.step > 1e6) throw ParameterError("grid has more than a million points");
  return g;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item, "list entry"));
  if (out.empty()) throw ParameterError("empty list");
  return out;
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& raw : split(text, ',')) {
    const std::string s = trim(raw);
    if (s.empty()) throw ParameterError("empty complex entry in '" + text + "'");
    if (s.back() != 'i') {
      out.emplace_back(parse_real(s, "complex entry"), 0.0);
      continue;
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        cut = k;
        break;
      }
    auto imag_part = [&](const std::string& t) {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return parse_real(t, "imaginary part");
    };
    if (cut == std::string::npos)
      out.emplace_back(0.0, imag_part(body));
    else
      out.emplace_back(parse_real(body.substr(0, cut), "real part"), imag_part(body.substr(cut)));
  }
  return out;
}

Region parse_region(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("region must be kind:values, got '" + text + "'");
  const std::string kind = trim(text.substr(0, colon));
  std::string rest = text.substr(colon + 1);
  if (kind == "disk") {
    cplx center = 0.0;
    const auto at = rest.find('@');
    if (at != std::string::npos) {
      const auto c = parse_real_list(rest.substr(at + 1));
      if (c.size() != 2) throw ParameterError("disk centre must be re,im");
      center = {c[0], c[1]};
      rest = rest.substr(0, at);
    }
    return Region::disk(center, parse_real(rest, "disk radius"));
  }
  const auto v = parse_real_list(rest);
  if (kind == "annulus") {
    if (v.size() != 2) throw ParameterError("annulus needs inner,outer");
    return Region::annulus(0.0, v[0], v[1]);
  }
  if (kind == "rect") {
    if (v.size() != 4) throw ParameterError("rect needs x0,y0,x1,y1");
    return Region::rectangle({v[0], v[1]}, {v[2], v[3]});
  }
  throw ParameterError("unknown region kind '" + kind + "'");
}

ComplexFunction resolve_function(const std::string& name, const ProblemSpec* problem) {
  if (name.rfind("builtin:", 0) == 0) {
    auto f = builtin_function(name.substr(8));
    if (!f) throw ParameterError("unknown builtin function '" + name.substr(8) + "'");
    return *f;
  }
  if (!problem) throw ParameterError("function '" + name + "' needs a --config");
  if (name == "charfun") {
    auto cf = std::make_shared<const CharFun>(problem->config, problem->potential);
    return [cf](cplx rho) { return (*cf)(rho); };
  }
  if (name == "sine-transform") {
    Potential storage;
    return sine_kernel_transform(effective_potential(*problem, storage));
  }
  throw ParameterError("unknown function '" + name + "' (charfun, sine-transform, builtin:NAME)");
}

// ---------------------------------------------------------------- reports

Report charfun_report(const ProblemSpec& problem, const GridSpec& grid, EvalPath path) {
  const CharFun cf(problem.config, problem.potential, path);
  const auto xs = grid.values();
  std::vector<cplx> rhos(xs.begin(), xs.end());
  const auto values = charfun_grid(cf, rhos);

  Report r;
  r.kind = "charfun";
  std::ostringstream csv;
  csv << "# N=" << problem.config.size() << " alpha=" << problem.config.alpha() << " beta=" << problem.config.beta()
      << '\n';
  csv << "rho_re,rho_im,delta_re,delta_im,abs,sign_re\n";
  std::vector<double> mag, sgn;
  long sign_changes = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = values[i].real() > 0.0 ? 1.0 : (values[i].real() < 0.0 ? -1.0 : 0.0);
    if (i > 0 && s * sgn.back() < 0.0) ++sign_changes;
    mag.push_back(std::abs(values[i]));
    sgn.push_back(s);
    csv << r17(xs[i]) << ",0," << r17(values[i].real()) << ',' << r17(values[i].imag()) << ',' << r17(mag.back())
        << ',' << static_cast<int>(s) << '\n';
  }
  r.csv = csv.str();
  ojson j = {{"config", config_json(problem.config)},
             {"potential", potential_json(problem.potential)},
             {"path", path == EvalPath::determinant ? "determinant" : "closed_form"},
             {"sign", cf.sign()},
             {"grid", {{"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}}},
             {"points", xs.size()},
             {"sign_changes", sign_changes}};
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({{"rho", xs[i]}, {"value", cjson(values[i])}});
  j["values"] = rows;
  r.json = dump(j, r.kind, r.outcome);
  r.svg = detail::svg_plot({{"|Delta(rho)| on the real axis", "rho", "|Delta|", {{"|Delta|", xs, mag}}},
                            {"sign(Re Delta)", "rho", "sign", {{"sign Re Delta", xs, sgn, "#2ca02c"}}}});
  r.text = record(r.kind,
                  {{"config_hash", config_hash(problem.potential, problem.config)},
                   {"points", std::to_string(xs.size())},
                   {"sign_changes", std::to_string(sign_changes)}},
                  r.csv);
  return r;
}

Report spectrum_report(const ProblemSpec& problem, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw ParameterError("radius must be positive");
  const Spectrum s = compute_spectrum(problem.potential, problem.config, Region::disk(0.0, radius));
  Report r;
  r.kind = "spectrum";
  r.outcome = s.complete() ? Outcome::ok : Outcome::unreliable;
  std::ostringstream csv;
  csv << "k,lambda_re,lambda_im,multiplicity,residual,rho_re,rho_im\n";
  ojson eig = ojson::array();
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const auto& e = s.eigenvalues[k];
    csv << k + 1 << ',' << r17(e.lambda.real()) << ',' << r17(e.lambda.imag()) << ',' << e.multiplicity << ','
        << r17(e.residual) << ',' << r17(e.rho.real()) << ',' << r17(e.rho.imag()) << '\n';
    eig.push_back({{"lambda", cjson(e.lambda)},
                   {"multiplicity", e.multiplicity},
                   {"residual", e.residual},
                   {"rho", cjson(e.rho)}});
  }
  r.csv = csv.str();
  ojson flagged = ojson::array();
  for (const auto& f : s.flagged) flagged.push_back({{"box", f.box.describe()}, {"count", f.count}, {"reason", f.reason}});
  ojson j = {{"config", config_json(problem.config)},
             {"potential", potential_json(problem.potential)},
             {"config_hash", s.config_hash},
             {"seed", seed},
             {"region", s.search_region.describe()},
             {"rho_zero_count", s.rho_zero_count},
             {"located_multiplicity", s.located_multiplicity},
             {"complete", s.complete()},
             {"eigenvalues", eig},
             {"flagged", flagged}};
  r.json = dump(j, r.kind, r.outcome);
  r.text = record(r.kind,
                  {{"config_hash", s.config_hash},
                   {"seed", std::to_string(seed)},
                   {"region", s.search_region.describe()},
                   {"rho_zero_count", std::to_string(s.rho_zero_count)},
                   {"complete", s.complete() ? "true" : "false"}},
                  r.csv);
  return r;
}

Report zeros_report(const std::string& function, const ProblemSpec* problem, const Region& region, double tol) {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const ComplexFunction f = resolve_function(function, problem);
  const ZeroList z = locate_zeros(f, region, tol);
  Report r;
  r.kind = "zeros";
  r.outcome = z.complete() ? Outcome::ok : Outcome::unreliable;
  std::ostringstream csv;
  csv << "re,im,multiplicity,residual,converged\n";
  ojson arr = ojson::array();
  std::vector<double> xs, ys;
  for (const auto& e : z.zeros) {
    csv << r17(e.location.real()) << ',' << r17(e.location.imag()) << ',' << e.multiplicity << ','
        << r17(e.residual) << ',' << (e.converged ? 1 : 0) << '\n';
    arr.push_back({{"location", cjson(e.location)},
                   {"multiplicity", e.multiplicity},
                   {"residual", e.residual},
                   {"converged", e.converged}});
    xs.push_back(e.location.real());
    ys.push_back(e.location.imag());
  }
  r.csv = csv.str();
  ojson flagged = ojson::array();
  for (const auto& fb : z.flagged) flagged.push_back({{"box", fb.box.describe()}, {"count", fb.count}, {"reason", fb.reason}});
  ojson j = {{"function", function},
             {"region", region.describe()},
             {"tol", tol},
             {"region_count", z.region_count},
             {"total_multiplicity", z.total_multiplicity()},
             {"complete", z.complete()},
             {"zeros", arr},
             {"flagged", flagged}};
  if (problem) j["config"] = config_json(problem->config);
  r.json = dump(j, r.kind, r.outcome);
  r.svg = detail::svg_plot({{"zeros of " + function, "Re rho", "Im rho", {{"zeros", xs, ys, "#d62728", true}}}});
  r.text = record(r.kind,
                  {{"function", function},
                   {"region", region.describe()},
                   {"region_count", std::to_string(z.region_count)},
                   {"complete", z.complete() ? "true" : "false"}},
                  r.csv);
  return r;
}

Report density_report(const std::string& function, const ProblemSpec* problem, std::span<const double> radii,
                      bool half_lattice) {
  const ComplexFunction f = resolve_function(function, problem);
  const DensityReport d = density_estimate(f, radii, half_lattice);
  Report r;
  r.kind = "density";
  r.csv = density_csv(d);
  ojson j = density_json(d);
  j["function"] = function;
  std::vector<std::pair<std::string, std::string>> fields = {
      {"function", function},
      {"convention", half_lattice ? "half-lattice" : "full-disk"},
      {"fitted_slope", r17(d.fitted_slope)},
      {"slope_stderr", r17(d.slope_stderr)},
      {"full_disk_slope", r17(d.full_disk_slope)}};
  if (function == "sine-transform" && problem) {
    Potential storage;
    const auto hull = effective_potential(*problem, storage).support_hull();
    const double predicted = titchmarsh_predict(hull ? hull->length() : 0.0);
    j["titchmarsh_prediction"] = predicted;
    fields.emplace_back("titchmarsh_prediction", r17(predicted));
  }
  r.json = dump(j, r.kind, r.outcome);
  r.svg = svg_density(d, "zero counts of " + function);
  r.text = record(r.kind, fields, r.csv);
  return r;
}

Report lattice_report(const FrozenConfig& config, long n_max, std::optional<LatticeMethod> method, int digits) {
  const LatticeMethod m = method ? *method
                                 : (config.rational_points() ? LatticeMethod::exact_period_scan
                                                             : LatticeMethod::numeric_scan);
  const LatticeDensityReport d = lattice_vanishing_density(config, n_max, m, digits);
  Report r;
  r.kind = "lattice-density";
  r.csv = d.to_csv();
  ojson j = {{"points_over_pi", d.points_over_pi},
             {"method", lattice_method_name(d.method)},
             {"vanishing_fraction", d.vanishing_fraction},
             {"exact_fraction", d.exact_fraction ? ojson(d.exact_fraction->str()) : ojson(nullptr)},
             {"period", d.period ? ojson(*d.period) : ojson(nullptr)},
             {"n_max", d.n_max},
             {"digits", d.digits},
             {"threshold", d.threshold}};
  r.json = dump(j, r.kind, r.outcome);
  std::string pts;
  for (const auto& p : d.points_over_pi) pts += (pts.empty() ? "" : ",") + p;
  r.text = record(r.kind,
                  {{"points_over_pi", pts},
                   {"method", lattice_method_name(d.method)},
                   {"vanishing_fraction", d.exact_fraction ? d.exact_fraction->str() : r17(d.vanishing_fraction)},
                   {"period", d.period ? std::to_string(*d.period) : "none"},
                   {"digits", std::to_string(d.digits)}},
                  r.csv);
  return r;
}

Report identity_report(const ProblemSpec& problem, std::span<const cplx> rhos) {
  if (!problem.potential2) throw ConfigError("identity-residual needs potential and potential2");
  if (rhos.empty()) throw ParameterError("no rho samples");
  const Potential& q1 = problem.potential;
  const Potential& q2 = *problem.potential2;
  const Potential qhat = linear_combination(1.0, q1, -1.0, q2);
  const CharFun d1(problem.config, q1);
  Report r;
  r.kind = "identity-residual";
  std::ostringstream csv;
  csv << "rho_re,rho_im,residual_re,residual_im,check_abs,check_relative\n";
  ojson rows = ojson::array();
  double worst = 0.0;
  for (cplx rho : rhos) {
    const cplx res = identity_residual(qhat, problem.config, rho);
    const cplx chk = identity_residual_difference_check(q1, q2, problem.config, rho);
    const double rel = std::abs(chk) / (1.0 + std::abs(rho * d1(rho)));
    worst = std::max(worst, rel);
    csv << r17(rho.real()) << ',' << r17(rho.imag()) << ',' << r17(res.real()) << ',' << r17(res.imag()) << ','
        << r17(std::abs(chk)) << ',' << r17(rel) << '\n';
    rows.push_back({{"rho", cjson(rho)}, {"residual", cjson(res)}, {"check", cjson(chk)}, {"relative", rel}});
  }
  r.csv = csv.str();
  ojson j = {{"config", config_json(problem.config)},
             {"potential", potential_json(q1)},
             {"potential2", potential_json(q2)},
             {"sign", d1.sign()},
             {"max_relative_check", worst},
             {"samples", rows}};
  r.json = dump(j, r.kind, r.outcome);
  r.text = record(r.kind, {{"samples", std::to_string(rhos.size())}, {"max_relative_check", r17(worst)}}, r.csv);
  return r;
}

Report isospectral_report(const ProblemSpec& problem, const IsospectralOptions& options) {
  const IsospectralResult res = isospectral_search(problem.potential, problem.config, options);
  Report r;
  r.kind = "isospectral";
  r.outcome = res.converged ? Outcome::ok : Outcome::not_found;
  std::ostringstream csv;
  csv << "start,iteration,objective,damping\n";
  for (const auto& it : res.log)
    csv << it.start << ',' << it.iteration << ',' << r17(it.objective) << ',' << r17(it.damping) << '\n';
  r.csv = csv.str();
  ojson e1 = ojson::array(), e2 = ojson::array();
  for (cplx z : res.eigen_q1) e1.push_back(cjson(z));
  for (cplx z : res.eigen_q2) e2.push_back(cjson(z));
  ojson j = {{"config", config_json(problem.config)},
             {"q1", potential_json(problem.potential)},
             {"seed", res.seed},
             {"init", res.init},
             {"witness_n0", res.witness_n0 ? ojson(*res.witness_n0) : ojson(nullptr)},
             {"lattice_density", res.lattice_density},
             {"mode_budget", options.mode_budget},
             {"tol", options.tol},
             {"norm_floor", options.norm_floor},
             {"converged", res.converged},
             {"objective", res.objective},
             {"qhat_norm", res.qhat_norm},
             {"qhat_sine_coeffs", res.qhat.sine_coeffs()},
             {"spectra_verified", res.spectra_verified},
             {"spectra_match", res.spectra_match},
             {"eigen_q1", e1},
             {"eigen_q1_plus_qhat", e2},
             {"iterations", res.iterations},
             {"starts", res.starts},
             {"best_start", res.best_start},
             {"initial_objectives", res.initial_objectives}};
  r.json = dump(j, r.kind, r.outcome);
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < res.log.size(); ++k)
    if (res.log[k].start == res.best_start) {
      xs.push_back(static_cast<double>(res.log[k].iteration));
      ys.push_back(std::log10(std::max(res.log[k].objective, 1e-300)));
    }
  r.svg = detail::svg_plot({{"objective of the best start", "iteration", "log10 objective", {{"objective", xs, ys}}}});
  double worst_match = 0.0;
  for (double m : res.spectra_match) worst_match = std::max(worst_match, m);
  r.text = record(r.kind,
                  {{"seed", std::to_string(res.seed)},
                   {"init", res.init},
                   {"converged", res.converged ? "true" : "false"},
                   {"objective", r17(res.objective)},
                   {"qhat_norm", r17(res.qhat_norm)},
                   {"spectra_verified", res.spectra_verified ? "true" : "false"},
                   {"max_eigenvalue_mismatch", r17(worst_match)}},
                  r.csv);
  return r;
}

Report part3_report(const ProblemSpec& problem, std::span<const double> radii) {
  const Part3Report p = part3_experiment(problem.potential, problem.window, problem.config, radii);
  Report r;
  r.kind = "part3";
  std::ostringstream csv;
  csv << "term,side,slope,stderr,half_lattice_slope\n";
  auto row = [&](const char* name, const char* side, const DensityReport& d) {
    csv << name << ',' << side << ',' << r17(d.full_disk_slope) << ',' << r17(d.full_disk_stderr) << ','
        << r17(d.full_disk_slope / 2.0) << '\n';
  };
  row("sine_transform", "lhs", p.sine_transform);
  row("cosine_sum", "lhs", p.cosine_sum);
  row("cos_pi", "rhs", p.cos_pi);
  row("kernel_sum", "rhs", p.kernel_sum);
  r.csv = csv.str();
  ojson j = {{"config", config_json(problem.config)},
             {"qhat", potential_json(p.qhat)},
             {"sine_transform", density_json(p.sine_transform)},
             {"cosine_sum", density_json(p.cosine_sum)},
             {"cos_pi", density_json(p.cos_pi)},
             {"kernel_sum", density_json(p.kernel_sum)},
             {"lhs", p.lhs},
             {"lhs_stderr", p.lhs_stderr},
             {"rhs", p.rhs},
             {"rhs_stderr", p.rhs_stderr},
             {"kernel_sum_bound", p.kernel_sum_bound},
             {"margin", p.margin},
             {"rhs_bound", p.rhs_bound},
             {"consistent", p.consistent},
             {"half_lattice", {{"lhs", p.lhs_half}, {"rhs", p.rhs_half}, {"margin", p.margin_half},
                               {"rhs_bound", p.rhs_bound_half}}}};
  r.json = dump(j, r.kind, r.outcome);
  r.text = record(r.kind,
                  {{"lhs", r17(p.lhs) + " +- " + r17(p.lhs_stderr)},
                   {"rhs", r17(p.rhs) + " +- " + r17(p.rhs_stderr)},
                   {"kernel_sum_bound", r17(p.kernel_sum_bound)},
                   {"margin", r17(p.margin)},
                   {"rhs_bound", r17(p.rhs_bound)},
                   {"consistent", p.consistent ? "true" : "false"},
                   {"half_lattice_lhs", r17(p.lhs_half)},
                   {"half_lattice_rhs", r17(p.rhs_half)}},
                  r.csv);
  return r;
}

Report verify_report(const AcceptanceOptions& options) {
  const auto results = run_acceptance(options);
  Report r;
  r.kind = "verify";
  r.outcome = all_passed(results) ? Outcome::ok : Outcome::failed;
  r.csv = acceptance_csv(results);
  r.json = acceptance_json(results);
  r.text = acceptance_text(results);
  return r;
}

}  // namespace frozenspec
