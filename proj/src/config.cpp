#include "frozenspec/config.hpp"

#include <fstream>
#include <sstream>

#include "frozenspec/errors.hpp"
#include "json.hpp"

namespace frozenspec {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

int flag(const json& doc, const char* key) {
  if (!doc.contains(key)) return 0;
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be 0 or 1");
  return v.get<int>();
}

Potential parse_potential(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "";
  int forms = 0;
  for (const char* k : {"sine_modes", "sine_coeffs", "grid", "constant", "witness_n0"}) forms += j.contains(k);
  if (forms > 1) throw ConfigError(where + " must use exactly one representation");
  if (forms == 0) return Potential().with_label(label);

  if (j.contains("sine_modes")) {
    std::vector<std::pair<int, double>> modes;
    for (const auto& m : j.at("sine_modes")) {
      if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer())
        throw ConfigError(where + ".sine_modes entries must be [n, c] with integer n");
      const int n = m[0].get<int>();
      if (n < 1) throw ConfigError(where + ".sine_modes: mode numbers start at 1");
      modes.emplace_back(n, number(m[1], where + ".sine_modes coefficient"));
    }
    return Potential::from_modes(modes, label);
  }
  if (j.contains("sine_coeffs")) {
    std::vector<double> c;
    for (const auto& v : j.at("sine_coeffs")) c.push_back(number(v, where + ".sine_coeffs entry"));
    return Potential::from_sine(std::move(c), label);
  }
  if (j.contains("grid")) {
    std::vector<GridSample> s;
    for (const auto& p : j.at("grid")) {
      if (!p.is_array() || p.size() != 2) throw ConfigError(where + ".grid entries must be [x, value]");
      s.push_back({number(p[0], where + ".grid x"), number(p[1], where + ".grid value")});
    }
    return Potential::from_grid(std::move(s), label);
  }
  if (j.contains("constant")) return Potential::constant(number(j.at("constant"), where + ".constant")).with_label(label);
  const json& n0 = j.at("witness_n0");
  if (!n0.is_number_integer()) throw ConfigError(where + ".witness_n0 must be an integer");
  const Potential w = witness_qhat(n0.get<int>());
  return label.empty() ? w : w.with_label(label);
}

FrozenConfig parse_points(const json& doc, int alpha, int beta) {
  if (doc.contains("points_over_pi")) {
    const json& arr = doc.at("points_over_pi");
    if (!arr.is_array() || arr.empty()) throw ConfigError("points_over_pi must be a non-empty array");
    std::vector<Fraction> fr;
    std::vector<double> reals;
    bool exact = true;
    for (const auto& v : arr) {
      if (v.is_string()) {
        const auto f = Fraction::parse(v.get<std::string>());
        if (!f) throw ConfigError("cannot parse fraction '" + v.get<std::string>() + "'");
        fr.push_back(*f);
        reals.push_back(f->value() * pi);
      } else if (v.is_number_integer()) {
        fr.push_back(Fraction::make(v.get<std::int64_t>(), 1));
        reals.push_back(v.get<double>() * pi);
      } else {
        exact = false;
        reals.push_back(number(v, "points_over_pi entry") * pi);
      }
    }
    if (exact) return FrozenConfig::from_fractions(fr, alpha, beta);
    return FrozenConfig::make(std::move(reals), alpha, beta);
  }
  if (doc.contains("points")) {
    std::vector<double> pts;
    for (const auto& v : doc.at("points")) pts.push_back(number(v, "points entry"));
    return FrozenConfig::make(std::move(pts), alpha, beta);
  }
  throw ConfigError("config needs points_over_pi or points");
}

}  // namespace

ProblemSpec parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    const int alpha = flag(doc, "alpha");
    const int beta = flag(doc, "beta");
    ProblemSpec spec{parse_points(doc, alpha, beta),
                     doc.contains("potential") ? parse_potential(doc.at("potential"), "potential") : Potential(),
                     std::nullopt, std::nullopt};
    if (doc.contains("potential2")) spec.potential2 = parse_potential(doc.at("potential2"), "potential2");
    if (doc.contains("window")) {
      const json& w = doc.at("window");
      if (!w.is_object() || !w.contains("delta")) throw ConfigError("window needs a delta");
      SupportWindow win;
      win.delta = number(w.at("delta"), "window.delta");
      if (w.contains("exclude_center")) win.excluded_center = number(w.at("exclude_center"), "window.exclude_center");
      if (w.contains("exclude_halfwidth"))
        win.excluded_halfwidth = number(w.at("exclude_halfwidth"), "window.exclude_halfwidth");
      win.validate();
      spec.window = win;
    }
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_problem(os.str());
}

FrozenConfig parse_points_over_pi(const std::string& spec, int alpha, int beta) {
  json arr = json::array();
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty entry in point list '" + spec + "'");
    item = item.substr(b, e - b + 1);
    if (Fraction::parse(item)) {
      arr.push_back(item);
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      arr.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse point '" + item + "'");
    }
  }
  if (arr.empty()) throw ConfigError("empty point list");
  json doc = {{"points_over_pi", arr}, {"alpha", alpha}, {"beta", beta}};
  return parse_problem(doc.dump()).config;
}

}  // namespace frozenspec
