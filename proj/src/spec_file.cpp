#include "dsvs/spec_file.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"coeffs", {"a0", "a1", "a2", "a3"}},
      {"p", {"family", "A", "K", "L", "theta0"}},
      {"q", {"family", "A", "K", "L", "G", "H", "theta0"}},
      {"funcs", {"beta", "gamma", "c0", "c3", "c4"}},
      {"signs", {"delta1", "delta2"}},
      {"window", {"range", "rotated_bound"}},
  };
  return s;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("spec: " + key + " is not a number: '" + text + "'");
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_double(key, item));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double required(const pt::ptree& tree, const std::string& path) {
  const auto v = tree.get_optional<std::string>(path);
  if (!v) throw UsageError("spec: missing key " + path);
  return to_double(path, *v);
}

ProfileFunction read_profile(const pt::ptree& tree, const std::string& side) {
  const auto family_text = tree.get_optional<std::string>(side + ".family");
  if (!family_text) throw UsageError("spec: missing key " + side + ".family");
  ProfileFamily family;
  try {
    family = parse_family(trim(*family_text));
  } catch (const UsageError& e) {
    throw UsageError("spec: " + side + ".family: " + e.what());
  }
  switch (family) {
    case ProfileFamily::breather_p: return ProfileFunction::breather_p();
    case ProfileFamily::breather_q: return ProfileFunction::breather_q();
    case ProfileFamily::tan_cos: return ProfileFunction::tan_cos();
    case ProfileFamily::instanton_p: return ProfileFunction::instanton_p();
    case ProfileFamily::instanton_q: return ProfileFunction::instanton_q();
    case ProfileFamily::custom: throw UsageError("spec: custom profiles cannot be read from a file");
    case ProfileFamily::exp_sum: break;
  }
  auto list = [&](const std::string& key, const std::string& alias) {
    auto v = tree.get_optional<std::string>(side + "." + key);
    if (!v && !alias.empty()) v = tree.get_optional<std::string>(side + "." + alias);
    if (!v) throw UsageError("spec: missing key " + side + "." + key);
    return to_list(side + "." + key, *v);
  };
  const bool q_side = side == "q";
  const auto A = list("A", ""), K = list("K", q_side ? "G" : ""), L = list("L", q_side ? "H" : ""),
             T = list("theta0", "");
  if (A.empty() || K.size() != A.size() || L.size() != A.size() || T.size() != A.size())
    throw UsageError("spec: " + side + " lists A, K, L, theta0 must be nonempty and of equal length");
  std::vector<ExpTerm> terms;
  for (std::size_t i = 0; i < A.size(); ++i) terms.push_back({A[i], K[i], L[i], T[i]});
  return ProfileFunction::exp_sum(std::move(terms));
}

TimeFunction read_function(const pt::ptree& tree, const std::string& key, TimeFunction fallback) {
  const auto v = tree.get_optional<std::string>("funcs." + key);
  if (!v) return fallback;
  try {
    return TimeFunction::parse(trim(*v));
  } catch (const UsageError& e) {
    throw UsageError("spec: funcs." + key + ": " + e.what());
  }
}

int read_sign(const pt::ptree& tree, const std::string& key) {
  const auto v = tree.get_optional<std::string>("signs." + key);
  if (!v) return 1;
  const double d = to_double("signs." + key, *v);
  if (d != 1.0 && d != -1.0) throw UsageError("spec: signs." + key + " must be 1 or -1");
  return static_cast<int>(d);
}

void apply(pt::ptree& tree, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw UsageError("override '" + o + "' is not of the form section.key=value");
    tree.put(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
}

SpecFile interpret(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw UsageError("spec: unknown section [" + section + "]");
    if (!body.data().empty()) throw UsageError("spec: key '" + section + "' outside a section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw UsageError("spec: unknown key " + section + "." + key);
  }
  SeparationCoefficients coeffs(required(tree, "coeffs.a0"), required(tree, "coeffs.a1"), required(tree, "coeffs.a2"),
                                required(tree, "coeffs.a3"));
  CoefficientFunctions defaults;
  CoefficientFunctions funcs{read_function(tree, "beta", defaults.beta), read_function(tree, "gamma", defaults.gamma),
                             read_function(tree, "c0", defaults.c0), read_function(tree, "c3", defaults.c3),
                             read_function(tree, "c4", defaults.c4)};
  SpecFile out{SolutionSpec(coeffs, read_profile(tree, "p"), read_profile(tree, "q"), funcs, read_sign(tree, "delta1"),
                            read_sign(tree, "delta2")),
               std::nullopt};
  if (const auto range = tree.get_optional<std::string>("window.range")) {
    Window w = Window::parse(trim(*range));
    if (const auto b = tree.get_optional<std::string>("window.rotated_bound"))
      w.rotated_bound = to_double("window.rotated_bound", *b);
    out.window = w;
  }
  return out;
}

}  // namespace

SpecFile parse_spec_text(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("spec: ") + e.what());
  }
  apply(tree, overrides);
  return interpret(tree);
}

SpecFile load_spec_file(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), overrides);
}

std::string format_spec(const SolutionSpec& spec, const std::optional<Window>& window) {
  std::ostringstream out;
  const auto& a = spec.coeffs();
  out << "[coeffs]\na0 = " << format_double(a.a0()) << "\na1 = " << format_double(a.a1())
      << "\na2 = " << format_double(a.a2()) << "\na3 = " << format_double(a.a3()) << "\n";
  for (const auto& [name, prof] : {std::pair{"p", &spec.p()}, std::pair{"q", &spec.q()}}) {
    if (prof->family() == ProfileFamily::custom) throw UsageError("custom profiles cannot be written to a spec file");
    out << "\n[" << name << "]\nfamily = " << family_name(prof->family()) << "\n";
    if (prof->family() != ProfileFamily::exp_sum) continue;
    auto join = [&](auto member) {
      std::string s;
      for (const auto& term : prof->terms()) s += (s.empty() ? "" : ", ") + format_double(term.*member);
      return s;
    };
    out << "A = " << join(&ExpTerm::amplitude) << "\nK = " << join(&ExpTerm::wavenumber)
        << "\nL = " << join(&ExpTerm::frequency) << "\ntheta0 = " << join(&ExpTerm::phase) << "\n";
  }
  const auto& f = spec.funcs();
  out << "\n[funcs]\nbeta = " << f.beta.to_string() << "\ngamma = " << f.gamma.to_string() << "\nc0 = "
      << f.c0.to_string() << "\nc3 = " << f.c3.to_string() << "\nc4 = " << f.c4.to_string() << "\n";
  out << "\n[signs]\ndelta1 = " << spec.delta1() << "\ndelta2 = " << spec.delta2() << "\n";
  if (window) {
    Window rect = *window;
    rect.rotated_bound.reset();
    out << "\n[window]\nrange = " << rect.to_string() << "\n";
    if (window->rotated_bound) out << "rotated_bound = " << format_double(*window->rotated_bound) << "\n";
  }
  return out.str();
}

SpecFile apply_overrides(const SolutionSpec& spec, const std::optional<Window>& window,
                         const std::vector<std::string>& overrides) {
  if (overrides.empty()) return {spec, window};
  return parse_spec_text(format_spec(spec, window), overrides);
}

}  // namespace dsvs
