#include "pairgraph/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "pairgraph/errors.hpp"
#include "pairgraph/io.hpp"

namespace pairgraph {

namespace {

namespace pt = boost::property_tree;

using KeyValues = std::map<std::string, std::string>;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "name", "study",       "family", "n",          "d",    "mean_shift", "gamma1", "gamma2",
      "gamma12", "correlation", "k",   "replicates", "seed", "levels",     "metric", "hotelling"};
  return keys;
}

std::string context(const std::string& scenario, const std::string& key) {
  return "scenario '" + scenario + "', key '" + key + "'";
}

template <class T>
T parse_integer(const std::string& text, const std::string& where) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(where + ": expected an integer, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, const std::string& where) {
  const auto values = parse_csv_numbers(text, 0);
  if (values.size() != 1 || !std::isfinite(values[0])) {
    throw ValidationError(where + ": expected a finite number, got '" + text + "'");
  }
  return values[0];
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(where + ": expected true or false, got '" + text + "'");
}

Scenario build(const std::string& name, const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (!known_keys().contains(key)) throw ValidationError("unknown key " + context(name, key));
  }
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto real_or = [&](const std::string& key, double fallback) {
    const auto* v = get(key);
    return v ? parse_real(*v, context(name, key)) : fallback;
  };

  Scenario s;
  s.name = name;
  if (const auto* v = get("name")) s.name = *v;
  if (const auto* v = get("study")) {
    if (*v != "size" && *v != "power") {
      throw ValidationError(context(name, "study") + ": expected size or power, got '" + *v + "'");
    }
    s.study = *v;
  }
  const auto family = get("family") ? parse_family(*get("family")) : Family::normal;
  const auto* n_text = get("n");
  const auto* d_text = get("d");
  if (!n_text || !d_text) throw ValidationError("scenario '" + name + "' must set n and d");
  const auto n = parse_integer<std::size_t>(*n_text, context(name, "n"));
  const auto d = parse_integer<std::size_t>(*d_text, context(name, "d"));
  if (n < 2 || d < 1) throw ValidationError("scenario '" + name + "' needs n >= 2 and d >= 1");

  const double gamma1 = real_or("gamma1", 1.0);
  const double gamma2 = real_or("gamma2", 1.0);
  if (get("gamma12") && get("correlation")) {
    throw ValidationError("scenario '" + name + "' sets both gamma12 and correlation");
  }
  double gamma12 = real_or("gamma12", 0.0);
  if (get("correlation")) {
    if (gamma1 < 0 || gamma2 < 0) {
      throw ValidationError("scenario '" + name + "': correlation needs non-negative variances");
    }
    gamma12 = real_or("correlation", 0.0) * std::sqrt(gamma1 * gamma2);
  }
  s.spec = GeneratorSpec::exchangeable(family, n, d, real_or("mean_shift", 0.0), gamma1, gamma2,
                                       gamma12);

  if (const auto* v = get("k")) s.options.k = parse_integer<int>(*v, context(name, "k"));
  if (s.options.k < 1) throw ValidationError(context(name, "k") + ": must be at least 1");
  if (const auto* v = get("replicates")) {
    s.options.replicates = parse_integer<std::size_t>(*v, context(name, "replicates"));
  }
  if (s.options.replicates < 1) {
    throw ValidationError(context(name, "replicates") + ": must be at least 1");
  }
  if (const auto* v = get("seed")) s.seed = parse_integer<std::uint64_t>(*v, context(name, "seed"));
  if (const auto* v = get("levels")) {
    s.options.levels = parse_csv_numbers(*v, 0);
    for (double a : s.options.levels) {
      if (!(a > 0.0 && a <= 1.0)) {
        throw ValidationError(context(name, "levels") + ": levels must lie in (0, 1]");
      }
    }
  }
  if (const auto* v = get("metric")) {
    s.options.metric = parse_metric(*v);
    if (s.options.metric == Metric::precomputed) {
      throw ValidationError(context(name, "metric") + ": simulations cannot use precomputed");
    }
  }
  if (const auto* v = get("hotelling")) s.options.hotelling = parse_bool(*v, context(name, "hotelling"));
  if (s.study == "size" && !s.spec.is_null()) {
    throw ValidationError("size scenario '" + name +
                          "' must have mean_shift = 0 and gamma1 = gamma2");
  }
  Generator validate(s.spec);
  return s;
}

}  // namespace

std::vector<Scenario> read_scenarios(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("malformed scenario file: ") + e.what());
  }
  KeyValues defaults;
  std::vector<std::pair<std::string, KeyValues>> sections;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      defaults[key] = node.data();
    } else {
      KeyValues kv;
      for (const auto& [k, v] : node) kv[k] = v.data();
      sections.emplace_back(key, std::move(kv));
    }
  }
  std::vector<Scenario> out;
  if (sections.empty()) {
    out.push_back(build("scenario", defaults));
    return out;
  }
  for (auto& [name, kv] : sections) {
    KeyValues merged = defaults;
    for (auto& [k, v] : kv) merged[k] = v;
    out.push_back(build(name, merged));
  }
  return out;
}

StudyResult run_scenario(const Scenario& scenario, std::uint64_t seed) {
  auto options = scenario.options;
  options.seed = seed;
  return scenario.study == "size" ? run_size_study(scenario.spec, options, scenario.name)
                                  : run_power_study(scenario.spec, options, scenario.name);
}

void write_study_csv_header(std::ostream& out) {
  out << "scenario,study,family,n,d,k,mean_shift,replicates,seed,test,level,rejections,valid,"
         "degenerate,proportion\n";
}

void write_study_csv_rows(std::ostream& out, const Scenario& scenario, const StudyResult& result) {
  for (const auto& t : result.tests) {
    for (std::size_t l = 0; l < result.levels.size(); ++l) {
      out << result.scenario << ',' << result.kind << ',' << to_string(scenario.spec.family) << ','
          << scenario.spec.n << ',' << scenario.spec.d << ',' << scenario.options.k << ','
          << format_double(result.realized_shift_norm) << ',' << result.replicates << ','
          << result.seed << ',' << t.test << ',' << format_double(result.levels[l]) << ','
          << t.rejections[l] << ',' << t.valid << ',' << t.degenerate << ','
          << format_double(t.proportion(l)) << '\n';
    }
  }
}

}  // namespace pairgraph
