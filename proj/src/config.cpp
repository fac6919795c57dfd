#include "lpbesov/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lpbesov/multiplier.hpp"

namespace lpbesov {

namespace {

using nlohmann::json;

void note(std::vector<Diagnostic>& diags, const std::string& field, const std::string& message,
          bool fatal = true) {
  diags.push_back(Diagnostic{field, message, fatal});
}

/// Exponents may be numbers or the string "inf".
std::optional<double> read_exponent(const json& v, const std::string& field,
                                    std::vector<Diagnostic>& diags) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") return kInfinity;
    note(diags, field, "expected a number or \"inf\", got \"" + s + "\"");
    return std::nullopt;
  }
  if (v.is_number()) return v.get<double>();
  note(diags, field, "expected a number or \"inf\"");
  return std::nullopt;
}

/// Generator words are 1-based in config files.
std::optional<std::vector<int>> read_word(const json& v, const std::string& field,
                                          std::vector<Diagnostic>& diags) {
  if (!v.is_array()) {
    note(diags, field, "expected an array of 1-based generator indices");
    return std::nullopt;
  }
  std::vector<int> word;
  for (const json& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 1) {
      note(diags, field, "generator indices are 1-based integers");
      return std::nullopt;
    }
    word.push_back(static_cast<int>(e.get<long long>()) - 1);
  }
  return word;
}

int generator_count_of(const GroupSpec& spec) {
  return spec.family == GroupFamily::torus ? spec.dimension : 2;
}

void check_word_range(const std::vector<int>& word, int gen_count, const std::string& field,
                      std::vector<Diagnostic>& diags) {
  for (int g : word) {
    if (g < 0 || g >= gen_count) {
      note(diags, field,
           "generator index " + std::to_string(g + 1) + " out of range 1.." +
               std::to_string(gen_count));
      return;
    }
  }
}

LoadedConfig parse_json(const json& root) {
  LoadedConfig out;
  ExperimentConfig& cfg = out.config;
  std::vector<Diagnostic>& diags = out.diagnostics;

  static const std::set<std::string> top_keys = {
      "group",   "method",           "tolerance",  "max_degree", "suites",
      "besov_params", "sweeps", "bernstein_tuples", "ensemble",   "output_dir",
      "multiplier",   "norm_order",   "threads"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (!top_keys.count(it.key()))
      note(diags, it.key(), "unknown key ignored", /*fatal=*/false);
  }

  if (root.contains("group")) {
    const json& g = root.at("group");
    if (g.contains("family")) {
      const std::string fam = g.at("family").get<std::string>();
      if (auto parsed = parse_group_family(fam)) {
        cfg.group.family = *parsed;
      } else {
        note(diags, "group.family", "unknown family \"" + fam + "\" (torus | heisenberg)");
      }
    }
    if (g.contains("modulus")) cfg.group.modulus = g.at("modulus").get<int>();
    if (g.contains("dimension")) cfg.group.dimension = g.at("dimension").get<int>();
    try {
      cfg.group.validate();
    } catch (const std::invalid_argument& e) {
      note(diags, "group", e.what());
    }
  }

  if (root.contains("method")) {
    try {
      cfg.method = parse_apply_method(root.at("method").get<std::string>());
    } catch (const std::invalid_argument& e) {
      note(diags, "method", e.what());
    }
  }
  if (root.contains("tolerance")) {
    cfg.tolerance = root.at("tolerance").get<double>();
    if (!(cfg.tolerance > 0.0)) note(diags, "tolerance", "must be positive");
  }
  if (root.contains("max_degree")) {
    cfg.max_degree = root.at("max_degree").get<int>();
    if (cfg.max_degree < 1) note(diags, "max_degree", "must be >= 1");
  }

  if (root.contains("suites")) {
    cfg.suites.clear();
    const json& s = root.at("suites");
    for (size_t i = 0; i < s.size(); ++i) {
      const std::string name = s.at(i).get<std::string>();
      bool found = false;
      for (const std::string& k : known_suites()) found |= (k == name);
      if (!found)
        note(diags, "suites[" + std::to_string(i) + "]", "unknown suite \"" + name + "\"");
      cfg.suites.push_back(name);
    }
  }

  if (root.contains("besov_params")) {
    cfg.besov_params.clear();
    const json& arr = root.at("besov_params");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string field = "besov_params[" + std::to_string(i) + "]";
      const json& e = arr.at(i);
      BesovParams prm;
      bool ok = true;
      if (e.contains("s")) prm.s = e.at("s").get<double>();
      for (auto [key, target] : {std::pair<const char*, double*>{"p", &prm.p},
                                 {"q", &prm.q},
                                 {"m", &prm.m}}) {
        if (!e.contains(key)) continue;
        if (auto v = read_exponent(e.at(key), field + "." + key, diags)) *target = *v;
        else ok = false;
      }
      if (ok) {
        try {
          prm.validate();
        } catch (const std::invalid_argument& err) {
          note(diags, field, err.what());
        }
      }
      cfg.besov_params.push_back(prm);
    }
  }

  if (root.contains("sweeps")) {
    const json& sw = root.at("sweeps");
    if (sw.contains("t")) {
      cfg.sweeps.t = sw.at("t").get<std::vector<double>>();
      for (double t : cfg.sweeps.t)
        if (!(t > 0.0)) note(diags, "sweeps.t", "scales must be positive");
    }
    if (sw.contains("alpha")) {
      cfg.sweeps.alpha = sw.at("alpha").get<std::vector<int>>();
      for (int a : cfg.sweeps.alpha)
        if (a < 0) note(diags, "sweeps.alpha", "weights must be >= 0");
    }
    if (sw.contains("words")) {
      cfg.sweeps.words.clear();
      const json& ws = sw.at("words");
      for (size_t i = 0; i < ws.size(); ++i) {
        if (auto w = read_word(ws.at(i), "sweeps.words[" + std::to_string(i) + "]", diags))
          cfg.sweeps.words.push_back(std::move(*w));
      }
    }
    if (sw.contains("p")) {
      cfg.sweeps.p.clear();
      const json& ps = sw.at("p");
      for (size_t i = 0; i < ps.size(); ++i) {
        if (auto v = read_exponent(ps.at(i), "sweeps.p[" + std::to_string(i) + "]", diags)) {
          if (*v != kInfinity && *v < 1.0)
            note(diags, "sweeps.p[" + std::to_string(i) + "]", "exponents must be in [1, inf]");
          cfg.sweeps.p.push_back(*v);
        }
      }
    }
    if (sw.contains("j")) {
      cfg.sweeps.j = sw.at("j").get<std::vector<int>>();
      for (int j : cfg.sweeps.j)
        if (j < 0) note(diags, "sweeps.j", "scales are >= 0");
    }
  }

  if (root.contains("bernstein_tuples")) {
    cfg.bernstein_tuples.clear();
    const json& arr = root.at("bernstein_tuples");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string field = "bernstein_tuples[" + std::to_string(i) + "]";
      const json& e = arr.at(i);
      BernsteinTupleConfig tup;
      if (e.contains("word")) {
        if (auto w = read_word(e.at("word"), field + ".word", diags)) tup.word = std::move(*w);
      }
      if (e.contains("sigma")) tup.sigma = e.at("sigma").get<double>();
      for (auto [key, target] : {std::pair<const char*, double*>{"p", &tup.p}, {"q", &tup.q}}) {
        if (!e.contains(key)) continue;
        if (auto v = read_exponent(e.at(key), field + "." + std::string(key), diags))
          *target = *v;
      }
      const double pi = tup.p == kInfinity ? 0.0 : 1.0 / tup.p;
      const double qi = tup.q == kInfinity ? 0.0 : 1.0 / tup.q;
      if (pi < qi) note(diags, field, "requires p <= q");
      cfg.bernstein_tuples.push_back(std::move(tup));
    }
  }

  if (root.contains("ensemble")) {
    const json& en = root.at("ensemble");
    if (en.contains("size")) {
      cfg.ensemble.size = en.at("size").get<int>();
      if (cfg.ensemble.size < 1) note(diags, "ensemble.size", "must be >= 1");
    }
    if (en.contains("seed")) {
      const json& seed = en.at("seed");
      if (seed.is_number_unsigned()) {
        cfg.ensemble.seed = seed.get<std::uint64_t>();
      } else if (seed.is_number_integer() && seed.get<long long>() >= 0) {
        cfg.ensemble.seed = static_cast<std::uint64_t>(seed.get<long long>());
      } else {
        note(diags, "ensemble.seed", "seed is a 64-bit unsigned integer");
      }
    } else {
      note(diags, "ensemble.seed", "seed missing; defaulting to 0", /*fatal=*/false);
    }
  } else {
    note(diags, "ensemble.seed", "seed missing; defaulting to 0", /*fatal=*/false);
  }

  if (root.contains("output_dir")) {
    cfg.output_dir = root.at("output_dir").get<std::string>();
    if (cfg.output_dir.empty()) note(diags, "output_dir", "must not be empty");
  }
  if (root.contains("multiplier")) {
    cfg.multiplier = root.at("multiplier").get<std::string>();
    try {
      (void)Multiplier::from_name(cfg.multiplier);
    } catch (const std::invalid_argument& e) {
      note(diags, "multiplier", e.what());
    }
  }
  if (root.contains("norm_order")) {
    cfg.norm_order = root.at("norm_order").get<int>();
    if (*cfg.norm_order < 0) note(diags, "norm_order", "must be >= 0");
  }
  if (root.contains("threads")) {
    cfg.threads = root.at("threads").get<int>();
    if (cfg.threads < 0) note(diags, "threads", "must be >= 0");
  }

  // Cross-field invariants.
  const int gen_count = generator_count_of(cfg.group);
  for (size_t i = 0; i < cfg.sweeps.words.size(); ++i)
    check_word_range(cfg.sweeps.words[i], gen_count, "sweeps.words[" + std::to_string(i) + "]",
                     diags);
  for (size_t i = 0; i < cfg.bernstein_tuples.size(); ++i)
    check_word_range(cfg.bernstein_tuples[i].word, gen_count,
                     "bernstein_tuples[" + std::to_string(i) + "].word", diags);
  for (const std::string& s : cfg.suites) {
    if (s == "besov-compare" && cfg.besov_params.empty())
      note(diags, "besov_params", "must be non-empty when besov-compare is requested");
    if (s == "bernstein" && cfg.bernstein_tuples.empty())
      note(diags, "bernstein_tuples", "must be non-empty when bernstein is requested");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {"lp-check",         "besov-compare",
                                                 "bernstein",        "kernel-estimates",
                                                 "heat-bounds",      "growth"};
  return names;
}

LoadedConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("config root must be a JSON object");
  try {
    return parse_json(root);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config has a wrongly typed field: ") + e.what());
  }
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* dir = std::getenv("LPB_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
    cfg.output_dir = dir;
  if (const char* threads = std::getenv("LPB_THREADS"); threads != nullptr && *threads != '\0') {
    char* end = nullptr;
    const long n = std::strtol(threads, &end, 10);
    if (end != threads && *end == '\0' && n >= 0) cfg.threads = static_cast<int>(n);
  }
}

}  // namespace lpbesov
