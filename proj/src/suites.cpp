#include "qembed/suites.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <functional>

#include "qembed/halfpos.hpp"
#include "qembed/repmod.hpp"
#include "qembed/schur.hpp"

namespace qembed {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "chevalley-sanity", "phi-relations", "serre-free",   "lemma-s",          "intertwine",
      "coproduct",        "gl-variant",    "schur-compat", "classical-oracle", "parser-roundtrip"};
  return names;
}

// --------------------------------------------------------------- config

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite '" + suite + "'");
  if (n < 2 || n > 16) throw ConfigError("n must lie in [2, 16], got " + std::to_string(n));
  if (r < 0 || r > n - 1)
    throw ConfigError("r must lie in [0, n-1] = [0, " + std::to_string(n - 1) + "], got " + std::to_string(r));
  if (eps != 1 && eps != -1) throw ConfigError("eps must be +1 or -1, got " + std::to_string(eps));
  if (d < 1 || d > static_cast<int>(kMaxTensorDegree))
    throw ConfigError("d must lie in [1, " + std::to_string(kMaxTensorDegree) + "], got " + std::to_string(d));
  if (lo >= hi) throw ConfigError("window needs LO < HI");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (pmax < 1) throw ConfigError("pmax must be >= 1");
  if (count < 0) throw ConfigError("count must be >= 0");
}

nlohmann::json SuiteConfig::params() const {
  nlohmann::json j = nlohmann::json::object();
  const nlohmann::json window = {lo, hi};
  if (suite == "chevalley-sanity") {
    j = {{"n", n}, {"d", d}, {"window", window}};
  } else if (suite == "lemma-s") {
    j = {{"pmax", pmax}};
  } else if (suite == "serre-free") {
    j = {{"n", n}, {"r", r}, {"eps", eps}};
  } else if (suite == "coproduct") {
    j = {{"n", n}, {"r", r}, {"eps", eps}, {"window", window}};
  } else if (suite == "classical-oracle" || suite == "parser-roundtrip") {
    j = {{"n", n}, {"count", count}, {"seed", seed}};
    if (suite == "parser-roundtrip") j["d"] = d;
  } else {
    j = {{"n", n}, {"r", r}, {"eps", eps}, {"d", d}, {"window", window}};
  }
  if (mutation != Mutation::none) j["mutation"] = mutation_name(mutation);
  return j;
}

namespace {

int parse_eps(const nlohmann::json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "+1" || s == "1") return 1;
    if (s == "-1") return -1;
  }
  throw ConfigError("eps must be +1 or -1");
}

std::pair<int, int> parse_window(const nlohmann::json& v) {
  if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer())
    return {v[0].get<int>(), v[1].get<int>()};
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto colon = s.find(':', 1);
    if (colon != std::string::npos) {
      try {
        std::size_t a = 0, b = 0;
        const int lo = std::stoi(s.substr(0, colon), &a);
        const int hi = std::stoi(s.substr(colon + 1), &b);
        if (a == colon && b == s.size() - colon - 1) return {lo, hi};
      } catch (const std::exception&) {
      }
    }
  }
  throw ConfigError("window must be \"LO:HI\" or [LO, HI]");
}

template <class T>
T int_field(const nlohmann::json& v, const char* name) {
  if (!v.is_number_integer()) throw ConfigError(std::string(name) + " must be an integer");
  return v.get<T>();
}

}  // namespace

void SuiteConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("suite settings must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "suite") {
      if (!v.is_string()) throw ConfigError("suite must be a string");
      suite = v.get<std::string>();
    } else if (key == "n") n = int_field<int>(v, "n");
    else if (key == "r") r = int_field<int>(v, "r");
    else if (key == "eps") eps = parse_eps(v);
    else if (key == "d") d = int_field<int>(v, "d");
    else if (key == "window") std::tie(lo, hi) = parse_window(v);
    else if (key == "threads") threads = int_field<int>(v, "threads");
    else if (key == "memo_cap") memo_cap = int_field<std::size_t>(v, "memo_cap");
    else if (key == "pmax") pmax = int_field<int>(v, "pmax");
    else if (key == "seed") seed = int_field<std::uint64_t>(v, "seed");
    else if (key == "count") count = int_field<int>(v, "count");
    else if (key == "mutate") {
      if (!v.is_string()) throw ConfigError("mutate must be a string");
      try {
        mutation = parse_mutation(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

// ------------------------------------------------------ parser round trip

namespace {

RationalFunction random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 4), coef(-3, 3), shift(-3, 3);
  const int L = len(rng);
  std::vector<mpz_class> c(static_cast<std::size_t>(L));
  for (auto& x : c) x = coef(rng);
  if (c.front() == 0) c.front() = 1;
  if (c.back() == 0) c.back() = -1;
  return RationalFunction::from_parts(shift(rng), IntPoly(std::move(c)), IntPoly::constant(1));
}

RationalFunction random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 7);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> num(-7, 7), den(1, 6);
      int a = num(rng);
      if (a == 0) a = 1;
      return RationalFunction(mpq_class(a, den(rng)));
    }
    case 1:
    case 2: return random_laurent(rng) / random_laurent(rng);
    default: return random_laurent(rng);
  }
}

GeneratorSymbol random_symbol(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3), idx(0, m - 1);
  const int i = idx(rng);
  switch (kind(rng)) {
    case 0: return GeneratorSymbol::E(i);
    case 1: return GeneratorSymbol::F(i);
    case 2: return GeneratorSymbol::K(i, 1);
    default: return GeneratorSymbol::K(i, -1);
  }
}

Report parser_roundtrip(const SuiteConfig& cfg) {
  const int count = cfg.count ? cfg.count : 1000;
  std::mt19937_64 rng(cfg.seed);
  Report rep;

  std::optional<std::string> w;
  for (int t = 0; t < count && !w; ++t) {
    const AlgebraExpression x = random_expression(cfg.n, rng);
    const std::string s = x.to_string();
    try {
      const AlgebraExpression y = AlgebraExpression::parse(s, cfg.n);
      if (!(y == x)) w = "'" + s + "' re-parses as '" + y.to_string() + "'";
      else if (y.to_string() != s) w = "'" + s + "' prints back as '" + y.to_string() + "'";
    } catch (const std::exception& e) {
      w = "'" + s + "': " + e.what();
    }
  }
  rep.add("expression", {{"count", count}}, !w, w);

  std::optional<std::string> ws;
  for (int t = 0; t < count && !ws; ++t) {
    const RationalFunction x = random_scalar(rng);
    const std::string s = x.to_string();
    try {
      const RationalFunction y = RationalFunction::parse(s);
      if (!(y == x) || y.to_string() != s) ws = "'" + s + "' re-parses as '" + y.to_string() + "'";
    } catch (const std::exception& e) {
      ws = "'" + s + "': " + e.what();
    }
  }
  rep.add("scalar", {{"count", count}}, !ws, ws);

  const ModuleContext ctx(cfg.n, cfg.d, cfg.lo, cfg.hi);
  std::uniform_int_distribution<int> terms(0, 4), key(cfg.lo, cfg.hi);
  std::optional<std::string> wv;
  for (int t = 0; t < count && !wv; ++t) {
    TensorVector x(ctx);
    for (int k = terms(rng); k > 0; --k) {
      TensorKey tk;
      for (std::size_t j = 0; j < static_cast<std::size_t>(cfg.d); ++j) tk[j] = key(rng);
      x.add_term(tk, random_scalar(rng));
    }
    const std::string s = x.to_string();
    try {
      const TensorVector y = TensorVector::parse(s, ctx);
      if (!(y == x) || y.to_string() != s) wv = "'" + s + "' re-parses as '" + y.to_string() + "'";
    } catch (const std::exception& e) {
      wv = "'" + s + "': " + e.what();
    }
  }
  rep.add("vector", {{"count", count}}, !wv, wv);
  return rep;
}

}  // namespace

AlgebraExpression random_expression(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> terms(1, 4), len(0, 4);
  AlgebraExpression x(m);
  for (int t = terms(rng); t > 0; --t) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(random_symbol(m, rng));
    x.add_term(w, random_scalar(rng));
  }
  return x;
}

// ----------------------------------------------------------- dispatch

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const EmbeddingSpec spec = cfg.spec();
  const std::string& s = cfg.suite;

  Report rep;
  try {
    if (s == "chevalley-sanity") {
      rep = relation_suite(ModuleContext(cfg.n, cfg.d, cfg.lo, cfg.hi), identity_realization(cfg.n), cfg.n);
    } else if (s == "phi-relations") {
      rep = relation_suite(ModuleContext(cfg.n + 1, cfg.d, cfg.lo, cfg.hi), image_realization(spec), cfg.n);
    } else if (s == "serre-free") {
      SerreQuotientTester tester(cfg.memo_cap);
      rep = verify_serre_for_images(spec, tester);
    } else if (s == "lemma-s") {
      SerreQuotientTester tester(cfg.memo_cap);
      rep = verify_lemma_formulas(cfg.pmax, tester);
    } else if (s == "intertwine") {
      rep = verify_intertwining(spec, ModuleContext(cfg.n, cfg.d, cfg.lo, cfg.hi));
    } else if (s == "coproduct") {
      rep = verify_coproduct_identity(spec, cfg.lo, cfg.hi);
    } else if (s == "gl-variant") {
      rep = verify_gl_suite(spec, ModuleContext(cfg.n + 1, cfg.d, cfg.lo, cfg.hi));
    } else if (s == "schur-compat") {
      rep = verify_schur_compatibility(spec, ModuleContext(cfg.n, cfg.d, cfg.lo, cfg.hi));
      rep.absorb(pairing_adjointness_check(cfg.n, cfg.r));
      rep.absorb(root_datum_checks(cfg.n, cfg.r, cfg.d));
    } else if (s == "classical-oracle") {
      rep = verify_classical_oracle(cfg.n, cfg.count ? cfg.count : 100, cfg.seed);
    } else {
      rep = parser_roundtrip(cfg);
    }
  } catch (const MarginError& e) {
    throw ConfigError(std::string("window too small: ") + e.what());
  }
  rep.suite = s;
  rep.params = cfg.params();
  rep.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// -------------------------------------------------------------- run-all

namespace {

int key_rank(const std::string& k) {
  if (k == "n") return 0;
  if (k == "r") return 1;
  return 2;
}

}  // namespace

std::vector<SuiteConfig> expand_config(const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : config.items())
    if (key != "defaults" && key != "runs") throw ConfigError("unknown top-level config key '" + key + "'");
  if (!config.contains("runs") || !config["runs"].is_array() || config["runs"].empty())
    throw ConfigError("config has no runs");

  SuiteConfig base;
  if (config.contains("defaults")) base.apply_json(config["defaults"]);

  std::vector<SuiteConfig> out;
  for (const auto& run : config["runs"]) {
    if (!run.is_object() || !run.contains("suite")) throw ConfigError("every run needs a \"suite\"");
    SuiteConfig cfg = base;
    nlohmann::json matrix = nlohmann::json::object();
    for (const auto& [key, v] : run.items()) {
      if (key == "matrix") matrix = v;
      else cfg.apply_json({{key, v}});
    }
    if (!matrix.is_object()) throw ConfigError("matrix must be an object");
    std::vector<std::string> keys;
    for (const auto& [key, v] : matrix.items()) keys.push_back(key);
    std::stable_sort(keys.begin(), keys.end(),
                     [](const std::string& a, const std::string& b) { return key_rank(a) < key_rank(b); });

    std::function<void(std::size_t, SuiteConfig)> expand = [&](std::size_t pos, SuiteConfig c) {
      if (pos == keys.size()) {
        c.validate();
        out.push_back(c);
        return;
      }
      const std::string& key = keys[pos];
      const nlohmann::json& vals = matrix[key];
      if (key == "r" && vals == "all") {
        for (int r = 0; r < c.n; ++r) {
          SuiteConfig next = c;
          next.r = r;
          expand(pos + 1, next);
        }
        return;
      }
      if (!vals.is_array() || vals.empty()) throw ConfigError("matrix entry '" + key + "' must be a nonempty list");
      for (const auto& v : vals) {
        SuiteConfig next = c;
        next.apply_json({{key, v}});
        expand(pos + 1, next);
      }
    };
    expand(0, cfg);
  }
  return out;
}

nlohmann::json run_all(const nlohmann::json& config, const RunAllOptions& opts, bool& ok) {
  std::vector<SuiteConfig> cfgs = expand_config(config);
  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json runs = nlohmann::json::array();
  std::size_t total = 0, passed = 0;
  ok = true;
  for (SuiteConfig& cfg : cfgs) {
    if (opts.threads > 0) cfg.threads = opts.threads;
    if (opts.mutation != Mutation::none) cfg.mutation = opts.mutation;
    const Report rep = run_suite(cfg);
    total += rep.checks.size();
    passed += rep.passed();
    ok = ok && rep.ok();
    runs.push_back(rep.to_json(opts.with_timing));
  }
  nlohmann::json out = {{"suite", "run-all"},
                        {"runs", runs},
                        {"counts", {{"runs", cfgs.size()}, {"total", total}, {"passed", passed}, {"failed", total - passed}}}};
  if (opts.with_timing) out["wallclock"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace qembed
