// qembed: command-line driver for the verification suites.
//
// Exit codes: 0 when every check passes, 1 when some check fails, 2 on a
// usage or configuration error.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qembed/repmod.hpp"
#include "qembed/suites.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int parse_eps_text(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  throw qembed::ConfigError("--eps must be +1 or -1, got '" + s + "'");
}

std::pair<int, int> parse_window_text(const std::string& s) {
  qembed::SuiteConfig c;
  c.apply_json({{"window", s}});
  return {c.lo, c.hi};
}

int default_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("QEMBED_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
    throw qembed::ConfigError(std::string("QEMBED_THREADS must be a positive integer, got '") + env + "'");
  }
  return 0;
}

void write_json(const nlohmann::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw qembed::ConfigError("cannot open output file '" + out + "'");
  f << text;
}

void print_report(const nlohmann::json& rep, std::ostream& os) {
  if (rep.contains("runs")) {
    for (const auto& run : rep["runs"]) print_report(run, os);
    const auto& c = rep["counts"];
    os << "run-all: " << c["runs"] << " runs, " << c["total"] << " checks, " << c["passed"] << " passed, "
       << c["failed"] << " failed\n";
    return;
  }
  os << rep.value("suite", "?") << ' ' << rep.value("params", nlohmann::json::object()).dump() << '\n';
  for (const auto& c : rep.value("checks", nlohmann::json::array())) {
    os << "  " << (c.value("status", "") == "pass" ? "PASS" : "FAIL") << ' ' << c.value("tag", "") << ' '
       << c.value("params", nlohmann::json::object()).dump() << '\n';
    if (c.contains("witness")) os << "       " << c["witness"].get<std::string>() << '\n';
  }
  const auto& k = rep["counts"];
  os << "  " << k["total"] << " checks, " << k["passed"] << " passed, " << k["failed"] << " failed";
  if (rep.contains("wallclock")) os << ", " << rep["wallclock"].get<double>() << " s";
  os << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the quantum affine sl_n -> sl_{n+1} embedding"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run one verification suite");
  std::string suite, eps_text = "-1", window_text = "-8:8", out, mutate;
  qembed::SuiteConfig cfg;
  int threads = 0;
  bool no_timing = false;
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(qembed::suite_names()));
  verify->add_option("--n", cfg.n, "Rank n of the source algebra");
  verify->add_option("--r", cfg.r, "Insertion index r in [0, n-1]");
  verify->add_option("--eps", eps_text, "Sign epsilon: +1 or -1");
  verify->add_option("--d", cfg.d, "Tensor power d");
  verify->add_option("--window", window_text, "Basis index window LO:HI");
  verify->add_option("--threads", threads, "Worker threads (default: $QEMBED_THREADS or all cores)");
  verify->add_option("--memo-cap", cfg.memo_cap, "Entry cap of the quotient-test memo (0 disables it)");
  verify->add_option("--out", out, "Write the JSON report here instead of stdout");
  verify->add_option("--mutate", mutate, "Inject a defect: sign-eps");
  verify->add_option("--pmax", cfg.pmax, "Largest divided power for lemma-s");
  verify->add_option("--seed", cfg.seed, "Generator seed");
  verify->add_option("--count", cfg.count, "Generated items (0: suite default)");
  verify->add_flag("--no-timing", no_timing, "Omit wallclock from the report");

  // run-all
  auto* run_all = app.add_subcommand("run-all", "Run a configuration matrix");
  std::string config_path, ra_out, ra_mutate;
  int ra_threads = 0;
  bool ra_no_timing = false;
  run_all->add_option("config", config_path, "JSON matrix configuration")->required();
  run_all->add_option("--out", ra_out, "Write the aggregated report here instead of stdout");
  run_all->add_option("--threads", ra_threads, "Worker threads");
  run_all->add_option("--mutate", ra_mutate, "Inject a defect into every run: sign-eps");
  run_all->add_flag("--no-timing", ra_no_timing, "Omit wallclock from the report");

  // eval
  auto* eval = app.add_subcommand("eval", "Act by an expression on a tensor vector");
  int em = 2, ed = 1;
  std::string expr_text, vec_text, ewindow = "-8:8";
  eval->add_option("--n", em, "Number of residues")->required();
  eval->add_option("--d", ed, "Tensor power")->required();
  eval->add_option("--expr", expr_text, "Expression, e.g. 'E0*F1 - v^-1*K0'")->required();
  eval->add_option("--vec", vec_text, "Vector, e.g. 'u[0,1] + v*u[1,1]'")->required();
  eval->add_option("--window", ewindow, "Basis index window LO:HI");

  // report
  auto* report = app.add_subcommand("report", "Print a JSON report");
  std::string report_path;
  bool pretty = false;
  report->add_option("file", report_path, "Report file")->required();
  report->add_flag("--pretty", pretty, "Human-readable listing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) {
      cfg.suite = suite;
      cfg.eps = parse_eps_text(eps_text);
      std::tie(cfg.lo, cfg.hi) = parse_window_text(window_text);
      cfg.threads = default_threads(threads);
      cfg.mutation = qembed::parse_mutation(mutate);
      const qembed::Report rep = qembed::run_suite(cfg);
      write_json(rep.to_json(!no_timing), out);
      std::cerr << suite << ": " << rep.passed() << "/" << rep.checks.size() << " checks passed\n";
      return rep.ok() ? 0 : kExitFail;
    }
    if (*run_all) {
      std::ifstream f(config_path);
      if (!f) throw qembed::ConfigError("cannot read config '" + config_path + "'");
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(f);
      } catch (const nlohmann::json::parse_error& e) {
        throw qembed::ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      qembed::RunAllOptions opts;
      opts.threads = default_threads(ra_threads);
      opts.mutation = qembed::parse_mutation(ra_mutate);
      opts.with_timing = !ra_no_timing;
      bool ok = false;
      const nlohmann::json rep = qembed::run_all(config, opts, ok);
      write_json(rep, ra_out);
      const auto& c = rep["counts"];
      std::cerr << "run-all: " << c["passed"] << "/" << c["total"] << " checks passed over " << c["runs"] << " runs\n";
      return ok ? 0 : kExitFail;
    }
    if (*eval) {
      int lo = 0, hi = 0;
      std::tie(lo, hi) = parse_window_text(ewindow);
      const qembed::ModuleContext ctx(em, ed, lo, hi);
      const auto x = qembed::AlgebraExpression::parse(expr_text, em);
      const auto vec = qembed::TensorVector::parse(vec_text, ctx);
      std::cout << qembed::act_expression(ctx, x, vec).to_string() << '\n';
      return 0;
    }
    if (*report) {
      std::ifstream f(report_path);
      if (!f) throw qembed::ConfigError("cannot read report '" + report_path + "'");
      nlohmann::json rep;
      try {
        rep = nlohmann::json::parse(f);
      } catch (const nlohmann::json::parse_error& e) {
        throw qembed::ConfigError(std::string("report is not valid JSON: ") + e.what());
      }
      if (pretty) print_report(rep, std::cout);
      else std::cout << rep.dump(2) << '\n';
      const auto failed = rep.contains("counts") ? rep["counts"].value("failed", 0) : 0;
      return failed == 0 ? 0 : kExitFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
