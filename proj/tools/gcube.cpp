#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcube/asymptotics.hpp"
#include "gcube/cache.hpp"
#include "gcube/entropy.hpp"
#include "gcube/format.hpp"
#include "gcube/gowers.hpp"
#include "gcube/lattice.hpp"
#include "gcube/solver.hpp"
#include "gcube/suites.hpp"
#include "gcube/terms.hpp"

namespace {

using namespace gcube;

enum class Format { human, json, csv };

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  Format format = Format::human;
  std::string cache_path;
  int threads = 1;

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.t_tolerance = tolerance;
    cfg.rng_seed = seed;
    cfg.threads = threads;
    return cfg;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_exact(values[i]);
  return out + "]";
}

std::string rational_array(const std::vector<mpq_class>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ",\"" : "\"") + values[i].get_str() + "\"";
  return out + "]";
}

std::string int_array(const std::vector<std::int64_t>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out + "]";
}

// One flat record, printed as "key: value" lines, a JSON object, or a
// two-line CSV. Values are pre-rendered: `json` holds the JSON token and
// `text` the human rendering.
struct Field {
  std::string key;
  std::string json;
  std::string text;
};

struct Record {
  std::vector<Field> fields;

  Record& integer(const std::string& key, long long v) {
    fields.push_back({key, std::to_string(v), std::to_string(v)});
    return *this;
  }
  Record& exact(const std::string& key, const std::string& digits) {
    fields.push_back({key, digits, digits});
    return *this;
  }
  Record& real(const std::string& key, double v) {
    fields.push_back({key, format_exact(v), format_human(v)});
    return *this;
  }
  Record& text(const std::string& key, const std::string& v) {
    fields.push_back({key, json_string(v), v});
    return *this;
  }
  Record& boolean(const std::string& key, bool v) {
    fields.push_back({key, v ? "true" : "false", v ? "true" : "false"});
    return *this;
  }
  Record& raw(const std::string& key, std::string json, std::string text) {
    fields.push_back({key, std::move(json), std::move(text)});
    return *this;
  }

  std::string to_json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i ? "," : "") + json_string(fields[i].key) + ":" + fields[i].json;
    }
    return out + "}";
  }

  void print(std::ostream& out, Format format) const {
    switch (format) {
      case Format::json:
        out << to_json() << '\n';
        break;
      case Format::csv: {
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].key;
        out << '\n';
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_cell(fields[i].json);
        out << '\n';
        break;
      }
      case Format::human:
        for (const auto& f : fields) out << f.key << ": " << f.text << '\n';
        break;
    }
  }

  static std::string csv_cell(const std::string& json) {
    if (json.find_first_of(",\"") == std::string::npos) return json;
    std::string quoted = "\"";
    for (char c : json) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
};

std::string join_human(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + format_human(values[i]);
  return out;
}

// --- exponent solving with the optional cache --------------------------

ExponentPair exponent_from_json(const nlohmann::json& j) {
  ExponentPair r;
  r.k = j.at("k").get<int>();
  r.n = j.at("n").get<int>();
  r.t = j.at("t").get<double>();
  r.p = j.at("p").get<double>();
  r.residual = j.at("residual").get<double>();
  r.bracket_width = j.at("bracket").get<double>();
  r.argmax = j.at("argmax").get<std::vector<double>>();
  return r;
}

Record exponent_record(const ExponentPair& r) {
  Record rec;
  rec.integer("k", r.k).integer("n", r.n).real("t", r.t).real("p", r.p).real("residual", r.residual).real(
      "bracket", r.bracket_width);
  rec.raw("argmax", json_array(r.argmax), join_human(r.argmax));
  return rec;
}

ExponentPair solve_cached(int n, int k, const RunConfig& run) {
  const SolverConfig cfg = run.solver();
  cfg.validate();
  std::optional<ResultCache> cache;
  const std::string params = "{\"k\":" + std::to_string(k) + ",\"n\":" + std::to_string(n) + "}";
  const std::string config = config_hash(cfg.fingerprint());
  if (!run.cache_path.empty()) {
    cache.emplace(run.cache_path);
    if (auto hit = cache->lookup("exponent", params, config, cfg.t_tolerance)) {
      return exponent_from_json(nlohmann::json::parse(*hit));
    }
  }
  ExponentPair result = solve_exponent(n, k, cfg);
  if (cache) cache->store("exponent", params, config, cfg.t_tolerance, exponent_record(result).to_json());
  return result;
}

// --- sub-commands ------------------------------------------------------

int cmd_norm(const RunConfig& run, const std::string& path, int k) {
  const LatticeFunction f = function_from_json(read_file(path));
  const auto kk = static_cast<std::size_t>(k);
  const double power = gowers_norm_pow(f, kk);
  Record rec;
  rec.integer("k", k).real("norm_pow", power).real("norm", gowers_norm(f, kk));
  rec.print(std::cout, run.format);
  return kOk;
}

int cmd_energy(const RunConfig& run, const std::string& path, const std::string& kind, int k) {
  const CubeSet set = set_from_json(read_file(path));
  const auto kk = static_cast<std::size_t>(k);
  ExactCount value;
  if (kind == "P") {
    value = energy_P(set, kk);
  } else if (kind == "E") {
    value = energy_E(set, kk);
  } else {
    value = energy_E_tilde(set, kk);
  }
  Record rec;
  rec.text("kind", kind).integer("k", k).exact("value", value.get_str());
  rec.print(std::cout, run.format);
  return kOk;
}

int cmd_exponent(const RunConfig& run, int n, int k) {
  exponent_record(solve_cached(n, k, run)).print(std::cout, run.format);
  return kOk;
}

int cmd_entropy(const RunConfig& run, std::optional<int> binomial, const std::vector<std::int64_t>& signed_h) {
  if (binomial.has_value() == !signed_h.empty()) throw UsageError("entropy: give exactly one of --binomial or --signed");
  Record rec;
  if (binomial) {
    const int m = *binomial;
    if (m < 1) throw UsageError("entropy: --binomial needs m >= 1");
    const auto bounds = binomial_entropy_bounds(m);
    rec.integer("m", m).real("entropy", binomial_entropy(m)).real("lower", bounds.lower).real("upper", bounds.upper);
  } else {
    const PMFVector pmf = pmf_signed_sum(signed_h);
    std::string text;
    for (const auto& q : pmf.masses()) text += (text.empty() ? "" : " ") + q.get_str();
    rec.raw("h", int_array(signed_h), [&] {
      std::string s;
      for (auto v : signed_h) s += (s.empty() ? "" : " ") + std::to_string(v);
      return s;
    }());
    rec.integer("offset", pmf.offset()).raw("masses", rational_array(pmf.masses()), text).real("entropy", entropy(pmf));
  }
  rec.print(std::cout, run.format);
  return kOk;
}

int cmd_terms(const RunConfig& run, int n, std::optional<int> k) {
  if (n < 2 || n > 12) throw UsageError("terms: n must be in [2, 12]");
  if (k && *k < 1) throw UsageError("terms: k must be >= 1");
  const auto classes = enumerate_tuple_classes(n);
  std::ostream& out = std::cout;

  if (run.format == Format::json) {
    out << "{\"n\":" << n << ",\"classes\":[";
    for (std::size_t c = 0; c < classes.size(); ++c) {
      out << (c ? "," : "") << "{\"l\":" << classes[c].l << ",\"size\":" << classes[c].tuples.size()
          << ",\"tuples\":[";
      for (std::size_t i = 0; i < classes[c].tuples.size(); ++i) {
        const auto& tup = classes[c].tuples[i];
        out << (i ? "," : "") << "{\"a\":" << tup.a << ",\"h\":" << int_array(tup.h)
            << ",\"q\":" << rational_array(pmf_of_tuple(n, tup.a, tup.h)) << "}";
      }
      out << "]}";
    }
    out << "]";
    if (k) {
      out << ",\"k\":" << *k << ",\"groups\":[";
      const auto groups = group_terms(n, *k);
      for (std::size_t i = 0; i < groups.size(); ++i) {
        out << (i ? "," : "") << "{\"coefficient\":" << groups[i].coefficient.get_str()
            << ",\"q\":" << rational_array(groups[i].q) << "}";
      }
      out << "]";
    }
    out << "}\n";
    return kOk;
  }

  if (run.format == Format::csv) {
    out << "l,a,h,q\n";
    for (const auto& cls : classes) {
      for (const auto& tup : cls.tuples) {
        std::string h, q;
        for (auto v : tup.h) h += (h.empty() ? "" : " ") + std::to_string(v);
        for (const auto& r : pmf_of_tuple(n, tup.a, tup.h)) q += (q.empty() ? "" : " ") + r.get_str();
        out << cls.l << ',' << tup.a << ',' << h << ',' << q << '\n';
      }
    }
    return kOk;
  }

  for (const auto& cls : classes) {
    out << "T_{" << n << "," << cls.l << "}: " << cls.tuples.size() << " tuples\n";
    for (const auto& tup : cls.tuples) {
      out << "  a=" << tup.a << " h=(";
      for (std::size_t i = 0; i < tup.h.size(); ++i) out << (i ? "," : "") << tup.h[i];
      out << ") q=(";
      const auto q = pmf_of_tuple(n, tup.a, tup.h);
      for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << q[i].get_str();
      out << ")\n";
    }
  }
  if (k) {
    out << "groups for k=" << *k << ":\n";
    for (const auto& g : group_terms(n, *k)) {
      out << "  " << g.coefficient.get_str() << " x q=(";
      for (std::size_t i = 0; i < g.q.size(); ++i) out << (i ? "," : "") << g.q[i].get_str();
      out << ")\n";
    }
  }
  return kOk;
}

int cmd_table1(const RunConfig& run, int n_max) {
  if (n_max < 2) throw UsageError("table1: --n-max must be >= 2");
  const auto rows = leading_coefficient_table();
  std::ostream& out = std::cout;
  if (run.format == Format::csv) out << "n,closed_form,closed_value,computed,tabulated\n";
  if (run.format == Format::json) out << "[";
  bool first = true;
  for (const auto& row : rows) {
    if (row.n > n_max) break;
    const double computed = leading_coefficient(row.n);
    switch (run.format) {
      case Format::json:
        out << (first ? "" : ",") << "{\"n\":" << row.n << ",\"closed_form\":" << json_string(row.closed_form)
            << ",\"closed_value\":" << format_exact(row.closed_value) << ",\"computed\":" << format_exact(computed)
            << ",\"tabulated\":" << format_exact(row.tabulated) << "}";
        break;
      case Format::csv:
        out << row.n << ",\"" << row.closed_form << "\"," << format_exact(row.closed_value) << ','
            << format_exact(computed) << ',' << format_exact(row.tabulated) << '\n';
        break;
      case Format::human:
        out << "n=" << row.n << "  " << row.closed_form << " = " << format_human(row.closed_value)
            << "  (n-1)/H_{n-1} = " << format_human(computed) << "  tabulated " << format_human(row.tabulated)
            << '\n';
        break;
    }
    first = false;
  }
  if (run.format == Format::json) out << "]\n";
  return kOk;
}

int cmd_asym(const RunConfig& run, int n, const std::vector<int>& ks, const std::string& csv_path) {
  if (ks.empty()) throw UsageError("asym: --k needs at least one value");
  for (int k : ks) {
    if (k < 2) throw UsageError("asym: every k must be >= 2");
  }
  std::vector<int> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<AsymptoticReport> rows;
  for (int k : sorted) {
    const ExponentPair solved = solve_cached(n, k, run);
    AsymptoticReport row;
    row.k = k;
    row.n = n;
    row.t_solver = solved.t;
    row.t_formula = large_k_main_term(k, n);
    row.gap = row.t_solver - row.t_formula;
    row.lower_large_n = large_n_lower_main_term(k, n);
    row.upper_trivial = k + 1.0;
    rows.push_back(row);
  }

  if (!csv_path.empty()) {
    std::ofstream file(csv_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + csv_path);
    write_asymptotic_csv(file, rows);
  }
  std::ostream& out = std::cout;
  switch (run.format) {
    case Format::csv:
      write_asymptotic_csv(out, rows);
      break;
    case Format::json:
      out << "[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << (i ? "," : "") << "{\"k\":" << r.k << ",\"n\":" << r.n << ",\"t_solver\":" << format_exact(r.t_solver)
            << ",\"t_formula\":" << format_exact(r.t_formula) << ",\"gap\":" << format_exact(r.gap)
            << ",\"lower13\":" << format_exact(r.lower_large_n) << ",\"upper\":" << format_exact(r.upper_trivial)
            << "}";
      }
      out << "]\n";
      break;
    case Format::human:
      for (const auto& r : rows) {
        out << "k=" << r.k << " n=" << r.n << "  t=" << format_human(r.t_solver)
            << "  main term=" << format_human(r.t_formula) << "  gap=" << format_human(r.gap)
            << "  large-n lower=" << format_human(r.lower_large_n) << "  upper=" << format_human(r.upper_trivial)
            << '\n';
      }
      break;
  }
  return kOk;
}

int cmd_verify(const RunConfig& run, const std::string& suite, int trials) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    const auto known = suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end()) throw UsageError("unknown suite: " + suite);
    names.push_back(suite);
  }
  if (trials < 1) throw UsageError("verify: --trials must be >= 1");

  bool ok = true;
  if (run.format == Format::csv) std::cout << "suite,checks,failures,passed\n";
  if (run.format == Format::json) std::cout << "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto report = run_suite(names[i], run.seed, trials);
    ok = ok && report.passed();
    switch (run.format) {
      case Format::json: {
        std::cout << (i ? "," : "") << "{\"suite\":" << json_string(report.name) << ",\"checks\":" << report.checks
                  << ",\"passed\":" << (report.passed() ? "true" : "false") << ",\"failures\":[";
        for (std::size_t j = 0; j < report.failures.size(); ++j) {
          std::cout << (j ? "," : "") << json_string(report.failures[j]);
        }
        std::cout << "]}";
        break;
      }
      case Format::csv:
        std::cout << report.name << ',' << report.checks << ',' << report.failures.size() << ','
                  << (report.passed() ? "true" : "false") << '\n';
        break;
      case Format::human:
        std::cout << report.name << ": " << (report.passed() ? "PASS" : "FAIL") << " (" << report.checks
                  << " checks, " << report.failures.size() << " failures)\n";
        for (const auto& f : report.failures) std::cout << "  " << f << '\n';
        break;
    }
  }
  if (run.format == Format::json) std::cout << "]\n";
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gowers norms on discrete cubes: exact energies, critical exponents, entropy checks"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig run;
  std::string format_name = "human";
  app.add_option("--tol", run.tolerance, "bisection tolerance in t")->check(CLI::Range(0.0, 1e-3))->capture_default_str();
  app.add_option("--seed", run.seed, "random seed")->capture_default_str();
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--cache", run.cache_path, "JSON-lines result cache");
  app.add_option("--threads", run.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string file;
  int k = 2;
  int n = 3;

  auto* norm = app.add_subcommand("norm", "Gowers norm of a function file");
  norm->add_option("--f", file, "function JSON")->required();
  norm->add_option("--k", k, "order k >= 1")->required();

  std::string kind = "P";
  auto* energy = app.add_subcommand("energy", "exact energy of a set file");
  energy->add_option("--set", file, "set JSON")->required();
  energy->add_option("--kind", kind, "P, E or Et")->check(CLI::IsMember({"P", "E", "Et"}))->capture_default_str();
  energy->add_option("--k", k, "order k >= 2")->required()->check(CLI::Range(2, 64));

  bool as_json = false;
  bool as_csv = false;
  auto* exponent = app.add_subcommand("exponent", "critical exponents t_{k,n} and p_{k,n}");
  exponent->add_option("--k", k, "k >= 2")->required()->check(CLI::Range(2, 64));
  exponent->add_option("--n", n, "side n >= 2")->required()->check(CLI::Range(2, 16));
  auto* json_flag = exponent->add_flag("--json", as_json, "JSON output");
  exponent->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);

  std::optional<int> binomial;
  std::vector<std::int64_t> signed_h;
  auto* entropy_cmd = app.add_subcommand("entropy", "binomial entropy or signed Bernoulli sums");
  auto* binomial_opt = entropy_cmd->add_option("--binomial", binomial, "H_m for Binomial(m, 1/2)");
  entropy_cmd->add_option("--signed", signed_h, "coefficients h_1,...,h_m")->delimiter(',')->excludes(binomial_opt);

  std::optional<int> terms_k;
  auto* terms = app.add_subcommand("terms", "tuple classes and probability vectors");
  terms->add_option("--n", n, "side n")->required();
  terms->add_option("--k", terms_k, "also list grouped terms for this k");
  terms->add_flag("--json", as_json, "JSON output");

  int n_max = 6;
  auto* table1 = app.add_subcommand("table1", "leading coefficients (n-1)/H_{n-1}");
  table1->add_option("--n-max", n_max, "largest n")->capture_default_str();

  std::vector<int> ks;
  std::string csv_path;
  auto* asym = app.add_subcommand("asym", "solver against asymptotic main terms");
  asym->add_option("--n", n, "side n")->required()->check(CLI::Range(2, 16));
  asym->add_option("--k", ks, "comma-separated k values")->required()->delimiter(',');
  asym->add_option("--csv", csv_path, "also write CSV to this file");

  std::string suite;
  int trials = 200;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  verify->add_option("--trials", trials, "random trials per randomized suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (!(run.tolerance > 0.0)) {
    std::cerr << "error: --tol must be in (0, 1e-3]\n";
    return kUsage;
  }
  run.format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::human;
  if (as_json) run.format = Format::json;
  if (as_csv) run.format = Format::csv;

  try {
    if (*norm) return cmd_norm(run, file, k);
    if (*energy) return cmd_energy(run, file, kind, k);
    if (*exponent) return cmd_exponent(run, n, k);
    if (*entropy_cmd) return cmd_entropy(run, binomial, signed_h);
    if (*terms) return cmd_terms(run, n, terms_k);
    if (*table1) return cmd_table1(run, n_max);
    if (*asym) return cmd_asym(run, n, ks, csv_path);
    if (*verify) return cmd_verify(run, suite, trials);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
