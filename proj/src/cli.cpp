#include "qlucas/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "qlucas/congruence.hpp"
#include "qlucas/json_io.hpp"
#include "qlucas/landau.hpp"
#include "qlucas/parallel.hpp"
#include "qlucas/qcombinatorics.hpp"
#include "qlucas/relations.hpp"
#include "qlucas/series.hpp"
#include "qlucas/version.hpp"

namespace qlucas {

unsigned default_jobs() {
  if (const char* env = std::getenv("QLUCAS_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IntVector parse_vector(const std::string& text, const char* what) {
  IntVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("--") + what + ": '" + text + "' is not a comma-separated integer list");
    }
  }
  if (out.empty()) throw ConfigError(std::string("--") + what + " is empty");
  return out;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw ConfigError("'" + text + "' is not a rational number");
  r.canonicalize();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A file path, or one of: central[:r], apery-a, apery-b.
RatioSpec load_spec(const std::string& source) {
  if (source.empty()) throw ConfigError("--spec is required");
  if (source == "central" || source.rfind("central:", 0) == 0) {
    const unsigned r = source == "central" ? 1U : static_cast<unsigned>(std::stoul(source.substr(8)));
    if (r == 0) throw ConfigError("central:r needs r >= 1");
    return RatioSpec::central_binomial(r);
  }
  if (source == "apery-a") return RatioSpec::apery_a();
  if (source == "apery-b") return RatioSpec::apery_b();
  Json j;
  try {
    j = Json::parse(read_file(source));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ConfigError("spec file '" + source + "' is not valid JSON: " + ex.what());
  }
  return spec_from_json(j);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string elided(const IntPolynomial& p, std::size_t max_terms = 16) {
  std::vector<std::size_t> support;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p.coeffs()[i] != 0) support.push_back(i);
  }
  if (support.size() <= max_terms + 4) return p.to_string();
  auto part = [&](std::size_t from, std::size_t to) {
    std::vector<Integer> c(p.size());
    for (std::size_t k = from; k < to; ++k) c[support[k]] = p.coeffs()[support[k]];
    return IntPolynomial(std::move(c)).to_string();
  };
  const std::size_t half = max_terms / 2;
  return part(0, half) + " + ... [" + std::to_string(support.size() - 2 * half) + " terms elided] ... + " +
         part(support.size() - half, support.size());
}

std::string join(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

struct Outcome {
  Json result;
  std::vector<std::string> text;
  bool passed = true;
};

void describe_report(const CongruenceReport& r, std::vector<std::string>& text) {
  text.push_back("kind: " + r.kind);
  text.push_back("subject: " + r.subject);
  for (const auto& [k, v] : r.ranges) text.push_back("range " + k + ": " + join(v));
  text.push_back("checked: " + std::to_string(r.checked));
  text.push_back("failures: " + std::to_string(r.failures.size()));
  std::size_t shown = 0;
  for (const auto& f : r.failures) {
    if (++shown > 10) {
      text.push_back("  ... (see JSON output for the full list)");
      break;
    }
    text.push_back("  b=" + std::to_string(f.b) + " a=" + join(f.a) + " n=" + join(f.n) +
                   ": lhs=" + elided(f.lhs_residue) + " rhs=" + elided(f.rhs_residue));
  }
}

std::vector<Integer> factorials(std::int64_t order) {
  std::vector<Integer> out;
  Integer f = 1;
  for (std::int64_t n = 0; n <= order; ++n) {
    if (n > 0) f *= n;
    out.push_back(f);
  }
  return out;
}

/// central:r, geometric, factorial, apery-a, apery-b, or qcentral:r@q.
RationalSeries named_series(const std::string& name, std::int64_t order) {
  if (name.rfind("central:", 0) == 0) {
    return to_rational_series(central_binomial_powers(static_cast<unsigned>(std::stoul(name.substr(8))), order));
  }
  if (name == "geometric") return RationalSeries(static_cast<std::size_t>(order) + 1, Rational(1));
  if (name == "factorial") return to_rational_series(factorials(order));
  if (name == "apery-a" || name == "apery-b") {
    const auto family = name == "apery-a" ? AperyFamily::A : AperyFamily::B;
    RationalSeries s;
    for (std::int64_t n = 0; n <= order; ++n) s.emplace_back(apery_at_one(family, static_cast<std::uint64_t>(n)));
    return s;
  }
  if (name.rfind("qcentral:", 0) == 0) {
    const auto at = name.find('@');
    if (at == std::string::npos) throw ConfigError("qcentral series needs the form qcentral:r@q");
    const auto r = static_cast<unsigned>(std::stoul(name.substr(9, at - 9)));
    return evaluate_series_at(central_q_binomial_series(r, order), parse_rational(name.substr(at + 1)));
  }
  throw ConfigError("unknown series '" + name + "'");
}

// Pre-scans for --config and splices its keys in right after the command
// name, so that explicit flags (which come later) take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::set<std::string>& commands) {
  std::vector<std::string> rest;
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty()) return rest;
  Json j;
  try {
    j = Json::parse(read_file(config));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ConfigError("config file '" + config + "' is not valid JSON: " + ex.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : j.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back("--" + key);
    } else if (value.is_string()) {
      injected.push_back("--" + key);
      injected.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
      injected.push_back("--" + key);
      injected.push_back(joined);
    } else {
      injected.push_back("--" + key);
      injected.push_back(value.dump());
    }
  }
  auto pos = std::find_if(rest.begin(), rest.end(), [&](const std::string& s) { return commands.count(s) > 0; });
  if (pos != rest.end()) ++pos;
  rest.insert(pos, injected.begin(), injected.end());
  return rest;
}

struct Options {
  bool json = false;
  std::string output;
  unsigned jobs = 0;
  bool no_timestamp = false;

  std::string spec;
  std::uint64_t b = 0;
  std::uint64_t b_max = 10;
  std::uint64_t p_max = 7;
  std::string n_box = "";
  std::string n = "";
  std::string cap = "";
  std::int64_t total = -1;
  std::string t = "";
  std::string m = "";
  std::int64_t order = 20;
  std::string family = "a";
  std::uint64_t t_scalar = 0;
  std::uint64_t n_max = 20;
  std::uint64_t p = 2;
  std::uint64_t k = 1;
  std::string g = "";
  std::string series = "";
  std::int64_t dx = 1;
  std::int64_t dy = 1;
  std::string method = "both";
  std::uint64_t budget = 1'000'000;
  std::uint64_t index = 0;
  std::uint64_t qk = 0;
};

IntVector require_vector(const std::string& text, const char* name, std::size_t dim) {
  if (text.empty()) throw ConfigError(std::string("--") + name + " is required");
  IntVector v = parse_vector(text, name);
  if (v.size() == 1 && dim > 1) v.assign(dim, v[0]);
  if (v.size() != dim) {
    throw ConfigError(std::string("--") + name + " needs " + std::to_string(dim) + " components");
  }
  for (auto c : v) {
    if (c < 0) throw ConfigError(std::string("--") + name + " components must be nonnegative");
  }
  return v;
}

Outcome cmd_cyclotomic(const Options& o) {
  if (o.index == 0) throw ConfigError("cyclotomic index must be positive");
  const IntPolynomial& p = cyclotomic(o.index);
  Outcome out;
  out.result = Json{{"b", o.index},
                    {"polynomial", to_json(p)},
                    {"degree", p.size() - 1},
                    {"value_at_one", eval_at_one(p).get_str()}};
  out.text.push_back(p.to_string());
  return out;
}

Outcome cmd_qbinom(const Options& o) {
  const IntPolynomial p = q_binomial(o.index, o.qk);
  Outcome out;
  out.result = Json{{"n", o.index}, {"k", o.qk}, {"polynomial", to_json(p)}, {"value_at_one", eval_at_one(p).get_str()}};
  out.text.push_back(elided(p));
  return out;
}

Outcome cmd_qratio(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  const IntVector n = require_vector(o.n, "n", spec.dim);
  if (o.method != "direct" && o.method != "cyclotomic" && o.method != "both") {
    throw ConfigError("--method must be direct, cyclotomic or both");
  }
  Outcome out;
  out.result["spec"] = to_json(spec);
  out.result["n"] = n;
  out.result["method"] = o.method;
  std::optional<IntPolynomial> direct, cyclo;
  try {
    if (o.method != "cyclotomic") direct = q_ratio(spec, n);
    if (o.method != "direct") cyclo = q_ratio_cyclotomic(spec, n);
  } catch (const NotDivisible& ex) {
    out.passed = false;
    out.result["error"] = "NotDivisible";
    out.result["remainder"] = to_json(ex.remainder());
    out.text.push_back("not a polynomial: division leaves remainder " + elided(ex.remainder()));
    return out;
  } catch (const NegativeExponent& ex) {
    out.passed = false;
    out.result["error"] = "NegativeExponent";
    out.result["b"] = ex.b();
    out.text.push_back("not a polynomial: negative cyclotomic exponent at b = " + std::to_string(ex.b()));
    return out;
  }
  const IntPolynomial& value = direct ? *direct : *cyclo;
  out.result["polynomial"] = to_json(value);
  out.result["value_at_one"] = eval_at_one(value).get_str();
  out.result["cyclotomic_bound"] = spec.max_dot(n);
  if (direct && cyclo) {
    out.result["methods_agree"] = (*direct == *cyclo);
    out.passed = (*direct == *cyclo);
  }
  out.text.push_back(elided(value));
  if (direct && cyclo) out.text.push_back(std::string("methods agree: ") + (out.passed ? "true" : "false"));
  return out;
}

Outcome cmd_check_landau(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  const auto report = check_landau(spec, EnumerationOptions{o.budget});
  Outcome out;
  out.result = to_json(report, spec);
  out.passed = report.integrality && report.criterion_D;
  out.text.push_back("spec: " + spec.to_string());
  out.text.push_back("cells: " + std::to_string(report.cells.size()));
  out.text.push_back(std::string("integrality: ") + (report.integrality ? "true" : "false"));
  out.text.push_back(std::string("criterion_D: ") + (report.criterion_D ? "true" : "false"));
  out.text.push_back("min_value_overall: " + std::to_string(report.min_value_overall));
  out.text.push_back("min_value_on_D: " +
                     (report.min_value_on_D ? std::to_string(*report.min_value_on_D) : std::string("none (D empty)")));
  for (const auto& cell : report.violating_cells) {
    std::string w;
    for (const auto& c : cell.witness->coords) w += (w.empty() ? "" : ", ") + to_string(c);
    out.text.push_back("  violating cell: delta=" + std::to_string(cell.delta) + " witness=(" + w + ")");
  }
  return out;
}

Outcome from_report(const CongruenceReport& report) {
  Outcome out;
  out.result = to_json(report);
  out.passed = report.passed();
  describe_report(report, out.text);
  return out;
}

Outcome cmd_verify_congruence(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  SweepOptions sweep;
  sweep.jobs = o.jobs;
  return from_report(verify_ratio_congruence(spec, o.b_max, require_vector(o.n_box, "n-box", spec.dim), sweep));
}

Outcome cmd_verify_plucas(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  return from_report(verify_plucas_at_one(spec, o.p_max, require_vector(o.n_box, "n-box", spec.dim)));
}

Outcome cmd_verify_inter2(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  if (o.b == 0) throw ConfigError("--b must be positive");
  return from_report(verify_inter2_identity(spec, o.b, require_vector(o.n_box, "n-box", spec.dim)));
}

Truncation truncation_from(const Options& o, std::size_t dim) {
  Truncation tr;
  tr.cap = require_vector(o.cap, "cap", dim);
  if (o.total >= 0) tr.total = o.total;
  return tr;
}

Outcome cmd_build_series(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  const TruncatedSeries s = build_F(spec, truncation_from(o, spec.dim));
  Outcome out;
  out.result = Json{{"spec", to_json(spec)}, {"cap", s.truncation().cap}, {"series", to_json(s)}};
  if (s.truncation().total) out.result["total"] = *s.truncation().total;
  for (const auto& [n, c] : s.coeffs()) out.text.push_back(join(n) + ": " + elided(c));
  return out;
}

TruncatedSeries specialized_series(const Options& o, const RatioSpec& spec, std::int64_t order) {
  const IntVector m = require_vector(o.m.empty() ? "1" : o.m, "m", spec.dim);
  const IntVector t = require_vector(o.t.empty() ? "0" : o.t, "t", spec.dim);
  Truncation tr;
  if (!o.cap.empty()) {
    tr = truncation_from(o, spec.dim);
  } else {
    // Smallest region that certifies the requested order.
    std::int64_t min_weight = std::numeric_limits<std::int64_t>::max();
    for (auto w : m) {
      if (w == 0) throw InsufficientTruncation("every component of --m must be positive");
      tr.cap.push_back(order / w);
      min_weight = std::min(min_weight, w);
    }
    tr.total = order / min_weight;
  }
  return specialize(build_F(spec, tr), t, m, order);
}

Outcome cmd_specialize(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  const TruncatedSeries s = specialized_series(o, spec, o.order);
  Outcome out;
  out.result = Json{{"spec", to_json(spec)},
                    {"t", require_vector(o.t.empty() ? "0" : o.t, "t", spec.dim)},
                    {"m", require_vector(o.m.empty() ? "1" : o.m, "m", spec.dim)},
                    {"order", o.order},
                    {"series", to_json(s)}};
  for (const auto& [n, c] : s.coeffs()) out.text.push_back("x^" + std::to_string(n[0]) + ": " + elided(c));
  return out;
}

Outcome cmd_extract_cofactor(const Options& o) {
  const RatioSpec spec = load_spec(o.spec);
  if (o.b == 0) throw ConfigError("--b must be positive");
  require_congruence_hypotheses(spec);
  const TruncatedSeries fq = specialized_series(o, spec, o.order);
  Options at_one = o;
  at_one.t = "0";
  const auto g = specialized_series(at_one, spec, o.order / static_cast<std::int64_t>(o.b)).integers_at_one();
  const auto res = extract_cofactor(fq, g, o.b, o.order);
  Outcome out = from_report(res.report);
  Json cof = Json::array();
  for (const auto& c : res.cofactor) cof.push_back(to_json(c));
  out.result["cofactor"] = std::move(cof);
  for (std::size_t m = 0; m < res.cofactor.size(); ++m) {
    out.text.push_back("B_" + std::to_string(m) + " = " + elided(res.cofactor[m]));
  }
  return out;
}

Outcome cmd_verify_apery(const Options& o) {
  SweepOptions sweep;
  sweep.jobs = o.jobs;
  return from_report(verify_apery(parse_apery_family(o.family), o.t_scalar, o.b_max, o.n_max, sweep));
}

Outcome cmd_verify_ld(const Options& o) {
  TruncatedSeries g;
  if (!o.spec.empty()) {
    const RatioSpec spec = load_spec(o.spec);
    const TruncatedSeries f = build_F(spec, truncation_from(o, spec.dim));
    g = TruncatedSeries(spec.dim, f.truncation());
    for (const auto& [n, c] : f.coeffs()) g.set(n, IntPolynomial::constant(eval_at_one(c)));
  } else {
    if (o.g.empty()) throw ConfigError("verify-ld needs --g or --spec");
    std::vector<Integer> ints;
    for (const auto& r : named_series(o.g, o.order)) {
      if (r.get_den() != 1) throw ConfigError("--g must name an integer series");
      ints.push_back(r.get_num());
    }
    g = TruncatedSeries::from_integers(ints);
  }
  const auto verdict = verify_definition_Ld(g, o.p, o.k);
  Outcome out;
  out.result = to_json(verdict);
  out.passed = verdict.holds;
  out.text.push_back("p = " + std::to_string(o.p) + ", k = " + std::to_string(o.k));
  out.text.push_back(std::string("verified up to the truncation: ") + (verdict.holds ? "true" : "false"));
  out.text.push_back("checked: " + std::to_string(verdict.checked));
  if (verdict.witness) out.text.push_back("first failure at exponent " + join(*verdict.witness));
  return out;
}

Outcome cmd_find_relations(const Options& o) {
  if (o.series.empty()) throw ConfigError("--series is required");
  std::vector<RationalSeries> series;
  std::stringstream ss(o.series);
  std::string name;
  std::vector<std::string> names;
  while (std::getline(ss, name, ',')) {
    names.push_back(name);
    series.push_back(named_series(name, 2 * o.order));
  }
  const auto search = find_relations(series, o.dx, o.dy, o.order);
  Outcome out;
  out.result = to_json(search);
  out.result["series"] = names;
  for (const auto& c : search.candidates) out.passed = out.passed && !c.truncation_artifact;
  out.text.push_back(out.result["verdict"].get<std::string>());
  out.text.push_back("unknowns: " + std::to_string(search.unknowns) + ", rank: " + std::to_string(search.rank));
  for (const auto& c : search.candidates) {
    out.text.push_back("  " + c.to_string() + (c.truncation_artifact ? "  [truncation artifact]" : ""));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  o.jobs = default_jobs();
  CLI::App app{"Exact q-analog congruence and Landau-criterion verifier", "qlucas"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_flag("--json", o.json, "Emit the JSON report instead of text");
  app.add_option("--output,-o", o.output, "Write the report to a file");
  app.add_option("--jobs,-j", o.jobs, "Worker threads (default: $QLUCAS_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from JSON reports");
  app.set_version_flag("--version", std::string(kVersion));

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Outcome(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    handlers[name] = std::move(fn);
    return s;
  };
  auto spec_opt = [&](CLI::App* s) {
    s->add_option("--spec", o.spec, "RatioSpec JSON file, or central[:r], apery-a, apery-b");
  };

  auto* c = sub("cyclotomic", "Print the b-th cyclotomic polynomial", cmd_cyclotomic);
  c->add_option("b", o.index, "Index b >= 1")->required();

  c = sub("qbinom", "Gaussian binomial [n choose k]_q", cmd_qbinom);
  c->add_option("n", o.index)->required();
  c->add_option("k", o.qk)->required();

  c = sub("qratio", "q-factorial ratio Q_{e,f}(q; n)", cmd_qratio);
  spec_opt(c);
  c->add_option("--n", o.n, "Comma-separated n")->required();
  c->add_option("--method", o.method, "direct, cyclotomic or both (default)");

  c = sub("check-landau", "Decide Delta >= 0 and Delta >= 1 on D_{e,f}", cmd_check_landau);
  spec_opt(c);
  c->add_option("--budget", o.budget, "Signature enumeration budget");

  c = sub("verify-congruence", "Sweep Q(q;a+nb) == Q(q;a)Q(1;n) mod phi_b", cmd_verify_congruence);
  spec_opt(c);
  c->add_option("--b-max", o.b_max);
  c->add_option("--n-box", o.n_box, "Componentwise bound on n")->required();

  c = sub("verify-plucas", "Integer p-Lucas congruence at q = 1", cmd_verify_plucas);
  spec_opt(c);
  c->add_option("--p-max", o.p_max);
  c->add_option("--n-box", o.n_box)->required();

  c = sub("verify-inter2", "Check Q(q; nb) == Q(1; n) mod phi_b", cmd_verify_inter2);
  spec_opt(c);
  c->add_option("--b", o.b)->required();
  c->add_option("--n-box", o.n_box)->required();

  c = sub("build-series", "Truncated F_{e,f}(q; x)", cmd_build_series);
  spec_opt(c);
  c->add_option("--cap", o.cap, "Componentwise exponent cap")->required();
  c->add_option("--total", o.total, "Optional total-degree bound");

  c = sub("specialize", "F_{e,f}(q; q^t1 x^m1, ..., q^td x^md)", cmd_specialize);
  spec_opt(c);
  c->add_option("--t", o.t);
  c->add_option("--m", o.m);
  c->add_option("--order", o.order);
  c->add_option("--cap", o.cap, "Source cap (default: the smallest certifying one)");
  c->add_option("--total", o.total);

  c = sub("extract-cofactor", "Cofactor B(q; x) of the specialization congruence", cmd_extract_cofactor);
  spec_opt(c);
  c->add_option("--t", o.t);
  c->add_option("--m", o.m);
  c->add_option("--b", o.b)->required();
  c->add_option("--order", o.order);

  c = sub("verify-apery", "q-Apery congruences", cmd_verify_apery);
  c->add_option("--family", o.family, "a or b");
  c->add_option("--t", o.t_scalar);
  c->add_option("--b-max", o.b_max);
  c->add_option("--n-max", o.n_max);

  c = sub("verify-ld", "Finite p-Lucas property g == A g(x^(p^k)) mod p", cmd_verify_ld);
  spec_opt(c);
  c->add_option("--g", o.g, "central:r, factorial, geometric, apery-a, apery-b");
  c->add_option("--p", o.p);
  c->add_option("--k", o.k);
  c->add_option("--order", o.order);
  c->add_option("--cap", o.cap, "With --spec: cap of F_{e,f}(1; x)");
  c->add_option("--total", o.total);

  c = sub("find-relations", "Exact search for polynomial relations", cmd_find_relations);
  c->add_option("--series", o.series, "Comma-separated: central:r, geometric, factorial, apery-a, qcentral:r@q")
      ->required();
  c->add_option("--dx", o.dx);
  c->add_option("--dy", o.dy);
  c->add_option("--order", o.order);

  std::vector<std::string> effective;
  try {
    std::set<std::string> commands;
    for (const auto& [name, fn] : handlers) commands.insert(name);
    std::vector<std::string> args = expand_config(raw_args, commands);
    effective = args;
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome outcome;
  try {
    outcome = handlers.at(command)(o);
  } catch (const ConfigError& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidSpec& ex) {
    err << "qlucas: invalid spec: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const HypothesisViolated& ex) {
    err << "qlucas: refused: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const NotPrime& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const OrderTooSmall& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const InsufficientTruncation& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const Error& ex) {
    err << "qlucas: " << ex.what() << "\n";
    return kExitVerificationFailed;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "qlucas: cannot write '" << o.output << "'\n";
      return kExitConfigError;
    }
    sink = &file;
  }
  if (o.json) {
    Json report;
    report["command"] = command;
    report["version"] = kVersion;
    // Parallelism and output routing do not change the result.
    Json config = Json::array();
    for (std::size_t i = 0; i < effective.size(); ++i) {
      const auto& a = effective[i];
      if (a == "--jobs" || a == "-j" || a == "--output" || a == "-o") {
        ++i;
      } else if (a.rfind("--jobs=", 0) != 0 && a.rfind("--output=", 0) != 0 && a != "--json" &&
                 a != "--no-timestamp") {
        config.push_back(a);
      }
    }
    report["config"] = std::move(config);
    if (!o.no_timestamp) report["timestamp"] = utc_timestamp();
    report["status"] = outcome.passed ? "ok" : "failed";
    report["result"] = std::move(outcome.result);
    *sink << report.dump(2) << "\n";
  } else {
    for (const auto& line : outcome.text) *sink << line << "\n";
  }
  return outcome.passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace qlucas
