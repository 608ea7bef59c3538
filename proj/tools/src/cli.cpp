#include "driftkit_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "driftkit/chain_io.hpp"
#include "driftkit/error.hpp"
#include "driftkit/expr.hpp"
#include "driftkit/hspec.hpp"
#include "driftkit/montecarlo.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/processes.hpp"
#include "driftkit/rng.hpp"
#include "driftkit/tails.hpp"
#include "driftkit/theorems.hpp"
#include "driftkit_cli/manifest.hpp"
#include "driftkit_cli/suites.hpp"

#ifndef DRIFTKIT_VERSION
#define DRIFTKIT_VERSION "0.0.0"
#endif

namespace driftkit::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kBoundKinds = {
    "additive",           "variable",      "variable-lower",  "nonmonotone",   "multiplicative", "multiplicative-lower",
    "fitness-levels",     "fitness-levels-lower", "tail-general", "tail-corollary", "tail-simplified"};

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParameterError("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    out.push_back(parse_number(std::string_view(s).substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::map<long, double> parse_table(const std::string& s) {
  std::map<long, double> out;
  for (const auto& item : CLI::detail::split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParameterError("table entries are key:value, got '" + item + "'");
    const double k = parse_number(std::string_view(item).substr(0, colon));
    if (k != std::floor(k)) throw ParameterError("table keys must be integers");
    out[static_cast<long>(k)] = parse_number(std::string_view(item).substr(colon + 1));
  }
  return out;
}

json params_json(const ParamList& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

json bound_json(const BoundResult& r) {
  return {{"bound", r.bound},
          {"direction", to_string(r.direction)},
          {"theorem", r.theorem},
          {"params", params_json(r.params)},
          {"status", to_string(r.status)},
          {"details", params_json(r.details)}};
}

json tail_json(const TailResult& r) {
  return {{"probability", r.probability},
          {"log_probability", r.log_probability},
          {"side", to_string(r.side)},
          {"theorem", r.theorem},
          {"form", r.form},
          {"params", params_json(r.params)},
          {"details", params_json(r.details)},
          {"trajectory_dependent", r.trajectory_dependent},
          {"vacuous", r.vacuous}};
}

json stats_json(const EmpiricalStats& st) {
  json q = json::object();
  for (std::size_t i = 0; i < st.quantiles.size(); ++i) q["p" + std::to_string(kQuantileLevels[i])] = st.quantiles[i];
  json hist = json::array();
  for (const auto& b : st.histogram) hist.push_back({b.lo, b.count});
  return {{"trials", st.trials},
          {"mean", st.mean},
          {"variance", st.variance},
          {"standard_error", st.standard_error},
          {"quantiles", q},
          {"bucket_width", st.bucket_width},
          {"histogram", hist},
          {"capped", st.capped},
          {"moments_valid", st.moments_valid},
          {"step_cap", st.step_cap},
          {"master_seed", st.master_seed},
          {"generator", st.generator}};
}

// Options shared by every subcommand.
struct Common {
  unsigned workers = 0;
  std::string spec_file;
  std::vector<InputDigest> inputs;
};

struct BoundArgs {
  std::string kind;
  std::optional<double> x0, xmin, xmax, n, delta, beta, chi, lambda, a, t, D;
  std::string h, h_table, c, p, u, gamma, start_weights, side = "upper", item = "growing", direction = "upper", chain;
  int start_level = 1;
  bool absorbing = false, assume_monotone = false;
};

struct OracleArgs {
  std::string process = "onemax", file, csv, method = "auto";
  int n = 0;
  std::optional<int> a;
  std::optional<long> start;
  std::optional<long> tail;
  bool lumped = false;
};

struct SimArgs {
  std::string process = "onemax", file, csv, weights;
  int n = 0;
  std::optional<int> a;
  std::optional<long> start;
  std::optional<int> start_distance;
  std::optional<std::uint64_t> weights_seed;
  std::uint64_t trials = 1000, seed = 1, cap = 0, bucket = 0;
};

struct VerifyArgs {
  std::string suite;
  int n = 0;
  int a = -1;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::size_t chains = 50, max_states = 40;
};

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out) : args_(args), out_(out) {}

  int bound(const BoundArgs& b);
  int oracle(const OracleArgs& o);
  int simulate(const SimArgs& s);
  int verify(const VerifyArgs& v);

  Common common;

 private:
  RunManifest manifest(std::optional<std::uint64_t> seed, bool with_generator) const;
  void emit(json body, std::optional<std::uint64_t> seed = std::nullopt, bool with_generator = false);
  void write_csv(const std::string& path, const std::string& body, const RunManifest& m);
  std::string track_input(const std::string& path);
  unsigned workers() const;

  std::vector<std::string> args_;
  std::ostream& out_;
};

std::string Runner::track_input(const std::string& path) {
  common.inputs.push_back({path, sha256_file(path)});
  return path;
}

unsigned Runner::workers() const {
  if (common.workers > 0) return common.workers;
  if (const char* env = std::getenv("DRIFTKIT_WORKERS"); env && *env) {
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw ParameterError("DRIFTKIT_WORKERS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

RunManifest Runner::manifest(std::optional<std::uint64_t> seed, bool with_generator) const {
  RunManifest m;
  m.command = strip_worker_flags(args_);
  m.inputs = common.inputs;
  m.version = DRIFTKIT_VERSION;
  m.seed = seed;
  if (with_generator) m.generator = kGeneratorId;
  m.timestamp = run_timestamp();
  return m;
}

void Runner::emit(json body, std::optional<std::uint64_t> seed, bool with_generator) {
  body["manifest"] = to_json(manifest(seed, with_generator));
  out_ << body.dump(2) << '\n';
}

void Runner::write_csv(const std::string& path, const std::string& body, const RunManifest& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write '" + path + "'");
  f << body;
  std::ofstream mf(path + ".manifest.json", std::ios::binary);
  if (!mf) throw ParameterError("cannot write '" + path + ".manifest.json'");
  mf << to_json(m).dump(2) << '\n';
}

// h from --h-table, --h or (for kinds with a constant rate) --delta.
HSpec make_h(const BoundArgs& b, bool allow_constant) {
  const double xmin = b.xmin.value_or(1.0);
  double xmax = b.xmax.value_or(std::max({xmin, b.x0.value_or(xmin), b.n.value_or(0.0)}));
  if (!b.h_table.empty()) return HSpec::table(parse_table(b.h_table), xmin, xmax);
  if (!b.h.empty()) return HSpec::expression(Expr::parse(b.h), b.n.value_or(0.0), xmin, xmax);
  if (allow_constant && b.delta) return HSpec::constant(*b.delta, xmin, xmax);
  throw ParameterError("need --h or --h-table" + std::string(allow_constant ? " or --delta" : ""));
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw ParameterError(std::string("missing ") + flag);
  return *v;
}

json fitness_bound(const BoundArgs& b, const MarkovChain* cp) {
  FitnessPartition fp;
  if (b.kind == "fitness-levels") {
    if (b.p.empty()) throw ParameterError("missing --p");
    fp.p = parse_list(b.p);
    fp.m = static_cast<int>(fp.p.size()) + 1;
    return bound_json(fitness_levels_upper(fp, b.start_level, cp));
  }
  if (b.u.empty()) throw ParameterError("missing --u");
  {
    fp.u = parse_list(b.u);
    fp.m = static_cast<int>(fp.u.size()) + 1;
    const auto levels = fp.u.size();
    fp.gamma.assign(levels, std::vector<double>(static_cast<std::size_t>(fp.m), 0.0));
    if (b.gamma.empty()) {
      for (std::size_t i = 0; i < levels; ++i) fp.gamma[i][i + 1] = 1.0;
    } else {
      const auto rows = CLI::detail::split(b.gamma, ';');
      if (rows.size() != levels) throw ParameterError("--gamma needs m-1 rows separated by ';'");
      for (std::size_t i = 0; i < levels; ++i) {
        const auto vals = parse_list(rows[i]);
        if (vals.size() != static_cast<std::size_t>(fp.m)) throw ParameterError("--gamma rows need m entries");
        fp.gamma[i] = vals;
      }
    }
    if (b.start_weights.empty()) {
      fp.start.assign(levels, 0.0);
      fp.start[static_cast<std::size_t>(std::clamp(b.start_level, 1, static_cast<int>(levels)) - 1)] = 1.0;
    } else {
      fp.start = parse_list(b.start_weights);
    }
    fp.chi = b.chi ? *b.chi : max_feasible_chi(fp);
    return bound_json(fitness_levels_lower(fp, cp));
  }
}

json tail_bound(const BoundArgs& b) {
  const double x0 = need(b.x0, "--x0");
  const bool simplified = b.kind == "tail-simplified";
  if (simplified && b.h.empty() && b.h_table.empty()) throw ParameterError("missing --h or --h-table");
  const HSpec h = make_h(b, !simplified);
  const double lambda = need(b.lambda, "--lambda");
  if (b.side != "upper" && b.side != "lower") throw ParameterError("--side is upper or lower");
  const TailSide side = b.side == "upper" ? TailSide::Upper : TailSide::Lower;
  if (b.kind == "tail-general") {
    const PotentialFunction g(h);
    const double t = need(b.t, "--t");
    if (t < 1.0 || t != std::floor(t)) throw ParameterError("--t must be a positive integer");
    TailParams p{lambda, need(b.beta, "--beta"), b.a.value_or(0.0), static_cast<long>(t), b.absorbing};
    return tail_json(side == TailSide::Upper ? general_tail_upper(g, p, x0) : general_tail_lower(g, p, x0));
  }
  if (b.kind == "tail-corollary") {
    CorollaryItem item;
    if (b.item == "growing") {
      item = CorollaryItem::GrowingH;
    } else if (b.item == "shrinking") {
      item = CorollaryItem::ShrinkingH;
    } else {
      throw ParameterError("--item is growing or shrinking");
    }
    return tail_json(corollary_bounds(h, lambda, x0, need(b.t, "--t"), item));
  }
  const SimplifiedTailParams sp{need(b.D, "--D"), lambda, need(b.delta, "--delta")};
  return tail_json(simplified_tail(h, sp, x0, need(b.t, "--t"), side, b.absorbing));
}

int Runner::bound(const BoundArgs& b) {
  std::optional<MarkovChain> chain;
  if (!b.chain.empty()) chain = read_chain_file(track_input(b.chain));
  const MarkovChain* cp = chain ? &*chain : nullptr;
  json body = {{"command", "bound"}, {"kind", b.kind}};
  const auto& k = b.kind;
  if (k == "fitness-levels" || k == "fitness-levels-lower") {
    body["result"] = fitness_bound(b, cp);
    emit(body);
    return kExitOk;
  }
  if (k.rfind("tail-", 0) == 0) {
    body["result"] = tail_bound(b);
    emit(body);
    return kExitOk;
  }
  const double x0 = need(b.x0, "--x0");
  if (k == "additive") {
    const double delta = need(b.delta, "--delta");
    if (b.direction != "upper" && b.direction != "lower") throw ParameterError("--direction is upper or lower");
    body["result"] = bound_json(b.direction == "upper" ? additive_upper(delta, x0, cp) : additive_lower(delta, x0, cp));
  } else if (k == "variable") {
    body["result"] = bound_json(variable_upper(make_h(b, true), x0, cp, b.assume_monotone));
  } else if (k == "variable-lower") {
    if (b.c.empty()) throw ParameterError("missing --c (expression for c(x))");
    const Expr c = Expr::parse(b.c);
    const double n = b.n.value_or(0.0);
    body["result"] = bound_json(
        variable_lower(make_h(b, true), [c, n](double x) { return c.evaluate(x, n); }, x0, cp, b.assume_monotone));
  } else if (k == "nonmonotone") {
    if (b.c.empty()) throw ParameterError("missing --c");
    body["result"] = bound_json(nonmonotone_variable_upper(make_h(b, true), parse_number(b.c), x0, cp));
  } else if (k == "multiplicative") {
    body["result"] = bound_json(multiplicative_upper(need(b.delta, "--delta"), b.xmin.value_or(1.0), x0, cp));
  } else if (k == "multiplicative-lower") {
    body["result"] = bound_json(
        multiplicative_lower(need(b.delta, "--delta"), need(b.beta, "--beta"), b.xmin.value_or(1.0), x0, cp));
  } else {
    throw ParameterError("unknown bound kind '" + k + "'");
  }
  emit(body);
  return kExitOk;
}

SolveMethod parse_method(const std::string& m) {
  if (m == "auto") return SolveMethod::Auto;
  if (m == "back") return SolveMethod::BackSubstitution;
  if (m == "dense") return SolveMethod::Dense;
  throw ParameterError("--method is auto, back or dense");
}

std::string survival_csv(const SurvivalCurve& c) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "t,P(T>=t)\n";
  for (std::size_t t = 0; t < c.survival.size(); ++t) os << t << ',' << c.survival[t] << '\n';
  return os.str();
}

int Runner::oracle(const OracleArgs& o) {
  std::shared_ptr<MarkovChain> chain;
  std::vector<double> start;
  json body = {{"command", "oracle"}, {"process", o.process}};
  if (o.process == "onemax") {
    if (o.n < 1) throw ParameterError("missing --n");
    chain = std::make_shared<MarkovChain>(build_onemax_chain(o.n, o.a.value_or(0)));
    start = o.start ? point_start(*chain, static_cast<std::size_t>(*o.start)) : binomial_start(o.n);
    body["n"] = o.n;
    body["a"] = o.a.value_or(0);
    if (o.n >= 2) {
      const auto br = onemax_expected_bounds(o.n);
      body["predicted"] = {{"lower", br.lower}, {"upper", br.upper}};
    }
  } else if (o.process == "leadingones") {
    if (o.n < 1) throw ParameterError("missing --n");
    const int a = o.a.value_or(o.n);
    if (o.lumped) {
      chain = std::make_shared<MarkovChain>(build_leadingones_level_chain(o.n, a));
      start = o.start ? point_start(*chain, static_cast<std::size_t>(*o.start)) : leadingones_level_start(o.n);
    } else {
      chain = std::make_shared<MarkovChain>(build_leadingones_chain(o.n, a));
      start = o.start ? point_start(*chain, static_cast<std::size_t>(*o.start)) : uniform_bitstring_start(o.n);
    }
    body["n"] = o.n;
    body["a"] = a;
    body["lumped"] = o.lumped;
    if (o.n >= 2) body["closed_form"] = leadingones_expected(o.n, a);
  } else if (o.process == "chain") {
    if (o.file.empty()) throw ParameterError("missing --file");
    chain = std::make_shared<MarkovChain>(read_chain_file(track_input(o.file)));
    if (!o.start) throw ParameterError("missing --start (state index)");
    start = point_start(*chain, static_cast<std::size_t>(*o.start));
  } else {
    throw ParameterError("--process is onemax, leadingones or chain");
  }
  if (o.start) {
    if (*o.start < 0 || static_cast<std::size_t>(*o.start) >= chain->size()) throw ParameterError("--start out of range");
    body["start"] = *o.start;
  } else {
    body["start"] = "default-distribution";
  }
  body["states"] = chain->size();
  body["monotone"] = chain->is_monotone();
  body["expectation"] = exact_expectation(*chain, start, parse_method(o.method));
  if (o.tail) {
    if (*o.tail < 0) throw ParameterError("--tail must be non-negative");
    const SurvivalCurve curve = exact_tail(*chain, start, static_cast<std::size_t>(*o.tail));
    json tail = {{"t_max", *o.tail}, {"truncated", curve.truncated}};
    if (!o.csv.empty()) {
      write_csv(o.csv, survival_csv(curve), manifest(std::nullopt, false));
      tail["csv"] = o.csv;
    } else {
      tail["survival"] = curve.survival;
    }
    body["tail"] = tail;
  }
  emit(body);
  return kExitOk;
}

int Runner::simulate(const SimArgs& s) {
  ProcessSpec spec;
  json body = {{"command", "simulate"}, {"process", s.process}};
  if (s.process == "onemax") {
    spec = ProcessSpec::onemax(s.n);
    spec.a = s.a.value_or(0);
  } else if (s.process == "leadingones") {
    spec = ProcessSpec::leadingones(s.n, s.a.value_or(s.n));
  } else if (s.process == "linear") {
    std::vector<double> w;
    if (!s.weights.empty()) {
      w = parse_list(s.weights);
    } else if (s.weights_seed) {
      if (s.n < 1) throw ParameterError("missing --n");
      Rng rng(*s.weights_seed);
      for (int i = 0; i < s.n; ++i) w.push_back(1.0 + rng.uniform01());
    } else {
      throw ParameterError("linear needs --weights or --weights-seed with --n");
    }
    spec = ProcessSpec::linear(std::move(w));
    spec.a = s.a.value_or(0);
    body["weights"] = spec.weights;
  } else if (s.process == "chain") {
    if (s.file.empty()) throw ParameterError("missing --file");
    auto chain = std::make_shared<const MarkovChain>(read_chain_file(track_input(s.file)));
    std::size_t st = chain->size() - 1;
    if (s.start) {
      if (*s.start < 0 || static_cast<std::size_t>(*s.start) >= chain->size()) throw ParameterError("--start out of range");
      st = static_cast<std::size_t>(*s.start);
    }
    spec = ProcessSpec::explicit_chain(chain, point_start(*chain, st));
    body["start"] = st;
  } else {
    throw ParameterError("--process is onemax, linear, leadingones or chain");
  }
  if (s.start_distance) spec.with_fixed_distance(*s.start_distance);
  spec.validate();
  if (spec.family != Family::ExplicitChain) {
    body["n"] = spec.n;
    body["a"] = spec.a;
  }
  const EmpiricalStats st = run_trials(spec, {s.trials, s.seed, s.cap, workers(), s.bucket});
  body["stats"] = stats_json(st);
  if (!s.csv.empty()) {
    std::ostringstream os;
    write_trials_csv(os, st);
    write_csv(s.csv, os.str(), manifest(s.seed, true));
    body["csv"] = s.csv;
  }
  emit(body, s.seed, true);
  return kExitOk;
}

int Runner::verify(const VerifyArgs& v) {
  SuiteOptions o;
  o.suite = v.suite;
  o.n = v.n;
  o.a = v.a;
  o.trials = v.trials.value_or(0);
  o.trials_set = v.trials.has_value();
  o.seed = v.seed;
  o.chains = v.chains;
  o.max_states = v.max_states;
  o.workers = workers();
  SuiteOutcome res = run_suite(o);
  json body = {{"command", "verify"}, {"suite", v.suite}, {"report", res.report},
               {"verdict", res.violation ? "violation" : "pass"}};
  emit(body, v.seed, true);
  return res.violation ? kExitViolation : kExitOk;
}

// Expands --spec FILE into flags: "theorem" (bound kind) or "process"
// becomes the subcommand argument, the drift/params/process objects become
// --key value pairs.
std::vector<std::string> expand_spec(const std::vector<std::string>& args, std::vector<InputDigest>& inputs) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--spec" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--spec=", 0) == 0) {
      path = args[i].substr(7);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open spec file '" + path + "'");
    json spec;
    try {
      spec = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ParseError("spec file '" + path + "': " + e.what(), e.byte);
    }
    inputs.push_back({path, sha256_file(path)});
    if (!spec.is_object()) throw ParameterError("spec file must hold an object");
    auto flag_value = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ",") + e.dump();
        return s;
      }
      return v.dump();
    };
    if (spec.contains("theorem")) out.push_back(spec["theorem"].get<std::string>());
    for (const char* section : {"process", "drift", "params"}) {
      if (!spec.contains(section)) continue;
      const json& sec = spec[section];
      if (sec.is_string()) {
        out.push_back("--" + std::string(section));
        out.push_back(sec.get<std::string>());
        continue;
      }
      for (const auto& [key, value] : sec.items()) {
        const std::string flag = key == "family" ? "process" : key;
        if (value.is_boolean()) {
          if (value.get<bool>()) out.push_back("--" + flag);
          continue;
        }
        out.push_back("--" + flag);
        out.push_back(flag_value(value));
      }
    }
    for (const auto& [key, value] : spec.items()) {
      if (key != "theorem" && key != "process" && key != "drift" && key != "params") {
        throw ParameterError("unknown top-level key '" + key + "' in spec file");
      }
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(args, out);
  CLI::App app{"driftkit: drift-theorem bounds, exact oracles and Monte Carlo checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DRIFTKIT_VERSION);

  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", runner.common.workers, "Worker threads (default: DRIFTKIT_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  BoundArgs b;
  auto* bound = app.add_subcommand("bound", "Evaluate a drift theorem");
  bound->set_help_flag("--help", "Print this help message and exit");
  bound->add_option("kind", b.kind, "Theorem")->required()->check(CLI::IsMember(kBoundKinds));
  bound->add_option("--x0", b.x0, "Start value X0");
  bound->add_option("--xmin", b.xmin, "Smallest non-zero state (default 1)");
  bound->add_option("--xmax", b.xmax, "Largest state (default max(X0, n))");
  bound->add_option("--n", b.n, "Value of n inside --h expressions");
  bound->add_option("--h", b.h, "Drift bound h(x) as an expression in x and n");
  bound->add_option("--h-table", b.h_table, "Integer table k:h(k),...");
  bound->add_option("--delta", b.delta, "Additive/multiplicative drift rate or simplified-tail delta");
  bound->add_option("--beta", b.beta, "mgf bound (tail-general) or jump parameter (multiplicative-lower)");
  bound->add_option("--c", b.c, "c for nonmonotone, c(x) expression for variable-lower");
  bound->add_option("--p", b.p, "Fitness-level success probabilities p_1,...,p_{m-1}");
  bound->add_option("--u", b.u, "Fitness-level upper leave probabilities");
  bound->add_option("--gamma", b.gamma, "gamma rows separated by ';', m entries each");
  bound->add_option("--chi", b.chi, "chi (default: largest feasible)");
  bound->add_option("--start-level", b.start_level, "Start level (default 1)");
  bound->add_option("--start-weights", b.start_weights, "Start distribution over levels 1..m-1");
  bound->add_option("--lambda", b.lambda, "mgf parameter lambda");
  bound->add_option("--a", b.a, "Target threshold a (default 0)");
  bound->add_option("--t", b.t, "Horizon t*");
  bound->add_option("--D", b.D, "E(exp(lambda Z)) for tail-simplified");
  bound->add_option("--side", b.side, "upper or lower");
  bound->add_option("--item", b.item, "Corollary variant: growing (h' >= lambda) or shrinking (h' <= -lambda)");
  bound->add_option("--direction", b.direction, "additive: upper or lower");
  bound->add_option("--chain", b.chain, "Chain file; preconditions are then verified exactly");
  bound->add_flag("--absorbing", b.absorbing, "Target set is absorbing");
  bound->add_flag("--assume-monotone", b.assume_monotone, "Skip the sampled monotonicity check of h");

  OracleArgs o;
  auto* oracle = app.add_subcommand("oracle", "Exact expectation and tail of a finite chain");
  oracle->add_option("--process", o.process, "onemax, leadingones or chain");
  oracle->add_option("--n", o.n, "Bit length");
  oracle->add_option("--a", o.a, "Target threshold");
  oracle->add_option("--start", o.start, "Start state index (default: random initialization)");
  oracle->add_option("--file", o.file, "Chain file for --process chain");
  oracle->add_option("--tail", o.tail, "Also compute P(T >= t) for t = 0..T");
  oracle->add_option("--csv", o.csv, "Write the tail table here");
  oracle->add_option("--method", o.method, "auto, back or dense");
  oracle->add_flag("--lumped", o.lumped, "LeadingOnes: use the chain lumped by LO value");
  add_workers(oracle);

  SimArgs s;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo hitting times");
  sim->add_option("--process", s.process, "onemax, linear, leadingones or chain");
  sim->add_option("--n", s.n, "Bit length");
  sim->add_option("--a", s.a, "Target threshold");
  sim->add_option("--weights", s.weights, "Linear weights w_1,...,w_n");
  sim->add_option("--weights-seed", s.weights_seed, "Draw linear weights uniformly from [1, 2)");
  sim->add_option("--file", s.file, "Chain file for --process chain");
  sim->add_option("--start", s.start, "Chain start state index (default: last state)");
  sim->add_option("--start-distance", s.start_distance, "Fixed start distance instead of uniform bits");
  sim->add_option("--trials", s.trials, "Number of trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", s.seed, "Master seed");
  sim->add_option("--cap", s.cap, "Step cap per trial (default 100 e n ln n)");
  sim->add_option("--bucket", s.bucket, "Histogram bucket width");
  sim->add_option("--csv", s.csv, "Write trial,T,capped rows here");
  add_workers(sim);

  VerifyArgs v;
  auto* ver = app.add_subcommand("verify", "Run a claim suite");
  ver->add_option("--suite", v.suite, "Suite")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--n", v.n, "Problem size");
  ver->add_option("--a", v.a, "Target threshold");
  ver->add_option("--trials", v.trials, "Monte Carlo trials");
  ver->add_option("--seed", v.seed, "Master seed");
  ver->add_option("--chains", v.chains, "Chains in the soundness sweep")->check(CLI::PositiveNumber);
  ver->add_option("--max-states", v.max_states, "Largest sweep chain")->check(CLI::Range(3, 100000));
  add_workers(ver);

  try {
    std::vector<std::string> expanded = expand_spec(args, runner.common.inputs);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << DRIFTKIT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto failure = [&](const char* type, const std::string& msg, int code, json extra = json::object()) {
    json j = {{"error", {{"type", type}, {"message", msg}}}};
    for (auto& [k, val] : extra.items()) j["error"][k] = val;
    out << j.dump(2) << '\n';
    err << "error: " << msg << '\n';
    return code;
  };

  try {
    if (bound->parsed()) return runner.bound(b);
    if (oracle->parsed()) return runner.oracle(o);
    if (sim->parsed()) return runner.simulate(s);
    if (ver->parsed()) return runner.verify(v);
  } catch (const PreconditionError& e) {
    return failure("precondition", e.what(), kExitRejected, {{"witness", e.witness()}});
  } catch (const ConvergenceError& e) {
    return failure("convergence", e.what(), kExitRejected, {{"estimate", e.estimate()}});
  } catch (const DomainError& e) {
    return failure("domain", e.what(), kExitRejected);
  } catch (const CapacityError& e) {
    return failure("capacity", e.what(), kExitRejected);
  } catch (const EstimationError& e) {
    return failure("estimation", e.what(), kExitRejected);
  } catch (const ParseError& e) {
    return failure("parse", e.what(), kExitUsage, {{"position", e.position()}});
  } catch (const StructuralError& e) {
    return failure("structural", e.what(), kExitUsage);
  } catch (const ParameterError& e) {
    return failure("parameter", e.what(), kExitUsage);
  } catch (const Error& e) {
    return failure("error", e.what(), kExitUsage);
  }
  return kExitUsage;
}

}  // namespace driftkit::cli
