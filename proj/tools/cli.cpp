#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "distspec/asymptotic.hpp"
#include "distspec/bounds.hpp"
#include "distspec/exact_oracle.hpp"
#include "distspec/greedy_cover.hpp"
#include "distspec/io.hpp"
#include "distspec/spectrum_qp.hpp"
#include "distspec/zero_error.hpp"
#include "reproduce.hpp"
#include "serialize.hpp"

#ifndef DISTSPEC_VERSION
#define DISTSPEC_VERSION "0.0.0"
#endif

namespace distspec::cli {

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

namespace {

struct Args {
  std::string problem, channel, dist, out_dir, which, case_name, rule = "min";
  bool pretty = false, compact = false, witness = false, bits = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  std::size_t restarts = 32;
  std::size_t nmax = 2;
  std::optional<int> n;
  int q = 2;
  int resolution = 4096;
  std::optional<std::string> d, delta, a;
  std::optional<std::size_t> grid;
  std::size_t sub_grid = 0;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

/// Collects the contents of every input file; the digest is taken over them.
struct Inputs {
  std::vector<std::string> contents;
  const std::string& add(const std::string& path) {
    contents.push_back(read_file(path));
    return contents.back();
  }
};

SearchConfig search_config(const Args& a) {
  SearchConfig cfg;
  cfg.node_budget = a.budget;
  return cfg;
}

QpConfig qp_config(const Args& a) {
  QpConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  cfg.certify_budget = std::min<std::uint64_t>(cfg.certify_budget, a.budget);
  return cfg;
}

json run_exact(const Args& a, Inputs& in) {
  const auto problem = parse_problem(std::string_view(in.add(a.problem)));
  const auto conf = ConfusabilityMatrix::build(problem.space, problem.d);
  auto cfg = search_config(a);
  cfg.report_witness = a.witness;
  const auto symmetry = search_symmetry(problem.space);
  const auto r = max_distance_code(conf, cfg, symmetry ? &*symmetry : nullptr);
  json j{{"size", r.code.size()}, {"certified", r.certified}, {"nodes", r.nodes}};
  if (a.witness) j["witness"] = to_json(r.code, &problem.space.space());
  if (conf.warning_count()) j["boundary_warnings"] = conf.warning_count();
  return j;
}

json run_qp(const Args& a, Inputs& in) {
  const auto problem = parse_problem(std::string_view(in.add(a.problem)));
  const auto conf = ConfusabilityMatrix::build(problem.space, problem.d);
  return to_json(minimize_spectrum(conf, qp_config(a)));
}

json run_verify(const Args& a, Inputs& in) {
  const auto problem = parse_problem(std::string_view(in.add(a.problem)));
  return to_json(verify_theorem1(problem.space, problem.d, qp_config(a), search_config(a)));
}

json run_greedy(const Args& a, Inputs& in) {
  const auto problem = parse_problem(std::string_view(in.add(a.problem)));
  const auto conf = ConfusabilityMatrix::build(problem.space, problem.d);
  const std::size_t n = problem.space.size();
  const SimplexPoint p = a.dist.empty() || a.dist == "uniform"
                             ? SimplexPoint::uniform(n)
                             : parse_simplex_point(parse_json(in.add(a.dist)), n);
  const auto rule = a.rule == "max" ? CenterRule::MaxNewMass : CenterRule::MinNewMass;
  const auto g = greedy_code(p, conf, rule);
  const auto ud = ud_bound(p, conf);
  return {{"code", to_json(g.code, &problem.space.space())},
          {"trace", to_json(g.trace, &problem.space.space())},
          {"certificate", to_json(cover_certificate(g.trace, p, conf))},
          {"ud_bound", ud.unbounded ? json("inf") : number(ud.value)}};
}

json run_gv(const Args& a) {
  const int d = static_cast<int>(Threshold::parse(need(a.d, "--d")).ceil());
  return to_json(gv_bound(need(a.n, "--n"), d, a.q));
}

json run_example(const Args& a) {
  const auto d = Threshold::parse(need(a.d, "--d"));
  json j{{"which", std::stoi(a.which)}, {"d", d.to_string()}};
  if (a.which == "1") {
    const auto r = example1_ud_bound(d.value(), a.resolution);
    BoundReport b{"L_uniform", r.value, BoundKind::Lower,
                  {{"d", d.to_string()}, {"resolution", std::to_string(a.resolution)}}, std::nullopt, {}};
    auto bj = to_json(b);
    bj["probability"] = number(r.probability);
    bj["error_estimate"] = number(r.error_estimate);
    j["bounds"] = json::array({std::move(bj)});
  } else if (a.which == "2") {
    json bounds = json::array();
    for (const auto& b : example2_bounds(d)) bounds.push_back(to_json(b));
    j["bounds"] = std::move(bounds);
    if (a.grid) j["grid_optimum"] = to_json(example2_grid_optimum(d, *a.grid, search_config(a), a.sub_grid));
  } else {
    const int n = need(a.n, "--n");
    const auto params = std::map<std::string, std::string>{{"n", std::to_string(n)}, {"d", d.to_string()}};
    const auto exact = example3_exact(n, d);
    const auto upper = example3_upper(n, d);
    j["bounds"] = json::array({to_json(example3_gv(n, d)),
                               to_json(BoundReport{"example3_exact", static_cast<double>(exact), BoundKind::Exact,
                                                   params, std::to_string(exact), {}}),
                               to_json(BoundReport{"example3_upper", static_cast<double>(upper), BoundKind::Upper,
                                                   params, std::to_string(upper), {}})});
  }
  return j;
}

json run_zero_error(const Args& a, Inputs& in) {
  const auto ch = ChannelModel::parse_csv(in.add(a.channel));
  return to_json(zero_error_lower_bound(ch, a.nmax, search_config(a), qp_config(a)), a.bits);
}

DistanceDistribution load_dist(const Args& a, Inputs& in) {
  return parse_distance_distribution(parse_json(in.add(a.dist)));
}

json run_rate_fn(const Args& a, Inputs& in) {
  const auto dist = load_dist(a, in);
  const double x = Threshold::parse(need(a.a, "--a")).value();
  return {{"a", number(x)}, {"I", number(rate_function_I(dist, x))}, {"mean", number(dist.mean())}};
}

json run_j(const Args& a, Inputs& in) {
  const auto dist = load_dist(a, in);
  const double delta = Threshold::parse(need(a.delta, "--delta")).value();
  return {{"delta", number(delta)}, {"J", number(J_function(dist, delta))}, {"mean", number(dist.mean())}};
}

json run_second_order(const Args& a, Inputs& in) {
  const auto dist = load_dist(a, in);
  const double delta = Threshold::parse(need(a.delta, "--delta")).value();
  const int n = need(a.n, "--n");
  if (n < 1) throw InvalidArgument("--n must be positive");
  return to_json(second_order_upper(dist, delta, static_cast<std::size_t>(n)));
}

json run_corollary2(const Args& a) {
  const double delta = Threshold::parse(need(a.delta, "--delta")).value();
  return {{"delta", number(delta)}, {"q", a.q}, {"value", number(corollary2_bound(delta, a.q))}};
}

json run_reproduce(const Args& a, Inputs& in) {
  ReproduceOptions opt;
  opt.n = a.n;
  opt.d = a.d;
  opt.delta = a.delta;
  opt.grid = a.grid;
  opt.sub_grid = a.sub_grid;
  opt.resolution = a.resolution;
  opt.seed = a.seed;
  opt.budget = a.budget;
  if (!a.dist.empty()) opt.dist_text = in.add(a.dist);
  json j = reproduce(a.case_name, opt);
  j["case"] = a.case_name;
  return j;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& x : args) {
    if (!s.empty()) s += ' ';
    s += x;
  }
  return s;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Maximum code sizes under a minimum-distance constraint", "distspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DISTSPEC_VERSION);
  app.add_option("--seed", a.seed, "Seed for all randomness");
  app.add_option("--budget", a.budget, "Node budget for the exact search");
  app.add_option("--out", a.out_dir, "Also write the run record to DIR/<digest>.json");
  auto* pretty = app.add_flag("--pretty", a.pretty, "Indented JSON output");
  app.add_flag("--json", a.compact, "Compact JSON output (default)")->excludes(pretty);

  const auto problem_opt = [&](CLI::App* sub) {
    sub->add_option("--problem", a.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  };

  auto* exact = app.add_subcommand("exact", "Exact M* by branch and bound");
  problem_opt(exact);
  exact->add_flag("--witness", a.witness, "Report the lexicographically least optimal code");

  auto* qp = app.add_subcommand("qp", "Minimise the distance spectrum");
  problem_opt(qp);
  qp->add_option("--restarts", a.restarts, "Number of starts")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Compare the spectrum minimum with 1/M*");
  problem_opt(verify);
  verify->add_option("--restarts", a.restarts, "Number of starts")->check(CLI::PositiveNumber);

  auto* greedy = app.add_subcommand("greedy", "Greedy covering construction");
  problem_opt(greedy);
  greedy->add_option("--dist", a.dist, "'uniform' or a distribution JSON file");
  greedy->add_option("--rule", a.rule, "Center rule")->check(CLI::IsMember({"min", "max"}));

  auto* gv = app.add_subcommand("gv", "Gilbert-Varshamov bound for the Hamming distance");
  gv->add_option("--n", a.n, "Block length")->required();
  gv->add_option("--d", a.d, "Minimum distance")->required();
  gv->add_option("--q", a.q, "Alphabet size")->check(CLI::Range(2, 1 << 20));

  auto* example = app.add_subcommand("example", "Bounds for the unit-square, circular-square and binary-representation distances");
  example->add_option("--which", a.which, "Example number")->required()->check(CLI::IsMember({"1", "2", "3"}));
  example->add_option("--d", a.d, "Threshold")->required();
  example->add_option("--n", a.n, "Block length (binary-representation bounds)");
  example->add_option("--resolution", a.resolution, "Quadrature cells (unit-square bound)")->check(CLI::PositiveNumber);
  example->add_option("--grid", a.grid, "Also solve on an m x m circular grid");
  example->add_option("--sub-grid", a.sub_grid, "Divisor grid to lift from");

  auto* zero = app.add_subcommand("zero-error", "Zero-error capacity lower bounds");
  zero->add_option("--channel", a.channel, "Channel CSV")->required()->check(CLI::ExistingFile);
  zero->add_option("--nmax", a.nmax, "Largest block length")->required()->check(CLI::PositiveNumber);
  zero->add_flag("--bits", a.bits, "Report rates in bits");

  auto* asym = app.add_subcommand("asymptotic", "Large-deviation rate quantities");
  asym->require_subcommand(1);
  const auto dist_opt = [&](CLI::App* sub) {
    sub->add_option("--dist", a.dist, "Distance distribution JSON")->required()->check(CLI::ExistingFile);
  };
  auto* rate_fn = asym->add_subcommand("rate-fn", "Rate function I(a)");
  dist_opt(rate_fn);
  rate_fn->add_option("--a", a.a, "Argument")->required();
  auto* jfun = asym->add_subcommand("j", "J(delta)");
  dist_opt(jfun);
  jfun->add_option("--delta", a.delta, "Normalised threshold")->required();
  auto* second = asym->add_subcommand("second-order", "Second-order upper bound");
  dist_opt(second);
  second->add_option("--delta", a.delta, "Normalised threshold")->required();
  second->add_option("--n", a.n, "Block length")->required();
  auto* cor2 = asym->add_subcommand("corollary2", "Hamming-distance exponent D(delta || (q-1)/q)");
  cor2->add_option("--delta", a.delta, "Normalised threshold")->required();
  cor2->add_option("--q", a.q, "Alphabet size")->check(CLI::Range(2, 1 << 20));

  auto* repro = app.add_subcommand("reproduce", "Re-run a reference computation with pass/fail checks");
  repro->add_option("--case", a.case_name, "Case name")->required()->check(CLI::IsMember(reproduce_cases()));
  repro->add_option("--n", a.n, "Block length");
  repro->add_option("--d", a.d, "Threshold");
  repro->add_option("--delta", a.delta, "Normalised threshold");
  repro->add_option("--grid", a.grid, "Grid resolution");
  repro->add_option("--sub-grid", a.sub_grid, "Divisor grid to lift from");
  repro->add_option("--resolution", a.resolution, "Quadrature cells")->check(CLI::PositiveNumber);
  repro->add_option("--dist", a.dist, "Distance distribution JSON")->check(CLI::ExistingFile);

  for (auto* sub : {exact, qp, verify, greedy, gv, example, zero, asym, repro}) sub->fallthrough();
  for (auto* sub : {rate_fn, jfun, second, cor2}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (greedy->parsed() && !a.dist.empty() && a.dist != "uniform" && !std::filesystem::is_regular_file(a.dist)) {
    err << "--dist: file does not exist: " << a.dist << "\n";
    return 2;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
  }

  Inputs inputs;
  json record{{"command", "distspec " + join(args)}, {"version", DISTSPEC_VERSION}};
  int status = 0;
  try {
    json result;
    if (exact->parsed()) result = run_exact(a, inputs);
    else if (qp->parsed()) result = run_qp(a, inputs);
    else if (verify->parsed()) result = run_verify(a, inputs);
    else if (greedy->parsed()) result = run_greedy(a, inputs);
    else if (gv->parsed()) result = run_gv(a);
    else if (example->parsed()) result = run_example(a);
    else if (zero->parsed()) result = run_zero_error(a, inputs);
    else if (rate_fn->parsed()) result = run_rate_fn(a, inputs);
    else if (jfun->parsed()) result = run_j(a, inputs);
    else if (second->parsed()) result = run_second_order(a, inputs);
    else if (cor2->parsed()) result = run_corollary2(a);
    else result = run_reproduce(a, inputs);
    record["result"] = std::move(result);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    record["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    status = 1;
  } catch (const std::exception& e) {
    record["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
    status = 1;
  }

  // Content hash of the input files; commands without files hash their
  // argument list instead.
  std::string material;
  if (inputs.contents.empty()) {
    material = join(args);
  } else {
    for (const auto& c : inputs.contents) material += sha256_hex(c);
  }
  record["input_digest"] = sha256_hex(material);
  record["subcommand"] = command;
  record["timestamp"] = utc_timestamp();

  const std::string text = record.dump(a.pretty ? 2 : -1) + "\n";
  out << text;
  if (!a.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    std::ofstream f(std::filesystem::path(a.out_dir) / (record["input_digest"].get<std::string>() + ".json"));
    if (!f || !(f << text)) {
      err << "cannot write run record to " << a.out_dir << "\n";
      return 1;
    }
  }
  return status;
}

}  // namespace distspec::cli
