#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "bgap/cli.hpp"
#include "bgap/cluster.hpp"
#include "bgap/error.hpp"
#include "bgap/expsum.hpp"
#include "bgap/sieve.hpp"

namespace bgap::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

class Sink {
 public:
  Sink(const RunConfig& c, std::ostream& os) : os_(os), hash_(config_hash_hex(c)) {
    json head;
    head["op"] = "config";
    head["config"] = config_json(c);
    emit(std::move(head));
  }

  void emit(json j) {
    j["config_hash"] = hash_;
    os_ << j.dump() << '\n';
  }

 private:
  std::ostream& os_;
  std::string hash_;
};

struct Timer {
  bool on;
  Clock::time_point start = Clock::now();
  void stamp(json& j) const {
    if (!on) return;
    j["wall_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

std::vector<int> indices(const RunConfig& c, int k) {
  if (c.i) {
    require(*c.i >= 0 && *c.i <= k, "--i must lie in [0, k]");
    return {*c.i};
  }
  std::vector<int> all(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

json report_line(const SumReport& r, const Timer& t) {
  json j = to_json(r);
  t.stamp(j);
  return j;
}

void cmd_tuple(const RunConfig& c, Sink& sink) {
  const SieveParams p = make_params(sieve_config(c));
  json j;
  j["op"] = "tuple";
  j["h"] = p.tuple.h;
  j["W"] = p.W;
  j["b"] = p.b;
  j["k"] = p.k();
  j["w"] = p.w;
  j["W0"] = p.W0;
  j["R"] = p.R;
  j["theta"] = real_json(p.theta);
  if (p.consecutive) {
    json gaps = json::array();
    for (const auto& g : p.gaps) gaps.push_back({{"a", g.a}, {"rho", g.rho}});
    j["gaps"] = gaps;
  }
  sink.emit(std::move(j));
}

void cmd_sums(const RunConfig& c, Sink& sink) {
  const SieveParams p = make_params(sieve_config(c));
  const TestFunction F = TestFunction::parse(c.f_spec, p.k());
  const PrimeTable t = build_prime_table(p.table_limit());
  const Exec exec{c.threads};
  Timer tm{c.timing};
  sink.emit(report_line(omega_sum(p, F, t, exec), tm));
  for (const int i : indices(c, p.k())) {
    tm.start = Clock::now();
    sink.emit(report_line(weighted_prime_sum(p, F, i, t, exec), tm));
  }
}

void cmd_expsum(const RunConfig& c, Sink& sink) {
  const Exec exec{c.threads};
  Timer tm{c.timing};
  if (c.mode == "arc") {
    for (const double alpha : c.alphas) {
      const ArcLabel l = classify_arc(alpha, c.N);
      sink.emit({{"op", "arc"},
                 {"alpha", real_json(alpha)},
                 {"kind", l.kind == ArcKind::kMajor ? "major" : "minor"},
                 {"a", l.a},
                 {"q", l.q},
                 {"P", real_json(l.P)},
                 {"Q", real_json(l.Q)}});
    }
    return;
  }
  if (c.mode == "prime" || c.mode == "remainder") {
    require(c.N >= 2, "--n must be >= 2");
    const PrimeTable t = build_prime_table(2 * c.N);
    if (c.mode == "prime") {
      const RationalPoint pt = make_point(c.a, c.q, c.theta_offset);
      const auto s = prime_expsum(c.N, c.D, c.residue, pt, t, exec);
      const auto main = progression_main_term(c.N, c.D, c.residue, pt);
      json j{{"op", "prime_expsum"},     {"x", c.N},          {"D", c.D},
             {"b", c.residue},           {"a", pt.a},         {"q", pt.q},
             {"theta", real_json(pt.theta)}, {"measured", complex_json(s)},
             {"predicted", complex_json(main)},
             {"error", real_json(std::abs(s - main))},
             {"x_over_log_x", real_json(static_cast<double>(c.N) / std::log(static_cast<double>(c.N)))}};
      tm.stamp(j);
      sink.emit(std::move(j));
    } else {
      const GridMaximum g = empirical_R(c.q, c.delta, c.N, c.grid, t, exec);
      json j{{"op", "remainder"}, {"q", c.q},       {"delta", real_json(c.delta)},
             {"x", c.N},          {"grid", g.grid}, {"value", real_json(g.value)},
             {"argmax_a", g.a},   {"argmax_theta", real_json(g.theta)},
             {"bound_kind", "grid lower bound"}};
      tm.stamp(j);
      sink.emit(std::move(j));
    }
    return;
  }
  const SieveParams p = make_params(sieve_config(c));
  const TestFunction F = TestFunction::parse(c.f_spec, p.k());
  const PrimeTable t = build_prime_table(p.table_limit());
  if (c.mode == "weighted") {
    const RationalPoint pt = make_point(c.a, c.q, c.theta_offset);
    for (const int i : indices(c, p.k())) {
      tm.start = Clock::now();
      sink.emit(report_line(weighted_expsum(p, F, i, pt, t, exec), tm));
    }
  } else if (c.mode == "minor") {
    std::vector<double> alphas = c.alphas;
    if (alphas.empty()) alphas.push_back(std::numbers::phi - 1.0);
    for (const int i : indices(c, p.k())) {
      for (const auto& r : minor_arc_scan(p, F, i, alphas, t, {}, exec)) {
        json j = to_json(r);
        j["i"] = i;
        sink.emit(std::move(j));
      }
    }
  } else {
    fail_validation("--mode must be weighted, prime, remainder, minor or arc");
  }
}

void cmd_recur(const RunConfig& c, Sink& sink) {
  const KroneckerSystem sys = parse_system(c.system);
  const BoxSet A = parse_set(sys, c.set);
  const Exec exec{c.threads};
  const double thr = A.measure() * A.measure() - c.eps;
  require(c.pmax >= 2, "--pmax must be >= 2");
  {
    const PrimeTable t = build_prime_table(c.pmax);
    const auto primes = shifted_prime_recurrence_set(sys, A, c.eps, c.pmax, t);
    sink.emit({{"op", "recur"},
               {"pmax", c.pmax},
               {"eps", real_json(c.eps)},
               {"measure", real_json(A.measure())},
               {"threshold", real_json(thr)},
               {"count", primes.size()},
               {"primes", primes}});
  }
  if (c.nmax > 0) {
    const auto S = khintchine_set(sys, A, c.eps, c.nmax);
    std::int64_t max_gap = 0;
    for (std::size_t j = 1; j < S.size(); ++j) max_gap = std::max(max_gap, S[j] - S[j - 1]);
    const std::size_t head = std::min<std::size_t>(S.size(), 50);
    sink.emit({{"op", "khintchine"},
               {"nmax", c.nmax},
               {"eps", real_json(c.eps)},
               {"count", S.size()},
               {"max_gap", max_gap},
               {"first", std::vector<std::int64_t>(S.begin(), S.begin() + static_cast<long>(head))}});
  }
  if (c.correlation_sums) {
    const SieveParams p = make_params(sieve_config(c));
    const TestFunction F = TestFunction::parse(c.f_spec, p.k());
    const PrimeTable t = build_prime_table(p.table_limit());
    Timer tm{c.timing};
    for (const int i : indices(c, p.k())) {
      tm.start = Clock::now();
      sink.emit(report_line(weighted_correlation_sum(p, F, sys, A, i, c.eps, t, exec), tm));
    }
    if (sys.d() > 0) {
      CubePairSpec spec;
      spec.a.assign(static_cast<std::size_t>(sys.d()), 0);
      spec.b = spec.a;
      tm.start = Clock::now();
      sink.emit(report_line(cube_pair_sum(p, F, sys, spec, t, exec), tm));
    }
  }
}

void cmd_cluster(const RunConfig& c, Sink& sink) {
  const SieveParams p = make_params(sieve_config(c));
  const TestFunction F = TestFunction::parse(c.f_spec, p.k());
  const KroneckerSystem sys = parse_system(c.system);
  const BoxSet A = parse_set(sys, c.set);
  const PrimeTable t = build_prime_table(p.table_limit());
  const Exec exec{c.threads};
  Timer tm{c.timing};
  const SumReport det = detector_sum(p, F, sys, A, c.eps, c.m, t, exec);
  sink.emit(report_line(det, tm));

  const auto reports = consecutive_filter(scan_clusters(p, sys, A, c.eps, c.m, t, exec), p, t);
  if (det.measured.real() > 0.0 && reports.empty())
    throw InvariantError("detector sum is positive but the scan found no cluster");
  std::int64_t max_width = 0;
  bool all_consecutive = true;
  for (const auto& r : reports) {
    if (!reverify(r, p, sys, A, c.eps, t))
      throw InvariantError("cluster at n=" + std::to_string(r.n) + " failed re-verification");
    if (p.consecutive && !r.consecutive)
      throw InvariantError("cluster at n=" + std::to_string(r.n) + " is not a run of consecutive primes");
    max_width = std::max(max_width, r.width);
    all_consecutive = all_consecutive && r.consecutive;
    sink.emit(to_json(r));
  }
  sink.emit({{"op", "cluster_summary"},
             {"clusters", reports.size()},
             {"max_width", max_width},
             {"diameter", p.tuple.diameter()},
             {"all_consecutive", all_consecutive}});

  if (!c.csv.empty()) {
    std::ofstream csv(c.csv);
    if (!csv) fail_validation("cannot open --csv file '" + c.csv + "'");
    csv << "n,primes,width,consecutive\n";
    for (const auto& r : reports) {
      csv << r.n << ',';
      for (std::size_t j = 0; j < r.primes.size(); ++j) csv << (j ? " " : "") << r.primes[j];
      csv << ',' << r.width << ',' << (r.consecutive ? "true" : "false") << '\n';
    }
  }
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> head;
  std::vector<std::string> rest;
  for (std::size_t j = 0; j < args.size(); ++j) {
    const std::string& a = args[j];
    std::string path;
    if (a == "--config") {
      if (j + 1 >= args.size()) fail_validation("--config needs a file path");
      path = args[++j];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else {
      rest.push_back(a);
      continue;
    }
    const auto toks = config_file_tokens(path);
    head.insert(head.end(), toks.begin(), toks.end());
  }
  // File values first so that later command-line flags win.
  head.insert(head.end(), rest.begin(), rest.end());
  return head;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Prime clusters along Kronecker recurrence sets: sieve sums, exponential sums, "
               "correlations and cluster search."};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string tuple_s, only_s, alpha_s;
  app.add_option("--n", c.N, "Range base N (n runs over [N, 2N])");
  app.add_option("--theta", c.theta, "Sieve level exponent, R = floor(N^theta)");
  app.add_option("--k", c.k, "Tuple size minus one");
  app.add_option("--w", c.w, "W-trick prime bound");
  app.add_option("--w0", c.W0, "W0 factor of W");
  app.add_option("--b", c.b, "Residue override, validated against (I)-(IV)");
  app.add_option("--R", c.R, "Sieve level override (sets theta = log R / log N)");
  app.add_option("--tuple", tuple_s, "Explicit tuple h_0,...,h_k");
  app.add_flag("--consecutive", c.consecutive, "Force consecutive primes via gap congruences");
  app.add_option("--f-spec", c.f_spec, "Factor f: 'linear' or 'b0:c0,c1|b1:...'");
  app.add_option("--i", c.i, "Restrict to one tuple index");
  app.add_option("--eps", c.eps, "Recurrence slack epsilon");
  app.add_option("--m", c.m, "Cluster size minus one");
  app.add_option("--system", c.system, "Kronecker system, e.g. 'g=4;gamma0=1;kappa=0.41'");
  app.add_option("--set", c.set, "Set A: all | none | 'gamma[,corner..,side];...'");
  app.add_option("--mode", c.mode, "expsum mode: weighted | prime | remainder | minor | arc");
  app.add_option("--a", c.a, "Numerator a of alpha = a/q + theta");
  app.add_option("--q", c.q, "Denominator q");
  app.add_option("--theta-offset", c.theta_offset, "Offset theta of alpha");
  app.add_option("--D", c.D, "Progression modulus for --mode prime");
  app.add_option("--residue", c.residue, "Progression residue for --mode prime");
  app.add_option("--delta", c.delta, "Half-width of the theta grid for --mode remainder");
  app.add_option("--grid", c.grid, "Theta grid size for --mode remainder");
  app.add_option("--alpha", alpha_s, "Comma-separated alphas for --mode minor/arc");
  app.add_option("--pmax", c.pmax, "Prime bound for recur");
  app.add_option("--nmax", c.nmax, "Range of the Khintchine set for recur (0: skip)");
  app.add_flag("--correlation-sums", c.correlation_sums, "recur: also run the weighted correlation sums");
  app.add_option("--only", only_s, "verify: comma-separated criteria");
  app.add_option("--seed", c.seed, "Seed for sampled checks");
  app.add_option("--threads", c.threads, "Worker threads (0: all cores)");
  app.add_option("--out", c.out, "Write JSONL here instead of stdout");
  app.add_option("--csv", c.csv, "cluster: CSV summary path");
  app.add_flag("--timing", c.timing, "Add wall_ms to reports");
  app.add_option("--config", "Config file with 'key = value' lines (flags override)");

  const std::pair<const char*, const char*> subs[] = {
      {"tuple", "Print the tuple, W, b and R the sieve will use"},
      {"sums", "Omega sum and weighted prime sums against their main terms"},
      {"expsum", "Exponential sums over primes, arcs and remainders"},
      {"recur", "Recurrence sets and weighted correlation sums"},
      {"cluster", "Detector sum and prime-cluster scan"},
      {"verify", "Run the acceptance criteria"}};
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> rev = expand_config(args);
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    if (!tuple_s.empty()) c.tuple = parse_int_list(tuple_s);
    if (!alpha_s.empty()) c.alphas = parse_real_list(alpha_s);
    if (!only_s.empty()) {
      for (const auto v : parse_int_list(only_s)) {
        require(v >= 1 && v <= kCriteria, "--only: criteria are numbered 1.." + std::to_string(kCriteria));
        c.only.push_back(static_cast<int>(v));
      }
    }
    if (c.tuple) c.k = static_cast<int>(c.tuple->size()) - 1;

    std::ofstream file;
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) fail_validation("cannot open --out file '" + c.out + "'");
    }
    std::ostream& os = c.out.empty() ? out : file;

    if (c.subcommand == "verify") {
      Sink sink(c, os);
      return verify(c, os, err) == 0 ? 0 : 1;
    }
    Sink sink(c, os);
    if (c.subcommand == "tuple") cmd_tuple(c, sink);
    if (c.subcommand == "sums") cmd_sums(c, sink);
    if (c.subcommand == "expsum") cmd_expsum(c, sink);
    if (c.subcommand == "recur") cmd_recur(c, sink);
    if (c.subcommand == "cluster") cmd_cluster(c, sink);
    os.flush();
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int j = 1; j < argc; ++j) args.emplace_back(argv[j]);
  return run(args, out, err);
}

}  // namespace bgap::cli
