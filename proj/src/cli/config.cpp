#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "bgap/cli.hpp"
#include "bgap/error.hpp"
#include "bgap/report.hpp"

namespace bgap::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) fail_validation(what + ": '" + s + "' is not an integer");
  return v;
}

double to_real(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail_validation(what + ": '" + s + "' is not a number");
  return v;
}

const std::set<std::string> kValueKeys = {
    "n",     "theta", "k",     "w",     "w0",           "b",     "R",    "tuple",
    "f-spec", "i",    "eps",   "m",     "system",       "set",   "mode", "a",
    "q",     "theta-offset",   "D",     "residue",      "delta", "grid", "alpha",
    "pmax",  "nmax",  "only",  "seed",  "threads",      "out",   "csv"};
const std::set<std::string> kFlagKeys = {"consecutive", "correlation-sums", "timing"};

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) out.push_back(to_int(part, "integer list"));
  require(!out.empty(), "integer list is empty");
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(to_real(part, "real list"));
  require(!out.empty(), "real list is empty");
  return out;
}

KroneckerSystem parse_system(const std::string& spec) {
  std::int64_t g = 1;
  std::optional<std::int64_t> gamma0;
  std::vector<double> kappa;
  for (const auto& field : split(spec, ';')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) fail_validation("system: expected key=value, got '" + field + "'");
    const std::string key = trim(field.substr(0, eq));
    const std::string value = trim(field.substr(eq + 1));
    if (key == "g") {
      g = to_int(value, "system g");
    } else if (key == "gamma0") {
      gamma0 = to_int(value, "system gamma0");
    } else if (key == "kappa") {
      if (value.rfind("sqrt_primes", 0) == 0) {
        kappa = sqrt_primes(static_cast<int>(to_int(trim(value.substr(11)), "sqrt_primes d")));
      } else if (!value.empty()) {
        kappa = parse_real_list(value);
      }
    } else {
      fail_validation("system: unknown key '" + key + "' (expected g, gamma0, kappa)");
    }
  }
  return make_system(g, gamma0.value_or(g > 1 ? 1 : 0), std::move(kappa));
}

BoxSet parse_set(const KroneckerSystem& sys, const std::string& spec) {
  const std::string s = trim(spec);
  if (s == "all") return BoxSet::whole(sys);
  if (s == "none") return BoxSet::empty();
  const auto d = static_cast<std::size_t>(sys.d());
  std::vector<BoxPiece> pieces;
  for (const auto& piece : split(s, ';')) {
    if (piece.empty()) continue;
    const auto nums = split(piece, ',');
    BoxPiece bp;
    bp.gamma = to_int(nums[0], "set gamma");
    if (nums.size() == 1) {
      bp.cube = Cube{std::vector<double>(d, 0.0), 1.0};
    } else {
      require(nums.size() == d + 2, "set: piece '" + piece + "' needs gamma, " +
                                        std::to_string(d) + " corner(s) and a side");
      for (std::size_t c = 0; c < d; ++c) bp.cube.corner.push_back(to_real(nums[c + 1], "set corner"));
      bp.cube.side = to_real(nums[d + 1], "set side");
    }
    pieces.push_back(std::move(bp));
  }
  return BoxSet(sys, std::move(pieces));
}

std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_validation("config: cannot open '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail_validation("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(line.substr(eq + 1));
    if (kFlagKeys.count(key)) {
      if (value == "true" || value == "1") {
        tokens.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        fail_validation("config line " + std::to_string(lineno) + ": " + key +
                        " must be true or false");
      }
    } else if (kValueKeys.count(key)) {
      tokens.push_back("--" + key);
      tokens.push_back(value);
    } else {
      fail_validation("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return tokens;
}

SieveConfig sieve_config(const RunConfig& c) {
  SieveConfig s;
  s.N = c.N;
  s.theta = c.theta;
  s.k = c.k;
  s.w = c.w;
  s.W0 = c.W0;
  s.tuple = c.tuple;
  s.b = c.b;
  s.R = c.R;
  s.consecutive = c.consecutive;
  return s;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["subcommand"] = c.subcommand;
  j["N"] = c.N;
  j["theta"] = real_json(c.theta);
  j["k"] = c.k;
  j["w"] = c.w;
  j["W0"] = c.W0;
  j["b"] = c.b ? nlohmann::json(*c.b) : nlohmann::json(nullptr);
  j["R"] = c.R ? nlohmann::json(*c.R) : nlohmann::json(nullptr);
  j["tuple"] = c.tuple ? nlohmann::json(*c.tuple) : nlohmann::json(nullptr);
  j["consecutive"] = c.consecutive;
  j["f"] = c.f_spec;
  j["i"] = c.i ? nlohmann::json(*c.i) : nlohmann::json(nullptr);
  j["eps"] = real_json(c.eps);
  j["m"] = c.m;
  j["system"] = c.system;
  j["set"] = c.set;
  j["seed"] = c.seed;
  if (c.subcommand == "expsum") {
    j["mode"] = c.mode;
    j["a"] = c.a;
    j["q"] = c.q;
    j["theta_offset"] = real_json(c.theta_offset);
    j["D"] = c.D;
    j["residue"] = c.residue;
    j["delta"] = real_json(c.delta);
    j["grid"] = c.grid;
    nlohmann::json al = nlohmann::json::array();
    for (const double x : c.alphas) al.push_back(real_json(x));
    j["alphas"] = al;
  }
  if (c.subcommand == "recur") {
    j["pmax"] = c.pmax;
    j["nmax"] = c.nmax;
    j["correlation_sums"] = c.correlation_sums;
  }
  if (c.subcommand == "verify") j["only"] = c.only;
  return j;
}

std::string config_hash_hex(const RunConfig& c) { return hash_hex(config_hash(config_json(c))); }

}  // namespace bgap::cli
