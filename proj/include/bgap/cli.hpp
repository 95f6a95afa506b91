#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgap/admissible.hpp"
#include "bgap/dynamics.hpp"

namespace bgap::cli {

/// Every setting a run depends on. `threads`, `out`, `csv` and `timing`
/// only affect where and how fast results appear, so they stay out of the hash.
struct RunConfig {
  std::string subcommand;

  std::int64_t N = 1000000;
  double theta = 0.1;
  int k = 2;
  std::int64_t w = 5;
  std::int64_t W0 = 1;
  std::optional<std::int64_t> b;
  std::optional<std::int64_t> R;
  std::optional<std::vector<std::int64_t>> tuple;
  bool consecutive = false;
  std::string f_spec = "linear";
  std::optional<int> i;  // default: every index

  double eps = 0.01;
  int m = 1;
  std::string system = "g=1";
  std::string set = "all";

  // expsum
  std::string mode = "weighted";  // weighted | prime | remainder | minor | arc
  std::int64_t a = 1;
  std::int64_t q = 1;
  double theta_offset = 0.0;
  std::int64_t D = 1;
  std::int64_t residue = 1;
  double delta = 0.0;
  int grid = 41;
  std::vector<double> alphas;

  // recur
  std::int64_t pmax = 10000;
  std::int64_t nmax = 0;
  bool correlation_sums = false;

  // verify
  std::vector<int> only;

  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string csv;
  bool timing = false;
};

/// The hashed part of the config, with canonical key names.
nlohmann::json config_json(const RunConfig& c);
std::string config_hash_hex(const RunConfig& c);

SieveConfig sieve_config(const RunConfig& c);

/// "g=4;gamma0=1;kappa=0.41,0.73" or "kappa=sqrt_primes 2". gamma0 defaults to 1.
KroneckerSystem parse_system(const std::string& spec);
/// "all", "none", or pieces "gamma[,corner_1..corner_d,side]" separated by ';'.
BoxSet parse_set(const KroneckerSystem& sys, const std::string& spec);

std::vector<std::int64_t> parse_int_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);

/// Reads `key = value` lines ('#' starts a comment) into "--key value"
/// tokens. Unknown keys raise ValidationError.
std::vector<std::string> config_file_tokens(const std::string& path);

/// Exit status: 0 success, 1 internal error or failed acceptance, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The acceptance suite. JSONL records go to `out`, the pass/fail table to
/// `table`. Returns the number of failed criteria.
int verify(const RunConfig& c, std::ostream& out, std::ostream& table);

inline constexpr int kCriteria = 11;

}  // namespace bgap::cli
