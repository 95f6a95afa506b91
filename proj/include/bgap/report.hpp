#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace bgap {

struct SieveParams;
class TestFunction;

/// A measured sum next to its predicted main term, with parameter echo.
struct SumReport {
  std::string op;
  std::complex<double> measured;
  std::complex<double> predicted;
  bool complex_valued = false;
  std::int64_t count = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json extra = nlohmann::json::object();

  double measured_real() const { return measured.real(); }
  double predicted_real() const { return predicted.real(); }
  /// measured / predicted, only when |predicted| > 0.
  std::optional<std::complex<double>> ratio() const;
};

/// Reals rounded to 12 significant digits, the precision of every report.
double round12(double x);
nlohmann::json real_json(double x);
nlohmann::json complex_json(std::complex<double> z);

nlohmann::json params_json(const SieveParams& p);
nlohmann::json params_json(const SieveParams& p, const TestFunction& F);
nlohmann::json to_json(const SumReport& r);

/// FNV-1a 64 over the canonical (sorted-key, compact) dump.
std::uint64_t config_hash(const nlohmann::json& config);
std::string hash_hex(std::uint64_t h);

}  // namespace bgap
