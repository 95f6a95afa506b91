#include "bgap/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "bgap/admissible.hpp"
#include "bgap/testfn.hpp"

namespace bgap {

std::optional<std::complex<double>> SumReport::ratio() const {
  if (std::abs(predicted) > 0.0) return measured / predicted;
  return std::nullopt;
}

double round12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json real_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

nlohmann::json complex_json(std::complex<double> z) {
  return nlohmann::json::array({real_json(z.real()), real_json(z.imag())});
}

nlohmann::json params_json(const SieveParams& p) {
  nlohmann::json j;
  j["N"] = p.N;
  j["theta"] = real_json(p.theta);
  j["R"] = p.R;
  j["r_override"] = p.r_override;
  j["k"] = p.k();
  j["w"] = p.w;
  j["W0"] = p.W0;
  j["W"] = p.W;
  j["b"] = p.b;
  j["h"] = p.tuple.h;
  j["consecutive"] = p.consecutive;
  if (p.consecutive) {
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : p.gaps) gaps.push_back({g.a, g.rho});
    j["gap_rho"] = gaps;
  }
  return j;
}

nlohmann::json params_json(const SieveParams& p, const TestFunction& F) {
  nlohmann::json j = params_json(p);
  j["f"] = F.describe();
  return j;
}

nlohmann::json to_json(const SumReport& r) {
  nlohmann::json j;
  j["op"] = r.op;
  if (r.complex_valued) {
    j["measured"] = complex_json(r.measured);
    j["predicted"] = complex_json(r.predicted);
  } else {
    j["measured"] = real_json(r.measured.real());
    j["predicted"] = real_json(r.predicted.real());
  }
  if (const auto q = r.ratio()) {
    j["ratio"] = r.complex_valued ? complex_json(*q) : real_json(q->real());
  } else {
    j["ratio"] = nullptr;
  }
  j["count"] = r.count;
  j["params"] = r.params;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j;
}

std::uint64_t config_hash(const nlohmann::json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bgap
