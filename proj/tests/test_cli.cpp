#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bgap/cli.hpp"
#include "bgap/error.hpp"
#include "bgap/report.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::vector<json> lines;
  std::string raw;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = bgap::cli::run(args, out, err);
  r.raw = out.str();
  r.err = err.str();
  if (r.code == 0) {
    std::istringstream in(r.raw);
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line.front() == '{') r.lines.push_back(json::parse(line));
  }
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bgap_test_" + name);
}

}  // namespace

TEST(Cli, TupleDefaults) {
  const auto r = run({"tuple"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.lines.size(), 2u);
  EXPECT_EQ(r.lines[0]["op"], "config");
  const auto& t = r.lines[1];
  EXPECT_EQ(t["op"], "tuple");
  EXPECT_EQ(t["h"], json({0, 6, 12}));
  EXPECT_EQ(t["W"], 30);
  EXPECT_EQ(t["b"], 1);
  EXPECT_EQ(t["R"], 3);
}

TEST(Cli, TupleConsecutiveListsGaps) {
  const auto r = run({"tuple", "--tuple", "0,8,12,20,24,32", "--w", "13", "--w0", "4", "--consecutive"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[1]["k"], 5);
  EXPECT_FALSE(r.lines[1]["gaps"].empty());
}

TEST(Cli, SumsEmitsOneLinePerIndex) {
  auto r = run({"sums", "--n", "20000", "--R", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.lines.size(), 5u);
  EXPECT_EQ(r.lines[1]["op"], "omega_sum");
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.lines[2 + i]["op"], "weighted_prime_sum");
    EXPECT_EQ(r.lines[2 + i]["i"], i);
  }
  r = run({"sums", "--n", "20000", "--R", "50", "--i", "1"});
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_FALSE(r.lines[1].contains("wall_ms"));
  r = run({"sums", "--n", "20000", "--R", "50", "--timing"});
  EXPECT_TRUE(r.lines[1].contains("wall_ms"));
}

TEST(Cli, RecurZ4) {
  const auto r = run({"recur", "--system", "g=4;gamma0=1", "--set", "0", "--pmax", "100", "--nmax", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_EQ(r.lines[1]["primes"], json({5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}));
  EXPECT_EQ(r.lines[2]["op"], "khintchine");
  EXPECT_EQ(r.lines[2]["first"], json({0, 4, 8, 12, 16, 20}));
  EXPECT_EQ(r.lines[2]["max_gap"], 4);
}

TEST(Cli, ExpsumModes) {
  auto r = run({"expsum", "--mode", "prime", "--n", "10000", "--D", "4", "--residue", "3", "--q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[1]["op"], "prime_expsum");
  r = run({"expsum", "--mode", "arc", "--n", "1000000", "--alpha", "0.3333333334,0.6180339887"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[1]["kind"], "major");
  EXPECT_EQ(r.lines[2]["kind"], "minor");
  r = run({"expsum", "--mode", "remainder", "--n", "5000", "--q", "3", "--delta", "0.001", "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[1]["grid"], 5);
  EXPECT_EQ(run({"expsum", "--mode", "bogus"}).code, 2);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run({"tuple", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"tuple", "--b", "2"}).code, 2);
  const auto r = run({"cluster", "--system", "g=4;gamma0=1", "--n", "10000", "--R", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("W0"), std::string::npos) << r.err;
  EXPECT_EQ(run({"verify", "--only", "12"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.raw.find("--theta"), std::string::npos);
}

TEST(Cli, ConfigFileWithOverride) {
  const auto path = temp_file("cfg.txt");
  {
    std::ofstream f(path);
    f << "# small run\nn = 20000\nR = 50\ni = 2\nf_spec = linear\n";
  }
  auto r = run({"sums", "--config", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[0]["config"]["N"], 20000);
  EXPECT_EQ(r.lines.size(), 3u);
  r = run({"sums", "--config", path.string(), "--n", "30000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines[0]["config"]["N"], 30000);
  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  EXPECT_EQ(run({"sums", "--config", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, HashCoversConfigLine) {
  const auto r = run({"sums", "--n", "20000", "--R", "50", "--threads", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string h = bgap::hash_hex(bgap::config_hash(r.lines[0]["config"]));
  for (const auto& l : r.lines) EXPECT_EQ(l["config_hash"], h);
  EXPECT_FALSE(r.lines[0]["config"].contains("threads"));
  const auto other = run({"sums", "--n", "20001", "--R", "50"});
  EXPECT_NE(other.lines[0]["config_hash"], h);
}

TEST(Cli, OutputIndependentOfThreads) {
  const std::vector<std::string> base{"cluster", "--n", "200000", "--R", "20", "--system", "kappa=sqrt_primes 2",
                                      "--set", "0,0.1,0.2,0.7", "--eps", "0.05"};
  std::string ref;
  for (const char* th : {"1", "2", "7"}) {
    auto args = base;
    args.insert(args.end(), {"--threads", th});
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    if (ref.empty()) ref = r.raw;
    EXPECT_EQ(r.raw, ref) << th;
  }
}

TEST(Cli, ClusterCsvAndOutFile) {
  const auto csv = temp_file("clusters.csv");
  const auto out = temp_file("out.jsonl");
  const auto r = run({"cluster", "--tuple", "0,2", "--w", "3", "--n", "10000", "--R", "10", "--csv", csv.string(),
                      "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.raw.empty());
  std::ifstream jf(out);
  std::vector<json> lines;
  for (std::string line; std::getline(jf, line);) lines.push_back(json::parse(line));
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[1]["op"], "detector_sum");
  EXPECT_EQ(lines.back()["op"], "cluster_summary");
  std::ifstream cf(csv);
  std::string header;
  std::getline(cf, header);
  EXPECT_EQ(header, "n,primes,width,consecutive");
  int rows = 0;
  for (std::string line; std::getline(cf, line);) ++rows;
  EXPECT_EQ(rows, lines.back()["clusters"].get<int>());
  EXPECT_GT(rows, 0);
  std::filesystem::remove(csv);
  std::filesystem::remove(out);
}

TEST(Cli, ParseHelpers) {
  const auto sys = bgap::cli::parse_system("g=4;kappa=0.25,0.5");
  EXPECT_EQ(sys.g, 4);
  EXPECT_EQ(sys.gamma0, 1);
  EXPECT_EQ(sys.d(), 2);
  EXPECT_EQ(bgap::cli::parse_system("kappa=sqrt_primes 3").d(), 3);
  const auto A = bgap::cli::parse_set(sys, "0,0,0,0.5;2,0.5,0.5,0.25");
  EXPECT_EQ(A.pieces().size(), 2u);
  EXPECT_DOUBLE_EQ(A.measure(), (0.25 + 0.0625) / 4);
  EXPECT_EQ(bgap::cli::parse_set(sys, "none").measure(), 0.0);
  EXPECT_THROW(bgap::cli::parse_set(sys, "0,0.5"), bgap::ValidationError);
  EXPECT_THROW(bgap::cli::parse_int_list("1,x"), bgap::ValidationError);
  EXPECT_EQ(bgap::cli::parse_real_list("0.5, 2"), (std::vector<double>{0.5, 2.0}));
}
