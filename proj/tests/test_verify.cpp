#include <ffdigits/cli.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace ffdigits;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ffdigits");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

CheckParams with_q(std::uint64_t q) {
  CheckParams P;
  P.field = Field::of_order(q)->spec();
  return P;
}

}  // namespace

TEST(RunCheck, Corollary1HasEqualityWitnessesAtSingleDigit) {
  const auto r = run_check("corollary1", with_q(5));
  EXPECT_TRUE(r.pass);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_NEAR(r.max_violation, 0.0, 1e-9);
  for (const auto& w : r.witnesses) {
    EXPECT_NEAR(w.lhs, w.rhs, 1e-9 * w.rhs);
    EXPECT_NE(w.instance.find("R="), std::string::npos);
  }
}

TEST(RunCheck, PrimeNumberTheoremIdentity) {
  auto P = with_q(3);
  P.n_hi = 8;
  const auto r = run_check("pnt", P);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.instances, 16u);
}

TEST(RunCheck, Partition) {
  auto P = with_q(2);
  P.n_lo = P.n_hi = 4;
  const auto r = run_check("partition", P);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.instances, 1u);
  P.n_lo = P.n_hi = 3;
  EXPECT_THROW(run_check("partition", P), std::invalid_argument);
}

TEST(RunCheck, UnknownId) { EXPECT_THROW(run_check("lemma7"), std::invalid_argument); }

TEST(RunCheck, SmallGridsPass) {
  for (const char* id : {"lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "corollary2", "identity"}) {
    auto P = with_q(3);
    if (std::string(id) == "lemma3") P.n_hi = 6;
    const auto r = run_check(id, P);
    EXPECT_TRUE(r.pass) << id;
    EXPECT_GT(r.instances, 0u) << id;
    EXPECT_LE(r.witnesses.size(), 10u);
  }
}

TEST(RunCheck, Lemma6NeedsPrimeField) { EXPECT_THROW(run_check("lemma6", with_q(4)), std::invalid_argument); }

TEST(RunCheck, SeedlessSamplingIsStable) {
  CheckParams a, b;
  a.seedless = b.seedless = true;
  EXPECT_EQ(to_json(run_check("identity", a)).dump(), to_json(run_check("identity", b)).dump());
}

TEST(Tracker, FailureKeepsWitnesses) {
  WitnessTracker tr(0.0);
  for (int i = 0; i < 25; ++i) tr.observe(double(i), 10.0, [&] { return std::to_string(i); });
  CheckResult r;
  tr.fill(r);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.witnesses.size(), 10u);
  EXPECT_EQ(r.witnesses.front().instance, "24");
  EXPECT_DOUBLE_EQ(r.max_violation, 14.0 / 10.0);
  EXPECT_DOUBLE_EQ(r.lhs, 24.0);
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  auto P = with_q(3);
  for (const char* id : {"lemma1", "corollary1", "lemma5", "identity"}) {
    const std::string text = to_json(run_check(id, P)).dump();
    EXPECT_EQ(Json::parse(text).dump(), text) << id;
  }
  const auto rows = scan(RestrictedSet::parse(Field::of_order(5), "0,1"), 1, 3);
  std::ostringstream os;
  write_json_lines(os, rows);
  std::istringstream is(os.str());
  std::string line;
  int count = 0;
  while (std::getline(is, line)) {
    EXPECT_EQ(Json::parse(line).dump(), line);
    ++count;
  }
  EXPECT_EQ(count, 3);
}

TEST(Report, JsonRecordFields) {
  const auto j = to_json(run_check("lemma5", with_q(2)));
  for (const char* k : {"check", "params", "lhs", "rhs", "pass", "max_violation", "witnesses"})
    EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Report, CsvColumns) {
  const auto rows = scan(RestrictedSet::parse(Field::of_order(5), "0,1"), 2, 2);
  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "q,s,forbidden,n,exact,predictor,ratio,lambda,budget_total,elapsed_s");
  EXPECT_EQ(row.rfind("5,2,\"0,1\",2,5,", 0), 0u) << row;
}

TEST(Cli, Count) {
  const auto r = run_cli({"count", "--q", "2", "--n", "2", "--forbid", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, Predict) {
  const auto r = run_cli({"predict", "--q", "17", "--n", "3", "--forbid", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1450.666667"), std::string::npos) << r.out;
}

TEST(Cli, VerifyLemma5) {
  const auto r = run_cli({"verify", "lemma5", "--q", "2", "--d-max", "6"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lemma5"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"count", "--q", "6", "--n", "2"}).code, 2);
  EXPECT_EQ(run_cli({"count", "--q", "5"}).code, 2);
  EXPECT_EQ(run_cli({"count", "--q", "5", "--n", "2", "--forbid", "0,1,2,3,4"}).code, 2);
  EXPECT_EQ(run_cli({"count", "--q", "5", "--n", "2", "--forbid", "7"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "lemma9"}).code, 2);
  EXPECT_EQ(run_cli({"count", "--q", "9", "--ext-modulus", "0,0,1", "--n", "2"}).code, 2);
  const auto budget = run_cli({"count", "--q", "5", "--n", "9", "--budget", "1000"});
  EXPECT_EQ(budget.code, 4);
  EXPECT_NE(budget.err.find("census"), std::string::npos);
  EXPECT_EQ(run_cli({"scan", "--q", "5", "--n", "2..6", "--budget", "1000"}).code, 4);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ExtensionModulus) {
  // 3^2 with u^2 + 1 and with u^2 + u + 2 count the same polynomials
  const auto a = run_cli({"count", "--q", "9", "--n", "3"});
  const auto b = run_cli({"count", "--q", "9", "--ext-modulus", "2,1,1", "--n", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "240\n");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ScanWritesFiles) {
  const std::string dir = ::testing::TempDir();
  const auto r = run_cli({"scan", "--q", "5", "--n", "2..3", "--forbid", "0", "--csv", dir + "scan.csv", "--json",
                          dir + "scan.json"});
  EXPECT_EQ(r.code, 0);
  std::ifstream csv(dir + "scan.csv"), json(dir + "scan.json");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 3);
  lines = 0;
  while (std::getline(json, line)) {
    EXPECT_EQ(Json::parse(line)["q"], 5);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

TEST(Cli, WorkersFromEnvironment) {
  ::setenv("FFDIGITS_WORKERS", "3", 1);
  EXPECT_EQ(resolve_workers(std::nullopt), 3u);
  EXPECT_EQ(resolve_workers(2u), 2u);
  ::unsetenv("FFDIGITS_WORKERS");
}
