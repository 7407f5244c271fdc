#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thueq/thueq.hpp"

using namespace thueq;

namespace {
std::string tmpdir() {
  auto d = std::filesystem::temp_directory_path() / ("thueq_scan_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d.string();
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

ScanSpec family(const std::string& out, int width) {
  std::istringstream in("template = 1 0 0 a 1\na = -10..10\ncap = 100\nwidth = " + std::to_string(width) +
                        "\nout = " + out + "\n");
  return parse_scan_spec(in);
}

void clean(const std::string& out) {
  std::filesystem::remove(out);
  std::filesystem::remove(out + ".journal");
}
}  // namespace

TEST(Scan, ParsesSpec) {
  std::istringstream in("# family\ntemplate = 1 -2a 0 3b -1\na = -1..2\nb = 5\ncap = 7\nout = x.jsonl\nwidth = 3\n");
  ScanSpec s = parse_scan_spec(in);
  EXPECT_EQ(s.tmpl[1].coef, -2);
  EXPECT_EQ(s.tmpl[1].param, 1);
  EXPECT_EQ(s.tmpl[3].param, 2);
  EXPECT_EQ(s.tmpl[4].constant, -1);
  EXPECT_EQ(s.a_lo, -1);
  EXPECT_EQ(s.b_hi, 5);
  EXPECT_EQ(s.width, 3);
  auto m = scan_members(s);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0].form.str(), "1 2 0 15 -1");
}

TEST(Scan, RejectsBadSpecs) {
  std::istringstream a("a = 1..2\nout = x\n");
  EXPECT_THROW(parse_scan_spec(a), ParseError);
  std::istringstream b("template = 1 0 0 a 1\nout = x\nfoo = 1\n");
  EXPECT_THROW(parse_scan_spec(b), ParseError);
  std::istringstream c("template = 1 0 0 c 1\nout = x\n");
  EXPECT_THROW(parse_scan_spec(c), ParseError);
}

TEST(Scan, FamilyRecordsAndSkips) {
  std::string out = tmpdir() + "/fam.jsonl";
  clean(out);
  ScanResult r = run_scan(family(out, 1));
  // a = -2 and a = 2 give reducible forms: 1 - 2 + 1 = 0 and 1 + 2 + 1 (x + y) factor
  EXPECT_EQ(r.records, 19);
  EXPECT_EQ(r.skipped, 2);
  std::istringstream in(slurp(out));
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    EXPECT_FALSE(j.contains("skip"));
    EXPECT_LE(j["count"].get<int>(), j["U"].get<int>());
    ++n;
  }
  EXPECT_EQ(n, 19);
}

TEST(Scan, ParallelEqualsSerial) {
  std::string a = tmpdir() + "/w1.jsonl", b = tmpdir() + "/w8.jsonl";
  clean(a);
  clean(b);
  run_scan(family(a, 1));
  run_scan(family(b, 8));
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Scan, ResumeAfterInterruption) {
  std::string a = tmpdir() + "/full.jsonl", b = tmpdir() + "/resumed.jsonl";
  clean(a);
  clean(b);
  run_scan(family(a, 1));
  ScanResult part = run_scan(family(b, 1), 10);
  EXPECT_FALSE(std::filesystem::exists(b));
  // a torn final line, as if killed mid-write
  { std::ofstream j(b + ".journal", std::ios::app); j << "{\"index\":15,\"key\""; }
  ScanResult rest = run_scan(family(b, 1));
  EXPECT_EQ(rest.resumed, 10);
  EXPECT_EQ(slurp(a), slurp(b));
  std::istringstream in(slurp(b + ".journal"));
  std::set<long> seen;
  for (std::string line; std::getline(in, line);) {
    long idx = nlohmann::json::parse(line)["index"];
    EXPECT_TRUE(seen.insert(idx).second) << "duplicate " << idx;
  }
  EXPECT_EQ(seen.size(), 21u);
  (void)part;
}

TEST(Scan, EmptyRange) {
  std::string out = tmpdir() + "/empty.jsonl";
  clean(out);
  std::istringstream in("template = 1 0 0 a 1\na = 1..0\nout = " + out + "\n");
  ScanResult r = run_scan(parse_scan_spec(in));
  EXPECT_EQ(r.records, 0);
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_TRUE(std::filesystem::exists(out + ".journal"));
  EXPECT_EQ(slurp(out), "");
}

TEST(Scan, UnwritableOutput) {
  std::istringstream in("template = 1 0 0 a 1\na = 1..2\nout = /nonexistent-dir/x.jsonl\n");
  EXPECT_THROW(run_scan(parse_scan_spec(in)), IoError);
}
