#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(THUEQ_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, SolvePaperForm) {
  CliRun r = run("solve '1 -4 -1 4 1' --ymax 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 8);
  EXPECT_NE(r.out.find("8 7 1 2 small"), std::string::npos);
  CliRun neg = run("solve '1 -4 -1 4 1' --rhs -1 --ymax 10000");
  EXPECT_EQ(neg.code, 0);
  EXPECT_EQ(lines(neg.out), 0);
  EXPECT_EQ(lines(run("solve '1 0 0 0 1' --ymax 5").out), 2);
}

TEST(Cli, Analyze) {
  CliRun r = run("analyze '1 -4 -1 4 1'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("signature   (4,0)"), std::string::npos);
  EXPECT_NE(r.out.find("disc        10512"), std::string::npos);
  CliRun g = run("analyze '1 0 0 0 1'");
  EXPECT_NE(g.out.find("signature   (0,2)"), std::string::npos);
  EXPECT_NE(g.out.find("mahler      1.0000"), std::string::npos);
  EXPECT_EQ(run("analyze '1 0 0 0 0'").code, 3);
}

TEST(Cli, Certify) {
  CliRun r = run("certify '1 -4 -1 4 1'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("8 <= 26 consistent"), std::string::npos);
  EXPECT_EQ(run("certify '1 0 0 0 -2'").code, 0);
  EXPECT_EQ(run("certify '1 0 0 0 -4'").code, 3);
  EXPECT_EQ(run("certify '1 -4 -1 4 1' --ymax 10").code, 5);
}

TEST(Cli, Matveev) {
  CliRun r = run("matveev --n 3 --chi 2 --d 24 --B 10 --A 1,1,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C(n)   1.60485679116616594649802805783"), std::string::npos);
  EXPECT_EQ(run("matveev --n 3 --chi 2 --d 24 --B 10 --A 1,1").code, 2);
  CliRun z = run("matveev --n 2 --chi 1 --d 4 --B 10 --A 0,1");
  EXPECT_NE(z.out.find("degenerate"), std::string::npos);
  EXPECT_EQ(run("matveev --n 1 --chi 1 --d 1 --B 1 --A 1").code, 0);
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run("solve '1 2 3'").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("solve '1 -4 -1 4 1' --rhs 2").code, 2);
  EXPECT_EQ(run("solve '1 -4 -1 4 1' --ymax -3").code, 2);
}

TEST(Cli, PrecisionPrecedence) {
  auto dir = std::filesystem::temp_directory_path();
  std::string cfg = (dir / "thueq_cli_cfg.ini").string();
  std::ofstream(cfg) << "precision-bits = 96\n";
  EXPECT_NE(run("analyze '1 0 0 0 1'").out.find("precision   128 bits"), std::string::npos);
  EXPECT_NE(run("analyze '1 0 0 0 1'").out.find("precision   128 bits"), std::string::npos);
  std::string env = "THUEQ_PRECISION_BITS=200 ";
  auto with_env = [&](const std::string& a) {
    std::string cmd = env + THUEQ_CLI + std::string(" ") + a;
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    pclose(p);
    return out;
  };
  EXPECT_NE(with_env("analyze '1 0 0 0 1'").find("precision   200 bits"), std::string::npos);
  EXPECT_NE(with_env("--config " + cfg + " analyze '1 0 0 0 1'").find("precision   96 bits"), std::string::npos);
  EXPECT_NE(with_env("--config " + cfg + " analyze '1 0 0 0 1' --precision-bits 300").find("precision   300 bits"),
            std::string::npos);
}

TEST(Cli, ScanUnwritable) {
  auto dir = std::filesystem::temp_directory_path();
  std::string spec = (dir / "thueq_cli_bad.spec").string();
  std::ofstream(spec) << "template = 1 0 0 a 1\na = 1..2\nout = /nonexistent-dir/x.jsonl\n";
  EXPECT_EQ(run("scan " + spec).code, 6);
  EXPECT_EQ(run("scan /nonexistent-spec").code, 6);
}
