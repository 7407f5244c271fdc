#pragma once

// Certification over a one- or two-parameter family of forms, with an
// append-only journal so an interrupted scan resumes where it stopped.
//
// Spec file, one key = value per line, '#' starts a comment:
//
//   template = 1 0 0 a 1     five tokens: integers or [+-][coef]a, [+-][coef]b
//   a = -10..10
//   b = 0..0                 optional
//   cap = 1000
//   out = family.jsonl
//   width = 4

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "thueq/certify.hpp"
#include "thueq/errors.hpp"
#include "thueq/form.hpp"

namespace thueq {

/// coef * param + constant, with param 0 (none), 1 (a) or 2 (b).
struct TemplateToken {
  long coef = 0;
  int param = 0;
  long constant = 0;
};

struct ScanSpec {
  std::array<TemplateToken, 5> tmpl;
  long a_lo = 0, a_hi = 0;
  long b_lo = 0, b_hi = 0;
  mpz_class cap = 1000;
  std::string out;
  int width = 1;
  CertifyOptions certify;
};

namespace detail {

inline std::string trim_ws(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("scan spec: bad integer '" + s + "' for " + what);
  }
}

inline TemplateToken parse_token(const std::string& tok) {
  TemplateToken t;
  char last = tok.empty() ? '\0' : tok.back();
  if (last != 'a' && last != 'b') {
    t.constant = parse_long(tok, "template");
    return t;
  }
  t.param = last == 'a' ? 1 : 2;
  std::string c = tok.substr(0, tok.size() - 1);
  if (c.empty() || c == "+") t.coef = 1;
  else if (c == "-") t.coef = -1;
  else t.coef = parse_long(c, "template");
  return t;
}

inline void parse_range(const std::string& v, long& lo, long& hi, const std::string& key) {
  size_t dots = v.find("..");
  if (dots == std::string::npos) {
    lo = hi = parse_long(v, key);
    return;
  }
  lo = parse_long(trim_ws(v.substr(0, dots)), key);
  hi = parse_long(trim_ws(v.substr(dots + 2)), key);
}

}  // namespace detail

inline ScanSpec parse_scan_spec(std::istream& in) {
  ScanSpec spec;
  bool have_template = false, have_out = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim_ws(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("scan spec line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim_ws(line.substr(0, eq)), val = detail::trim_ws(line.substr(eq + 1));
    if (key == "template") {
      std::istringstream ts(val);
      std::vector<std::string> toks;
      for (std::string t; ts >> t;) toks.push_back(t);
      if (toks.size() != 5) throw ParseError("scan spec: template needs 5 tokens");
      for (int i = 0; i < 5; ++i) spec.tmpl[i] = detail::parse_token(toks[i]);
      have_template = true;
    } else if (key == "a") {
      detail::parse_range(val, spec.a_lo, spec.a_hi, key);
    } else if (key == "b") {
      detail::parse_range(val, spec.b_lo, spec.b_hi, key);
    } else if (key == "cap") {
      spec.cap = detail::parse_long(val, key);
      if (spec.cap < 0) throw ParseError("scan spec: cap must be nonnegative");
    } else if (key == "out") {
      spec.out = val;
      have_out = true;
    } else if (key == "width") {
      spec.width = static_cast<int>(detail::parse_long(val, key));
      if (spec.width < 1) throw ParseError("scan spec: width must be positive");
    } else if (key == "k") {
      spec.certify.k = static_cast<int>(detail::parse_long(val, key));
    } else if (key == "precision") {
      spec.certify.precision = detail::parse_long(val, key);
    } else if (key == "units") {
      spec.certify.units = detail::parse_long(val, key) != 0;
    } else {
      throw ParseError("scan spec: unknown key '" + key + "'");
    }
  }
  if (!have_template) throw ParseError("scan spec: missing template");
  if (!have_out) throw ParseError("scan spec: missing out");
  return spec;
}

inline ScanSpec parse_scan_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scan spec " + path);
  return parse_scan_spec(in);
}

struct ScanMember {
  long index = 0;
  long a = 0, b = 0;
  QuarticForm form;
};

/// Members in a-major, b-minor order; empty ranges give no members.
inline std::vector<ScanMember> scan_members(const ScanSpec& spec) {
  std::vector<ScanMember> out;
  long idx = 0;
  for (long a = spec.a_lo; a <= spec.a_hi; ++a)
    for (long b = spec.b_lo; b <= spec.b_hi; ++b) {
      std::array<mpz_class, 5> c;
      for (int i = 0; i < 5; ++i) {
        const auto& t = spec.tmpl[i];
        long p = t.param == 1 ? a : (t.param == 2 ? b : 0);
        c[i] = mpz_class(t.coef) * p + t.constant;
      }
      out.push_back({idx++, a, b, QuarticForm(c)});
    }
  return out;
}

/// One line of the journal and of the final output.
inline nlohmann::ordered_json scan_record(const ScanSpec& spec, const ScanMember& m) {
  nlohmann::ordered_json j;
  j["index"] = m.index;
  j["key"] = "a=" + std::to_string(m.a) + " b=" + std::to_string(m.b);
  j["form"] = m.form.str();
  j["disc"] = m.form.disc().get_str();
  const auto& F = m.form;
  if (F[0] == 0 || F.disc() == 0) {
    j["skip"] = "degenerate";
    return j;
  }
  if (!is_irreducible(F)) {
    j["skip"] = "reducible";
    return j;
  }
  try {
    CertifyOptions opt = spec.certify;
    opt.y_max = spec.cap;
    CertificationReport rep = certify(F, opt);
    j["sig"] = sig_str(rep.sig);
    j["mahler"] = rep.mahler.mid().str(20);
    j["ymax"] = rep.y_max.get_str();
    j["count"] = rep.count;
    j["U"] = rep.table.U;
    std::vector<std::string> sols;
    for (const auto& s : rep.solutions) sols.push_back(s.input.x.get_str() + "," + s.input.y.get_str());
    j["solutions"] = sols;
    int failed = 0;
    for (const auto& q : rep.predicates) failed += q.applicable && !q.holds;
    j["failed"] = failed;
    j["verdict"] = rep.verdict;
  } catch (const std::exception& e) {
    j["error"] = e.what();
  }
  return j;
}

struct ScanResult {
  long records = 0;
  long skipped = 0;
  long resumed = 0;  ///< members already present in the journal
};

namespace detail {

// Complete, parseable journal lines; a torn final line is ignored.
inline std::map<long, std::string> read_journal(const std::string& path) {
  std::map<long, std::string> done;
  std::ifstream in(path, std::ios::binary);
  if (!in) return done;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  size_t pos = 0;
  while (true) {
    size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) break;
    std::string line = content.substr(pos, nl - pos);
    pos = nl + 1;
    auto j = nlohmann::ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("index")) continue;
    done[j["index"].get<long>()] = line;
  }
  return done;
}

}  // namespace detail

/// Runs (or resumes) a scan. `stop_after` >= 0 stops once that many new
/// records have been journaled, leaving the output unwritten; used to
/// simulate an interruption.
inline ScanResult run_scan(const ScanSpec& spec, long stop_after = -1) {
  const std::string journal_path = spec.out + ".journal";
  auto done = detail::read_journal(journal_path);
  ScanResult res;
  res.resumed = static_cast<long>(done.size());

  // Rewrite the journal without any torn tail before appending.
  {
    std::ofstream j(journal_path, std::ios::binary | std::ios::trunc);
    if (!j) throw IoError("cannot write journal " + journal_path);
    for (const auto& [idx, line] : done) j << line << '\n';
    if (!j) throw IoError("cannot write journal " + journal_path);
  }
  std::ofstream journal(journal_path, std::ios::binary | std::ios::app);
  if (!journal) throw IoError("cannot write journal " + journal_path);

  auto members = scan_members(spec);
  std::vector<const ScanMember*> todo;
  for (const auto& m : members)
    if (!done.count(m.index)) todo.push_back(&m);

  std::atomic<size_t> next{0};
  std::atomic<long> written{0};
  std::mutex mu;
  bool io_failed = false;
  auto worker = [&] {
    for (;;) {
      if (stop_after >= 0 && written.load() >= stop_after) return;
      size_t t = next.fetch_add(1);
      if (t >= todo.size()) return;
      std::string line = scan_record(spec, *todo[t]).dump();
      std::lock_guard<std::mutex> lock(mu);
      if (stop_after >= 0 && written.load() >= stop_after) return;
      journal << line << '\n';
      journal.flush();
      if (!journal) io_failed = true;
      done[todo[t]->index] = line;
      written.fetch_add(1);
    }
  };
  const int width = std::max(1, std::min<int>(spec.width, static_cast<int>(std::max<size_t>(1, todo.size()))));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < width; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (io_failed) throw IoError("journal write failed: " + journal_path);
  if (done.size() < members.size()) {
    res.records = static_cast<long>(done.size());
    return res;
  }

  // final file, sorted by member index, skips left out
  const std::string tmp = spec.out + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + spec.out);
    for (const auto& [idx, line] : done) {
      auto j = nlohmann::ordered_json::parse(line);
      if (j.contains("skip")) {
        ++res.skipped;
        continue;
      }
      out << line << '\n';
      ++res.records;
    }
    if (!out) throw IoError("cannot write " + spec.out);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, spec.out, ec);
  if (ec) throw IoError("cannot write " + spec.out + ": " + ec.message());
  return res;
}

}  // namespace thueq
