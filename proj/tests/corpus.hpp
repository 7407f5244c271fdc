#pragma once

// Deterministic corpus of irreducible quartic forms with coefficients in
// [-10, 10], balanced across the three signatures; every other form monic.

#include <array>
#include <random>
#include <vector>

#include "thueq/thueq.hpp"

namespace corpus {

inline std::vector<thueq::QuarticForm> forms(int per_signature = 70, unsigned long long seed = 20240611ULL) {
  std::mt19937_64 rng(seed);
  auto coef = [&] { return static_cast<long>(rng() % 21) - 10; };
  std::array<int, 3> have{0, 0, 0};  // indexed by number of conjugate pairs
  std::vector<thueq::QuarticForm> out;
  bool monic = true;
  while (have[0] < per_signature || have[1] < per_signature || have[2] < per_signature) {
    long a0 = monic ? 1 : coef();
    thueq::QuarticForm F(a0, coef(), coef(), coef(), coef());
    if (a0 == 0 || F.disc() == 0 || !thueq::is_irreducible(F)) continue;
    int r = thueq::count_real_roots(F.dehomogenized());
    int s = (4 - r) / 2;
    if (have[s] >= per_signature) continue;
    ++have[s];
    out.push_back(F);
    monic = !monic;
  }
  return out;
}

}  // namespace corpus
