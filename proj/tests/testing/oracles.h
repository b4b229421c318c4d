// tests/testing/oracles.h

// Copyright 2026  The spoofbench Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFBENCH_TESTS_TESTING_ORACLES_H_
#define SPOOFBENCH_TESTS_TESTING_ORACLES_H_

// Slow, direct reference implementations used only by the tests.  None of
// them call into the library code they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace spoofbench::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// -inf, midpoints between consecutive distinct values, +inf.
inline std::vector<double> BruteThresholds(std::vector<double> all) {
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<double> t = {-kInf};
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    double mid = all[i] + (all[i + 1] - all[i]) / 2.0;
    if (!(mid > all[i])) mid = all[i + 1];
    t.push_back(mid);
  }
  t.push_back(kInf);
  return t;
}

/// Fraction of `scores` below tau (miss) or at/above tau (false alarm).
inline double FractionBelow(const std::vector<double> &scores, double tau) {
  if (scores.empty()) return 0.0;
  std::size_t n = 0;
  for (double s : scores) n += s < tau;
  return static_cast<double>(n) / static_cast<double>(scores.size());
}

inline double FractionAtOrAbove(const std::vector<double> &scores, double tau) {
  if (scores.empty()) return 0.0;
  std::size_t n = 0;
  for (double s : scores) n += s >= tau;
  return static_cast<double>(n) / static_cast<double>(scores.size());
}

inline std::vector<double> Concat(std::vector<double> a, const std::vector<double> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// EER by scanning every threshold and interpolating linearly between the
/// last point with p_miss < p_fa and the first with p_miss >= p_fa.
inline double BruteEer(const std::vector<double> &pos, const std::vector<double> &neg) {
  const auto taus = BruteThresholds(Concat(pos, neg));
  double prev_pm = 0.0, prev_pfa = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double pm = FractionBelow(pos, taus[i]);
    const double pfa = FractionAtOrAbove(neg, taus[i]);
    if (pm >= pfa) {
      if (pm == pfa || i == 0) return pm;
      const double d0 = prev_pm - prev_pfa, d1 = pm - pfa;
      return prev_pm + d0 / (d0 - d1) * (pm - prev_pm);
    }
    prev_pm = pm;
    prev_pfa = pfa;
  }
  return prev_pm;
}

struct BruteDcf {
  double value = kInf;
  double threshold = 0.0;
};

inline BruteDcf BruteMinDcf(const std::vector<double> &pos,
                            const std::vector<double> &neg, double c_miss,
                            double c_fa, double p_target) {
  const double norm = std::min(c_miss * p_target, c_fa * (1.0 - p_target));
  BruteDcf best;
  for (double tau : BruteThresholds(Concat(pos, neg))) {
    const double v = (c_miss * p_target * FractionBelow(pos, tau) +
                      c_fa * (1.0 - p_target) * FractionAtOrAbove(neg, tau)) /
                     norm;
    if (v < best.value) best = {v, tau};
  }
  return best;
}

/// a-DCF with the terms of empty negative classes dropped.
inline BruteDcf BruteMinADcf(const std::vector<double> &tar,
                             const std::vector<double> &non,
                             const std::vector<double> &spf, double c_miss,
                             double c_fa_non, double c_fa_spf, double p_tar,
                             double p_non, double p_spf) {
  const double a = c_miss * p_tar;
  const double b = non.empty() ? 0.0 : c_fa_non * p_non;
  const double c = spf.empty() ? 0.0 : c_fa_spf * p_spf;
  const double norm = std::min(a, b + c);
  BruteDcf best;
  for (double tau : BruteThresholds(Concat(Concat(tar, non), spf))) {
    const double v = (a * FractionBelow(tar, tau) + b * FractionAtOrAbove(non, tau) +
                      c * FractionAtOrAbove(spf, tau)) /
                     norm;
    if (v < best.value) best = {v, tau};
  }
  return best;
}

inline std::vector<double> NaiveConvolve(const std::vector<double> &a,
                                         const std::vector<double> &b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  return y;
}

inline std::vector<std::complex<double>> NaiveDft(
    const std::vector<std::complex<double>> &x, bool inverse = false) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> y(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      acc += x[t] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                        static_cast<double>((k * t) % n) / n);
    y[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return y;
}

/// Frequency (Hz) of the strongest DFT bin of a Hann-windowed segment,
/// with the bin spacing.
inline std::pair<double, double> PeakFrequency(const std::vector<double> &x,
                                               std::size_t start, std::size_t len,
                                               int sample_rate) {
  double best = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k < len / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t / len);
      acc += w * x[start + t] *
             std::polar(1.0, -2.0 * std::numbers::pi *
                                 static_cast<double>((k * t) % len) / len);
    }
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      best_k = k;
    }
  }
  const double bin = static_cast<double>(sample_rate) / len;
  return {best_k * bin, bin};
}

inline double Rms(const std::vector<double> &x, std::size_t start, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = start; i < start + len; ++i) acc += x[i] * x[i];
  return std::sqrt(acc / len);
}

inline std::vector<double> Tone(double freq, int rate, std::size_t n,
                                double amplitude = 0.5) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  return x;
}

/// The 256 reconstruction levels of G.711 mu-law in 16-bit units:
/// sign * (((2q + 33) << seg) - 33) * 4.
inline std::vector<int> MuLawLevels() {
  std::vector<int> levels;
  for (int seg = 0; seg < 8; ++seg)
    for (int q = 0; q < 16; ++q) {
      const int mag = (((2 * q + 33) << seg) - 33) * 4;
      levels.push_back(mag);
      levels.push_back(-mag);
    }
  return levels;
}

/// Quantiser step of the mu-law segment that holds |level|.
inline int MuLawStep(int level) {
  const int mag = std::abs(level) / 4 + 33;
  int seg = 0;
  while ((66 << seg) <= mag) ++seg;  // segment seg spans [33 << seg, 66 << seg)
  return 8 << seg;
}

/// The 256 reconstruction levels of G.711 A-law in 16-bit units.
inline std::vector<int> ALawLevels() {
  std::vector<int> levels;
  for (int seg = 0; seg < 8; ++seg)
    for (int q = 0; q < 16; ++q) {
      const int mag = seg == 0 ? 16 * q + 8 : (16 * q + 264) << (seg - 1);
      levels.push_back(mag);
      levels.push_back(-mag);
    }
  return levels;
}

inline int ALawStep(int level) {
  const int mag = std::abs(level);
  if (mag < 512) return 16;
  int seg = 1;
  while ((512 << seg) <= mag) ++seg;
  return 16 << seg;
}

/// Best objective on a regular simplex grid with the given step.
inline double GridSearchSimplex(std::size_t n, double step,
                                const std::function<double(const std::vector<double> &)> &f) {
  const int k = static_cast<int>(std::lround(1.0 / step));
  double best = kInf;
  std::vector<double> w(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      w[i] = static_cast<double>(left) / k;
      best = std::min(best, f(w));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      w[i] = static_cast<double>(c) / k;
      rec(i + 1, left - c);
    }
  };
  rec(0, k);
  return best;
}

/// L2-penalised logistic regression by Nesterov-accelerated gradient
/// descent.  x rows include a leading 1 for the (unpenalised) bias.
inline std::vector<double> GradientDescentLogistic(
    const std::vector<std::vector<double>> &x, const std::vector<double> &y,
    double lambda, double grad_tol = 1e-11, int max_iter = 2000000) {
  const std::size_t n = x.size(), p = x[0].size();
  double lipschitz = lambda;
  for (const auto &row : x)
    for (double v : row) lipschitz += 0.25 * v * v;
  const double step = 1.0 / lipschitz;
  std::vector<double> theta(p, 0.0), prev = theta, look(p), grad(p);
  for (int it = 1; it <= max_iter; ++it) {
    const double momentum = (it - 1.0) / (it + 2.0);
    for (std::size_t j = 0; j < p; ++j) look[j] = theta[j] + momentum * (theta[j] - prev[j]);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += x[i][j] * look[j];
      const double prob = 1.0 / (1.0 + std::exp(-eta));
      for (std::size_t j = 0; j < p; ++j) grad[j] += (prob - y[i]) * x[i][j];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j > 0) grad[j] += lambda * look[j];
      norm = std::max(norm, std::abs(grad[j]));
    }
    prev = theta;
    for (std::size_t j = 0; j < p; ++j) theta[j] = look[j] - step * grad[j];
    if (norm < grad_tol) break;
  }
  return theta;
}

/// FNV-1a over the 16-bit PCM rendering of a signal.
inline std::uint64_t PcmHash(const std::vector<double> &x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : x) {
    const double r = std::round(std::clamp(v, -1.0, 1.0) * 32768.0);
    const auto s = static_cast<std::uint16_t>(
        static_cast<std::int16_t>(std::clamp(r, -32768.0, 32767.0)));
    for (int b = 0; b < 2; ++b) {
      h ^= (s >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace spoofbench::testing

#endif  // SPOOFBENCH_TESTS_TESTING_ORACLES_H_
