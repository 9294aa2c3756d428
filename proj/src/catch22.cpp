// Copyright 2026 The cogload Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cogload/catch22.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cogload/error.hpp"
#include "cogload/fft.hpp"

namespace cogload {

namespace {

using Vec = std::vector<double>;
using Span = std::span<const double>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif

wide wide_sqrt(wide v) {
  if (v <= 0) return 0;
  wide r = std::sqrt(static_cast<double>(v));
  for (int i = 0; i < 3; ++i) r = (r + v / r) / 2;
  return r;
}

double mean(Span y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size());
}

double stddev(Span y) {
  const double m = mean(y);
  double s = 0.0;
  for (double v : y) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(y.size() - 1));
}

double median(Vec v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double min_of(Span y) { return *std::min_element(y.begin(), y.end()); }
double max_of(Span y) { return *std::max_element(y.begin(), y.end()); }

// Full-length autocorrelation via zero-padded FFT.
Vec acf_full(Span y) {
  const std::size_t n = y.size();
  const double m = mean(y);
  const std::size_t nfft = next_pow2(2 * n);
  std::vector<cplx> buf(nfft);
  for (std::size_t i = 0; i < n; ++i) buf[i] = y[i] - m;
  fft_inplace(buf, false);
  for (auto& c : buf) c = cplx(std::norm(c), 0.0);
  fft_inplace(buf, true);
  Vec out(n);
  const double c0 = buf[0].real();
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real() / c0;
  return out;
}

std::size_t first_zero(const Vec& ac, std::size_t maxtau) {
  std::size_t i = 0;
  while (i < maxtau && i < ac.size() && ac[i] > 0.0) ++i;
  return i;
}

double histogram_mode(Span y, int nbins) {
  const double lo = min_of(y), hi = max_of(y);
  const double step = (hi - lo) / nbins;
  std::vector<int> counts(static_cast<std::size_t>(nbins), 0);
  for (double v : y) {
    int idx = static_cast<int>((v - lo) / step);
    idx = std::clamp(idx, 0, nbins - 1);
    ++counts[static_cast<std::size_t>(idx)];
  }
  int best = 0, ties = 0;
  double acc = 0.0;
  for (int i = 0; i < nbins; ++i) {
    const double centre = ((lo + step * i) + (lo + step * (i + 1))) * 0.5;
    const int c = counts[static_cast<std::size_t>(i)];
    if (c > best) {
      best = c;
      ties = 1;
      acc = centre;
    } else if (c == best) {
      ++ties;
      acc += centre;
    }
  }
  return acc / ties;
}

double f1ecac(const Vec& ac) {
  const double thresh = 1.0 / std::exp(1.0);
  for (std::size_t i = 0; i + 1 < ac.size(); ++i) {
    if (ac[i + 1] < thresh) {
      const double slope = ac[i + 1] - ac[i];
      return static_cast<double>(i) + (thresh - ac[i]) / slope;
    }
  }
  return static_cast<double>(ac.size());
}

double first_min_ac(const Vec& ac) {
  for (std::size_t i = 1; i + 1 < ac.size(); ++i) {
    if (ac[i] < ac[i - 1] && ac[i] < ac[i + 1]) return static_cast<double>(i);
  }
  return static_cast<double>(ac.size());
}

double histogram_ami_even(Span y) {
  constexpr std::size_t tau = 2;
  constexpr int nb = 5;
  const double lo = min_of(y), hi = max_of(y);
  const double step = (hi - lo + 0.2) / nb;
  double edges[nb + 1];
  for (int i = 0; i <= nb; ++i) edges[i] = lo + step * i - 0.1;
  auto bin_of = [&](double v) {
    for (int j = 0; j <= nb; ++j) {
      if (v < edges[j]) return j - 1;
    }
    return -1;
  };
  double joint[nb][nb] = {};
  double total = 0.0;
  for (std::size_t i = 0; i + tau < y.size(); ++i) {
    const int a = bin_of(y[i]);
    const int b = bin_of(y[i + tau]);
    if (a < 0 || b < 0) continue;
    joint[a][b] += 1.0;
    total += 1.0;
  }
  double pa[nb] = {}, pb[nb] = {};
  for (int a = 0; a < nb; ++a) {
    for (int b = 0; b < nb; ++b) {
      joint[a][b] /= total;
      pa[a] += joint[a][b];
      pb[b] += joint[a][b];
    }
  }
  double ami = 0.0;
  for (int a = 0; a < nb; ++a) {
    for (int b = 0; b < nb; ++b) {
      if (joint[a][b] > 0.0) ami += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
    }
  }
  return ami;
}

double trev(Span y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double d = y[i + 1] - y[i];
    s += d * d * d;
  }
  return s / static_cast<double>(y.size() - 1);
}

double pnn40(Span y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (std::fabs(y[i + 1] - y[i]) * 1000.0 > 40.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y.size() - 1);
}

// Longest run of a binary symbol sequence, scored the way the canonical
// implementation does it: distance between successive resets.
double longest_stretch(const std::vector<int>& bits, int reset_on) {
  const std::size_t m = bits.size();
  long best = 0, last = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (bits[i] == reset_on || i + 1 == m) {
      const long stretch = static_cast<long>(i) - last;
      best = std::max(best, stretch);
      last = static_cast<long>(i);
    }
  }
  return static_cast<double>(best);
}

double mean_longstretch1(Span y) {
  const double m = mean(y);
  std::vector<int> bits(y.size() - 1);
  for (std::size_t i = 0; i + 1 < y.size(); ++i) bits[i] = y[i] - m <= 0.0 ? 0 : 1;
  return longest_stretch(bits, 0);
}

double diff_longstretch0(Span y) {
  std::vector<int> bits(y.size() - 1);
  for (std::size_t i = 0; i + 1 < y.size(); ++i) bits[i] = y[i + 1] - y[i] < 0.0 ? 0 : 1;
  return longest_stretch(bits, 1);
}

double quantile(Vec sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  if (q < 0.5 / n) return sorted.front();
  if (q > (n - 0.5) / n) return sorted.back();
  const double idx = n * q - 0.5;
  const auto lo = static_cast<std::size_t>(std::floor(idx));
  const auto hi = static_cast<std::size_t>(std::ceil(idx));
  return sorted[lo] + (idx - std::floor(idx)) * (sorted[hi] - sorted[lo]);
}

// Labels 1..groups by equiprobable quantile bands.
std::vector<int> coarse_grain(Span y, int groups) {
  Vec copy(y.begin(), y.end());
  std::sort(copy.begin(), copy.end());
  std::vector<double> th(static_cast<std::size_t>(groups + 1));
  const double step = 1.0 / groups;
  double q = 0.0;
  for (int i = 0; i <= groups; ++i) {
    th[static_cast<std::size_t>(i)] = quantile(copy, q);
    q += step;
  }
  th[0] -= 1.0;
  std::vector<int> labels(y.size(), 0);
  for (int g = 0; g < groups; ++g) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] > th[static_cast<std::size_t>(g)] && y[j] <= th[static_cast<std::size_t>(g + 1)]) labels[j] = g + 1;
    }
  }
  return labels;
}

double transition_matrix_sumdiagcov(Span y, const Vec& ac) {
  const std::size_t n = y.size();
  const std::size_t tau = first_zero(ac, n);
  if (tau == 0 || tau >= n) return kNaN;
  const std::size_t n_down = (n - 1) / tau + 1;
  if (n_down < 2) return kNaN;
  Vec down(n_down);
  for (std::size_t i = 0; i < n_down; ++i) down[i] = y[i * tau];
  const auto labels = coarse_grain(down, 3);
  double t[3][3] = {};
  for (std::size_t j = 0; j + 1 < n_down; ++j) {
    if (labels[j] < 1 || labels[j + 1] < 1) continue;
    t[labels[j] - 1][labels[j + 1] - 1] += 1.0;
  }
  for (auto& row : t) {
    for (double& v : row) v /= static_cast<double>(n_down - 1);
  }
  double sum = 0.0;
  for (int col = 0; col < 3; ++col) {
    const double m = (t[0][col] + t[1][col] + t[2][col]) / 3.0;
    double s = 0.0;
    for (int r = 0; r < 3; ++r) s += (t[r][col] - m) * (t[r][col] - m);
    sum += s / 2.0;
  }
  return sum;
}

// Least-squares cubic spline with one interior knot, as a projection onto
// {1, s, s^2, s^3, (s - k)_+^3} with s scaled to [0, 1].
Vec spline_trend(Span y) {
  const std::size_t n = y.size();
  const double span_len = static_cast<double>(n - 1);
  const double knot = (std::floor(static_cast<double>(n) / 2.0) - 1.0) / span_len;
  std::vector<Vec> q(5, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / span_len;
    const double r = std::max(0.0, s - knot);
    q[0][i] = 1.0;
    q[1][i] = s;
    q[2][i] = s * s;
    q[3][i] = s * s * s;
    q[4][i] = r * r * r;
  }
  std::size_t rank = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    Vec& v = q[k];
    const double norm0 = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < rank; ++j) {
        const double d = std::inner_product(v.begin(), v.end(), q[j].begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * q[j][i];
      }
    }
    const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nv <= 1e-10 * norm0) continue;
    for (double& x : v) x /= nv;
    if (rank != k) q[rank] = v;
    ++rank;
  }
  Vec fit(n, 0.0);
  for (std::size_t j = 0; j < rank; ++j) {
    const double d = std::inner_product(y.begin(), y.end(), q[j].begin(), 0.0);
    for (std::size_t i = 0; i < n; ++i) fit[i] += d * q[j][i];
  }
  return fit;
}

double periodicity_wang(Span y) {
  const std::size_t n = y.size();
  const double th = 0.01;
  const Vec trend = spline_trend(y);
  Vec sub(n);
  for (std::size_t i = 0; i < n; ++i) sub[i] = y[i] - trend[i];
  const auto acmax = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 3.0));
  Vec ac(acmax);
  for (std::size_t k = 1; k <= acmax; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) s += sub[i] * sub[i + k];
    ac[k - 1] = s / static_cast<double>(n - k);
  }
  long last_trough = -1;
  for (std::size_t i = 1; i + 1 < acmax; ++i) {
    const double in = ac[i] - ac[i - 1];
    const double out = ac[i + 1] - ac[i];
    if (in < 0.0 && out > 0.0) {
      last_trough = static_cast<long>(i);
    } else if (in > 0.0 && out < 0.0) {
      if (last_trough < 0) continue;
      if (ac[i] - ac[static_cast<std::size_t>(last_trough)] < th) continue;
      if (ac[i] < 0.0) continue;
      return static_cast<double>(i);
    }
  }
  return 0.0;
}

double embed2_expfit_meandiff(Span y, const Vec& ac) {
  const std::size_t n = y.size();
  std::size_t tau = first_zero(ac, n);
  if (static_cast<double>(tau) > static_cast<double>(n) / 10.0) {
    tau = static_cast<std::size_t>(std::floor(static_cast<double>(n) / 10.0));
  }
  if (n < tau + 2) return kNaN;
  const std::size_t m = n - tau - 1;
  Vec d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = y[i + 1] - y[i];
    const double b = y[i + tau] - y[i + tau + 1];
    d[i] = std::sqrt(a * a + b * b);
  }
  const double l = mean(d);
  const double sd = m > 1 ? stddev(d) : 0.0;
  if (sd < 0.001) return 0.0;
  const double lo = min_of(d), hi = max_of(d);
  const int nbins =
      static_cast<int>(std::ceil((hi - lo) / (3.5 * sd / std::pow(static_cast<double>(m), 1.0 / 3.0))));
  if (nbins <= 0) return 0.0;
  const double step = (hi - lo) / nbins;
  std::vector<int> counts(static_cast<std::size_t>(nbins), 0);
  for (double v : d) {
    int idx = static_cast<int>((v - lo) / step);
    idx = std::clamp(idx, 0, nbins - 1);
    ++counts[static_cast<std::size_t>(idx)];
  }
  double acc = 0.0;
  for (int i = 0; i < nbins; ++i) {
    const double centre = ((lo + step * i) + (lo + step * (i + 1))) / 2.0;
    const double expected = std::exp(-centre / l) / l;
    const double observed = counts[static_cast<std::size_t>(i)] / static_cast<double>(m);
    acc += std::fabs(observed - expected);
  }
  return acc / nbins;
}

double pearson(const double* x, const double* y, std::size_t n) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double gaussian_ami_first_min(Span y) {
  const std::size_t n = y.size();
  const std::size_t tau = std::min<std::size_t>(40, (n + 1) / 2);
  if (tau < 3) return static_cast<double>(tau);
  auto ami = [&](std::size_t lag) {
    const double r = pearson(y.data(), y.data() + lag, n - lag);
    return -0.5 * std::log(1.0 - r * r);
  };
  double prev = ami(1), curr = ami(2);
  for (std::size_t i = 1; i + 1 < tau; ++i) {
    const double next = ami(i + 2);
    if (curr < prev && curr < next) return static_cast<double>(i);
    prev = curr;
    curr = next;
  }
  return static_cast<double>(tau);
}

Vec local_mean_residuals(Span y, std::size_t window) {
  Vec res(y.size() - window);
  for (std::size_t i = 0; i < res.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < window; ++j) s += y[i + j];
    res[i] = y[i + window] - s / static_cast<double>(window);
  }
  return res;
}

double local_mean_tauresrat(Span y, const Vec& ac) {
  if (y.size() <= 2) return kNaN;
  const Vec res = local_mean_residuals(y, 1);
  const Vec res_ac = acf_full(res);
  const double num = static_cast<double>(first_zero(res_ac, res.size()));
  const double den = static_cast<double>(first_zero(ac, y.size()));
  return num / den;
}

double local_mean_stderr(Span y) {
  if (y.size() <= 4) return kNaN;
  return stddev(local_mean_residuals(y, 3));
}

double outlier_include(Span y, double sign) {
  const std::size_t n = y.size();
  const double inc = 0.01;
  Vec work(n);
  std::size_t tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = sign * y[i];
    if (work[i] >= 0.0) ++tot;
  }
  const double top = max_of(work);
  if (top < inc) return 0.0;
  const int n_thresh = static_cast<int>(top / inc + 1.0);

  std::vector<std::size_t> counts(static_cast<std::size_t>(n_thresh));
  for (int j = 0; j < n_thresh; ++j) {
    const double thr = j * inc;
    counts[static_cast<std::size_t>(j)] =
        static_cast<std::size_t>(std::count_if(work.begin(), work.end(), [&](double v) { return v >= thr; }));
  }
  int mj = 0;
  for (int j = 0; j < n_thresh; ++j) {
    const double pct = (static_cast<double>(counts[static_cast<std::size_t>(j)]) - 1.0) * 100.0 /
                       static_cast<double>(tot);
    if (pct > 2.0) mj = j;
  }
  int fbi = n_thresh - 1;
  for (int j = 0; j < n_thresh; ++j) {
    if (counts[static_cast<std::size_t>(j)] == 1) {
      fbi = j;
      break;
    }
  }
  const int limit = std::min(mj, fbi);
  Vec timing(static_cast<std::size_t>(limit + 1));
  Vec positions;
  positions.reserve(n);
  for (int j = 0; j <= limit; ++j) {
    const double thr = j * inc;
    positions.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (work[i] >= thr) positions.push_back(static_cast<double>(i + 1));
    }
    timing[static_cast<std::size_t>(j)] = median(positions) / (static_cast<double>(n) / 2.0) - 1.0;
  }
  return median(timing);
}

struct WelchRect {
  Vec w;
  Vec sw;
};

WelchRect welch_rect(Span y) {
  const std::size_t n = y.size();
  const std::size_t nfft = next_pow2(n);
  const double m = mean(y);
  Vec centred(n);
  for (std::size_t i = 0; i < n; ++i) centred[i] = y[i] - m;
  const auto spec = rfft(centred, nfft);
  const std::size_t nout = nfft / 2 + 1;
  constexpr double kPiApprox = 3.14159265359;
  const double df = 1.0 / static_cast<double>(nfft);
  WelchRect out{Vec(nout), Vec(nout)};
  for (std::size_t i = 0; i < nout; ++i) {
    double p = std::norm(spec[i]) / static_cast<double>(n);
    if (i > 0 && i + 1 < nout) p *= 2.0;
    out.w[i] = 2.0 * kPiApprox * (static_cast<double>(i) * df);
    out.sw[i] = p / (2.0 * kPiApprox);
  }
  return out;
}

double spectral_centroid(const WelchRect& s) {
  Vec cs(s.sw.size());
  std::partial_sum(s.sw.begin(), s.sw.end(), cs.begin());
  const double half = cs.back() * 0.5;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] > half) return s.w[i];
  }
  return 0.0;
}

double spectral_area_low_fifth(const WelchRect& s) {
  const double dw = s.w[1] - s.w[0];
  double a = 0.0;
  for (std::size_t i = 0; i < s.sw.size() / 5; ++i) a += s.sw[i];
  return a * dw;
}

double motif_three_entropy(Span y) {
  const std::size_t n = y.size();
  const auto labels = coarse_grain(y, 3);
  double pairs[3][3] = {};
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (labels[t] < 1 || labels[t + 1] < 1) continue;
    pairs[labels[t] - 1][labels[t + 1] - 1] += 1.0;
  }
  double h = 0.0;
  for (auto& row : pairs) {
    for (double c : row) {
      const double p = c / (static_cast<double>(n) - 1.0);
      if (p > 0.0) h -= p * std::log(p);
    }
  }
  return h;
}

void linreg(std::size_t n, const double* x, const double* y, double& m, double& b) {
  double sx = 0.0, sx2 = 0.0, sxy = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sx2 += x[i] * x[i];
    sxy += x[i] * y[i];
    sy += y[i];
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sx2 - sx * sx;
  if (denom == 0.0) {
    m = b = 0.0;
    return;
  }
  m = (dn * sxy - sx * sy) / denom;
  b = (sy * sx2 - sx * sxy) / denom;
}

enum class Fluct { RangeFit, Dfa };

double fluctuation_proportion(Span y, std::size_t lag, Fluct how) {
  const std::size_t n = y.size();
  constexpr int steps = 50;
  constexpr std::size_t min_points = 6;
  const double lo = std::log(5.0);
  const double hi = std::log(static_cast<double>(n / 2));
  const double dstep = (hi - lo) / (steps - 1);
  std::vector<long> taus;
  for (int i = 0; i < steps; ++i) {
    const long t = std::lround(std::exp(lo + i * dstep));
    if (taus.empty() || taus.back() != t) taus.push_back(t);
  }
  const std::size_t ntt = taus.size();
  if (ntt < 2 * min_points) return kNaN;

  const std::size_t size_cs = n / lag;
  Vec cs(size_cs);
  cs[0] = y[0];
  for (std::size_t i = 0; i + 1 < size_cs; ++i) cs[i + 1] = cs[i] + y[(i + 1) * lag];

  Vec log_t(ntt), log_f(ntt);
  for (std::size_t k = 0; k < ntt; ++k) {
    const auto t = static_cast<std::size_t>(taus[k]);
    const std::size_t buffers = size_cs / t;
    Vec xs(t);
    for (std::size_t j = 0; j < t; ++j) xs[j] = static_cast<double>(j + 1);
    double acc = 0.0;
    for (std::size_t b = 0; b < buffers; ++b) {
      const double* w = cs.data() + b * t;
      double m = 0.0, c = 0.0;
      linreg(t, xs.data(), w, m, c);
      if (how == Fluct::Dfa) {
        for (std::size_t j = 0; j < t; ++j) {
          const double r = w[j] - (m * static_cast<double>(j + 1) + c);
          acc += r * r;
        }
      } else {
        double mx = -std::numeric_limits<double>::infinity();
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < t; ++j) {
          const double r = w[j] - (m * static_cast<double>(j + 1) + c);
          mx = std::max(mx, r);
          mn = std::min(mn, r);
        }
        acc += (mx - mn) * (mx - mn);
      }
    }
    const double f = how == Fluct::Dfa ? std::sqrt(acc / static_cast<double>(buffers * t))
                                       : std::sqrt(acc / static_cast<double>(buffers));
    log_t[k] = std::log(static_cast<double>(t));
    log_f[k] = std::log(f);
  }

  auto resid_norm = [&](std::size_t first, std::size_t count) {
    double m = 0.0, b = 0.0;
    linreg(count, log_t.data() + first, log_f.data() + first, m, b);
    double s = 0.0;
    for (std::size_t j = first; j < first + count; ++j) {
      const double r = log_t[j] * m + b - log_f[j];
      s += r * r;
    }
    return std::sqrt(s);
  };
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = min_points; i + min_points <= ntt; ++i) {
    const double e = resid_norm(0, i) + resid_norm(i - 1, ntt - i + 1);
    if (e < best) {
      best = e;
      best_i = i;
    }
  }
  return static_cast<double>(best_i) / static_cast<double>(ntt);
}

}  // namespace

const std::array<std::string_view, kCatch22Count>& catch22_names() {
  static const std::array<std::string_view, kCatch22Count> names = {
      "DN_HistogramMode_5",
      "DN_HistogramMode_10",
      "CO_f1ecac",
      "CO_FirstMin_ac",
      "CO_HistogramAMI_even_2_5",
      "CO_trev_1_num",
      "MD_hrv_classic_pnn40",
      "SB_BinaryStats_mean_longstretch1",
      "SB_TransitionMatrix_3ac_sumdiagcov",
      "PD_PeriodicityWang_th0_01",
      "CO_Embed2_Dist_tau_d_expfit_meandiff",
      "IN_AutoMutualInfoStats_40_gaussian_fmmi",
      "FC_LocalSimple_mean1_tauresrat",
      "DN_OutlierInclude_p_001_mdrmd",
      "DN_OutlierInclude_n_001_mdrmd",
      "SP_Summaries_welch_rect_area_5_1",
      "SB_BinaryStats_diff_longstretch0",
      "SB_MotifThree_quantile_hh",
      "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
      "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
      "SP_Summaries_welch_rect_centroid",
      "FC_LocalSimple_mean3_stderr",
  };
  return names;
}

bool Catch22Vector::all_invalid() const {
  return std::all_of(invalid.begin(), invalid.end(), [](bool b) { return b; });
}

bool Catch22Vector::any_invalid() const {
  return std::any_of(invalid.begin(), invalid.end(), [](bool b) { return b; });
}

std::vector<double> zscore(std::span<const double> series, StdDenominator denom) {
  const std::size_t n = series.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "z-score needs at least 2 samples");
  wide sum = 0;
  for (double v : series) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "z-score input contains non-finite values");
    sum += v;
  }
  const wide m = sum / static_cast<wide>(n);
  wide ss = 0;
  for (double v : series) {
    const wide d = static_cast<wide>(v) - m;
    ss += d * d;
  }
  if (ss == 0) fail(ErrorKind::DegenerateSeries, "constant series has zero variance");
  const wide dof = denom == StdDenominator::Sample ? static_cast<wide>(n - 1) : static_cast<wide>(n);
  const wide sd = wide_sqrt(ss / dof);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>((static_cast<wide>(series[i]) - m) / sd);
  return out;
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
  if (max_lag >= series.size()) {
    fail(ErrorKind::InvalidArgument, "max lag " + std::to_string(max_lag) + " must be below series length " +
                                         std::to_string(series.size()));
  }
  const double m = mean(series);
  double c0 = 0.0;
  for (double v : series) c0 += (v - m) * (v - m);
  std::vector<double> out(max_lag + 1, 0.0);
  out[0] = 1.0;
  if (c0 == 0.0) return out;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < series.size(); ++i) s += (series[i] - m) * (series[i + k] - m);
    out[k] = s / c0;
  }
  return out;
}

Catch22Vector compute_catch22(std::span<const double> series) {
  Catch22Vector out;
  std::vector<double> z;
  try {
    z = zscore(series, StdDenominator::Sample);
  } catch (const Error&) {
    out.values.fill(kNaN);
    out.invalid.fill(true);
    return out;
  }
  return compute_catch22_standardized(z);
}

Catch22Vector compute_catch22_standardized(std::span<const double> z) {
  Catch22Vector out;
  out.values.fill(kNaN);
  out.invalid.fill(true);
  const std::size_t n = z.size();
  if (n < 3 || std::any_of(z.begin(), z.end(), [](double v) { return !std::isfinite(v); })) return out;
  if (min_of(z) == max_of(z)) return out;

  const Vec ac = acf_full(z);
  const WelchRect spec = welch_rect(z);
  auto set = [&](std::size_t k, auto&& fn) {
    double v = kNaN;
    try {
      v = fn();
    } catch (const std::exception&) {
      v = kNaN;
    }
    out.values[k] = v;
    out.invalid[k] = !std::isfinite(v);
    if (out.invalid[k]) out.values[k] = kNaN;
  };
  set(0, [&] { return histogram_mode(z, 5); });
  set(1, [&] { return histogram_mode(z, 10); });
  set(2, [&] { return f1ecac(ac); });
  set(3, [&] { return first_min_ac(ac); });
  set(4, [&] { return histogram_ami_even(z); });
  set(5, [&] { return trev(z); });
  set(6, [&] { return pnn40(z); });
  set(7, [&] { return mean_longstretch1(z); });
  set(8, [&] { return transition_matrix_sumdiagcov(z, ac); });
  set(9, [&] { return periodicity_wang(z); });
  set(10, [&] { return embed2_expfit_meandiff(z, ac); });
  set(11, [&] { return gaussian_ami_first_min(z); });
  set(12, [&] { return local_mean_tauresrat(z, ac); });
  set(13, [&] { return outlier_include(z, 1.0); });
  set(14, [&] { return outlier_include(z, -1.0); });
  set(15, [&] { return spectral_area_low_fifth(spec); });
  set(16, [&] { return diff_longstretch0(z); });
  set(17, [&] { return motif_three_entropy(z); });
  set(18, [&] { return fluctuation_proportion(z, 1, Fluct::RangeFit); });
  set(19, [&] { return fluctuation_proportion(z, 2, Fluct::Dfa); });
  set(20, [&] { return spectral_centroid(spec); });
  set(21, [&] { return local_mean_stderr(z); });
  return out;
}

}  // namespace cogload
