#include "weightlab/pdo.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace weightlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalized in-place DFT over the grid's axes; sign -1 forward, +1 backward.
void dft(const GridSpec& grid, std::vector<Complex>& data, int sign) {
  const int N = static_cast<int>(grid.points_per_axis());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = grid.dim() == 1 ? fftw_plan_dft_1d(N, buf, buf, sign, FFTW_ESTIMATE)
                           : fftw_plan_dft_2d(N, N, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("FFT plan creation failed");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Roots of unity e^{2 pi i r / N}, r = 0..N-1.
std::vector<Complex> unit_roots(std::size_t N) {
  std::vector<Complex> out(N);
  for (std::size_t r = 0; r < N; ++r) {
    const double t = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(N);
    out[r] = Complex(std::cos(t), std::sin(t));
  }
  return out;
}

std::vector<Complex> symbol_on_frequencies(const Symbol& s, const GridSpec& grid, const Vec& x) {
  std::vector<Complex> out(grid.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = s(x, grid.frequency_point(m));
  return out;
}

void check_finite(std::span<const Complex> v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw NumericalError(what + " produced a non-finite value at index " + std::to_string(i));
    }
  }
}

double norm_of(const Vec& xi, int n) { return norm(xi, n); }

}  // namespace

// --- catalog -----------------------------------------------------------------

std::vector<std::string> builtin_symbol_ids() {
  return {"identity", "riesz", "var", "bessel", "smoothing", "band", "shift"};
}

Symbol make_symbol(const std::string& id, double parameter) {
  Symbol s;
  s.name = id;
  if (id == "identity") {
    s.evaluate = [](const Vec&, const Vec&) { return Complex(1.0); };
  } else if (id == "riesz") {
    s.evaluate = [](const Vec&, const Vec& xi) {
      return Complex(xi[0] / std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]));
    };
  } else if (id == "var") {
    s.x_dependent = true;
    s.evaluate = [](const Vec& x, const Vec& xi) {
      const double r = std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]);
      return Complex((1.0 + std::exp(-(x[0] * x[0] + x[1] * x[1]))) * xi[0] / r);
    };
  } else if (id == "bessel") {
    const double sp = parameter;
    s.name = "bessel";
    s.order = -sp;
    s.evaluate = [sp](const Vec&, const Vec& xi) {
      return Complex(std::pow(1.0 + xi[0] * xi[0] + xi[1] * xi[1], -sp / 2.0));
    };
  } else if (id == "smoothing") {
    const CutoffPair c = build_cutoffs();
    s.support_radius = 2.0;
    s.evaluate = [c](const Vec&, const Vec& xi) { return Complex(c.eta0(std::hypot(xi[0], xi[1]))); };
  } else if (id == "band") {
    require(parameter > 0.0, "band symbol needs a radius R > 0");
    const double R = parameter;
    s.support_radius = R;
    s.evaluate = [R](const Vec&, const Vec& xi) { return Complex(std::hypot(xi[0], xi[1]) <= R ? 1.0 : 0.0); };
  } else if (id == "shift") {
    const double a = parameter;
    s.evaluate = [a](const Vec&, const Vec& xi) { return std::polar(1.0, 2.0 * M_PI * a * xi[0]); };
  } else {
    throw PreconditionError("unknown symbol id '" + id + "'");
  }
  return s;
}

// --- application -------------------------------------------------------------

SampledFunction apply_pdo(const Symbol& symbol, const SampledFunction& f) {
  const auto& grid = f.grid();
  const std::size_t N = grid.points_per_axis();
  const double norm_factor = 1.0 / static_cast<double>(grid.size());
  std::vector<Complex> F(f.values().begin(), f.values().end());
  dft(grid, F, FFTW_FORWARD);

  if (!symbol.x_dependent) {
    const auto sigma = symbol_on_frequencies(symbol, grid, Vec{0.0, 0.0});
    check_finite(sigma, "symbol " + symbol.name);
    for (std::size_t m = 0; m < F.size(); ++m) F[m] *= sigma[m];
    dft(grid, F, FFTW_BACKWARD);
    for (auto& v : F) v *= norm_factor;
    return SampledFunction(grid, std::move(F));
  }

  // Direct summation: Tf(x_i) = N^-n sum_m sigma(x_i, xi_m) F_m w^{i.m}.
  const auto roots = unit_roots(N);
  std::vector<Complex> out(grid.size());
  std::vector<Vec> freqs(grid.size());
  for (std::size_t m = 0; m < freqs.size(); ++m) freqs[m] = grid.frequency_point(m);
  const int n = grid.dim();
  parallel_for(grid.size(), [&](std::size_t i) {
    const Vec x = grid.point(i);
    const std::size_t i0 = n == 1 ? i : i / N, i1 = n == 1 ? 0 : i % N;
    Complex acc = 0.0;
    for (std::size_t m = 0; m < freqs.size(); ++m) {
      const std::size_t m0 = n == 1 ? m : m / N, m1 = n == 1 ? 0 : m % N;
      const std::size_t r = (i0 * m0 + i1 * m1) % N;
      acc += symbol(x, freqs[m]) * F[m] * roots[r];
    }
    out[i] = acc * norm_factor;
  });
  check_finite(out, "symbol " + symbol.name);
  return SampledFunction(grid, std::move(out));
}

SampledFunction apply_pdo_adjoint(const Symbol& symbol, const SampledFunction& g) {
  const auto& grid = g.grid();
  const std::size_t N = grid.points_per_axis();
  const double norm_factor = 1.0 / static_cast<double>(grid.size());
  if (!symbol.x_dependent) {
    std::vector<Complex> F(g.values().begin(), g.values().end());
    dft(grid, F, FFTW_FORWARD);
    const auto sigma = symbol_on_frequencies(symbol, grid, Vec{0.0, 0.0});
    for (std::size_t m = 0; m < F.size(); ++m) F[m] *= std::conj(sigma[m]);
    dft(grid, F, FFTW_BACKWARD);
    for (auto& v : F) v *= norm_factor;
    return SampledFunction(grid, std::move(F));
  }
  // G_m = sum_i conj(sigma(x_i, xi_m)) w^{-i.m} g_i, then inverse transform.
  const auto roots = unit_roots(N);
  const int n = grid.dim();
  std::vector<Vec> points(grid.size());
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = grid.point(i);
  std::vector<Complex> G(grid.size());
  parallel_for(grid.size(), [&](std::size_t m) {
    const Vec xi = grid.frequency_point(m);
    const std::size_t m0 = n == 1 ? m : m / N, m1 = n == 1 ? 0 : m % N;
    Complex acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::size_t i0 = n == 1 ? i : i / N, i1 = n == 1 ? 0 : i % N;
      const std::size_t r = (N - (i0 * m0 + i1 * m1) % N) % N;
      acc += std::conj(symbol(points[i], xi)) * g[i] * roots[r];
    }
    G[m] = acc;
  });
  dft(grid, G, FFTW_BACKWARD);
  for (auto& v : G) v *= norm_factor;
  return SampledFunction(grid, std::move(G));
}

double multiplier_sup(const Symbol& symbol, const GridSpec& grid) {
  require(!symbol.x_dependent, "multiplier_sup needs an x-independent symbol");
  double best = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) best = std::max(best, std::abs(symbol(Vec{0.0, 0.0}, grid.frequency_point(m))));
  return best;
}

// --- symbol class ------------------------------------------------------------

const SymbolConstant& SymbolClassReport::at(std::array<int, 2> alpha, std::array<int, 2> beta) const {
  for (const auto& c : constants) {
    if (c.alpha == alpha && c.beta == beta) return c;
  }
  throw PreconditionError("multi-index pair not present in the report");
}

namespace {

double binomial(int k, int j) {
  double r = 1.0;
  for (int t = 1; t <= j; ++t) r = r * (k - j + t) / t;
  return r;
}

// Mixed central difference of order k[v] along each of the four variables
// (x0, x1, xi0, xi1) with steps s[v].
Complex mixed_difference(const Symbol& sym, const Vec& x, const Vec& xi, const std::array<int, 4>& k,
                         const std::array<double, 4>& s) {
  Complex acc = 0.0;
  std::array<int, 4> j{0, 0, 0, 0};
  while (true) {
    double coeff = 1.0;
    double p[4] = {x[0], x[1], xi[0], xi[1]};
    for (int v = 0; v < 4; ++v) {
      if (k[v] == 0) continue;
      coeff *= ((j[v] % 2) ? -1.0 : 1.0) * binomial(k[v], j[v]) / std::pow(s[v], k[v]);
      p[v] += (0.5 * k[v] - j[v]) * s[v];
    }
    acc += coeff * sym(Vec{p[0], p[1]}, Vec{p[2], p[3]});
    int v = 0;
    while (v < 4) {
      if (j[v] < k[v]) {
        ++j[v];
        break;
      }
      j[v] = 0;
      ++v;
    }
    if (v == 4) break;
  }
  return acc;
}

std::vector<double> subsample(const std::vector<double>& v, std::size_t count) {
  if (v.size() <= count) return v;
  std::vector<double> out;
  for (std::size_t t = 0; t < count; ++t) out.push_back(v[t * (v.size() - 1) / (count - 1)]);
  return out;
}

}  // namespace

SymbolClassReport symbol_class_check(const Symbol& symbol, const GridSpec& grid, double m, double delta,
                                     int max_order) {
  require(max_order >= 0 && max_order <= 3, "max_order must be in 0..3 (finite differences lose stability above)");
  const int n = grid.dim();
  const std::size_t N = grid.points_per_axis();
  std::vector<double> xs_axis, xis_axis;
  for (std::size_t k = 0; k < N; ++k) xs_axis.push_back(grid.coord(k));
  for (std::size_t k = 0; k < N; ++k) xis_axis.push_back(grid.frequency(k));
  std::sort(xis_axis.begin(), xis_axis.end());
  xs_axis = subsample(xs_axis, n == 1 ? 33 : 9);
  if (!symbol.x_dependent) xs_axis = {0.0};
  xis_axis = subsample(xis_axis, n == 1 ? 513 : 33);

  std::vector<Vec> xs, xis;
  for (double a : xs_axis) {
    if (n == 1) {
      xs.push_back({a, 0.0});
      continue;
    }
    for (double b : xs_axis) xs.push_back({a, b});
  }
  for (double a : xis_axis) {
    if (n == 1) {
      xis.push_back({a, 0.0});
      continue;
    }
    for (double b : xis_axis) xis.push_back({a, b});
  }
  const double half = grid.max_frequency() / 2.0;

  SymbolClassReport report;
  for (int a0 = 0; a0 <= max_order; ++a0)
    for (int a1 = 0; a1 <= (n == 1 ? 0 : max_order); ++a1)
      for (int b0 = 0; b0 <= max_order; ++b0)
        for (int b1 = 0; b1 <= (n == 1 ? 0 : max_order); ++b1) {
          if (a0 + a1 + b0 + b1 > max_order) continue;
          SymbolConstant c;
          c.alpha = {a0, a1};
          c.beta = {b0, b1};
          const double expo = -m + (b0 + b1) - delta * (a0 + a1);
          const std::array<int, 4> k{a0, a1, b0, b1};
          for (const auto& x : xs) {
            for (const auto& xi : xis) {
              const double r = norm_of(xi, n);
              const std::array<double, 4> s{0.01, 0.01, 0.01 * (1.0 + r), 0.01 * (1.0 + r)};
              const Complex d = mixed_difference(symbol, x, xi, k, s);
              if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
                std::ostringstream os;
                os << "non-finite difference quotient for alpha=(" << a0 << "," << a1 << ") beta=(" << b0 << ","
                   << b1 << ")";
                throw NumericalError(os.str());
              }
              const double v = std::abs(d) * std::pow(1.0 + r, expo);
              c.value = std::max(c.value, v);
              if (r <= half) c.half_band = std::max(c.half_band, v);
            }
          }
          c.out_of_class = c.value > 1.25 * c.half_band + 1e-6;
          report.in_class = report.in_class && !c.out_of_class;
          report.constants.push_back(c);
        }
  return report;
}

// --- cutoffs -------------------------------------------------------------------

double CutoffPair::smooth_step(double t) const {
  auto chi = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = chi(t), b = chi(1.0 - t);
  return a / (a + b);
}

double CutoffPair::eta0(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return 1.0 - smooth_step(r - 1.0);
}

double CutoffPair::psi(double r) const { return eta0(r) - eta0(2.0 * r); }

CutoffPair build_cutoffs() { return CutoffPair{}; }

double partition_check(const GridSpec& grid, int J) {
  require(J >= 0, "J must be >= 0");
  const CutoffPair c;
  const double limit = std::ldexp(1.0, J);
  double worst = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double r = norm(grid.frequency_point(m), grid.dim());
    if (r > limit) continue;
    double total = c.eta0(r);
    for (int j = 1; j <= J; ++j) total += c.psi(std::ldexp(r, -j));
    worst = std::max(worst, std::abs(1.0 - total));
  }
  return worst;
}

Symbol smoothing_piece(const Symbol& symbol) {
  Symbol s = symbol;
  s.name = symbol.name + "*eta0";
  s.support_radius = 2.0;
  const CutoffPair c;
  auto base = symbol.evaluate;
  s.evaluate = [base, c](const Vec& x, const Vec& xi) { return base(x, xi) * c.eta0(std::hypot(xi[0], xi[1])); };
  return s;
}

Symbol band_piece(const Symbol& symbol, int j) {
  Symbol s = symbol;
  s.name = symbol.name + "*psi_" + std::to_string(j);
  s.support_radius = std::ldexp(2.0, j);
  const CutoffPair c;
  auto base = symbol.evaluate;
  s.evaluate = [base, c, j](const Vec& x, const Vec& xi) {
    return base(x, xi) * c.psi(std::ldexp(std::hypot(xi[0], xi[1]), -j));
  };
  return s;
}

LPDecomposition lp_decompose(const Symbol& symbol, const SampledFunction& f, int J) {
  const auto& grid = f.grid();
  require(J >= 0 && std::ldexp(1.0, J) >= grid.max_frequency(),
          "2^J must be at least the largest grid frequency (Nyquist)");
  LPDecomposition out;
  out.J = J;
  const auto full = apply_pdo(symbol, f);
  out.smoothing = apply_pdo(smoothing_piece(symbol), f);
  auto sum = out.smoothing;
  for (int j = 1; j <= J; ++j) {
    out.bands.push_back(apply_pdo(band_piece(symbol, j), f));
    sum = sum + out.bands.back();
  }
  const double denom = full.max_abs();
  const double diff = (full - sum).max_abs();
  out.residual = denom == 0.0 ? diff : diff / denom;
  return out;
}

// --- kernels -------------------------------------------------------------------

namespace {

// (2L)^{-n} inverse transform of the symbol's values at x, reordered so the
// displacement index runs over [-N/2, N/2) per axis.
std::vector<Complex> kernel_values(const std::vector<Complex>& sigma, const GridSpec& grid) {
  std::vector<Complex> data = sigma;
  dft(grid, data, FFTW_BACKWARD);
  const double scale = std::pow(2.0 * grid.half_width(), -grid.dim());
  const std::size_t N = grid.points_per_axis();
  const std::size_t half = N / 2;
  std::vector<Complex> out(data.size());
  auto slot = [&](std::size_t t) { return (t + N - half) % N; };  // output index t -> m = t - N/2
  if (grid.dim() == 1) {
    for (std::size_t t = 0; t < N; ++t) out[t] = data[slot(t)] * scale;
  } else {
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) out[a * N + b] = data[slot(a) * N + slot(b)] * scale;
  }
  return out;
}

double displacement(const GridSpec& grid, std::size_t t) {
  return (static_cast<double>(t) - static_cast<double>(grid.points_per_axis() / 2)) * grid.spacing();
}

double decay_constant(const Symbol& symbol, const GridSpec& grid, double k, const std::vector<Vec>& xs,
                      double* z0, double* z0_bound) {
  const std::size_t N = grid.points_per_axis();
  double best = 0.0;
  for (const auto& x : xs) {
    const auto sigma = symbol_on_frequencies(symbol, grid, x);
    const auto K = kernel_values(sigma, grid);
    for (std::size_t t = 0; t < K.size(); ++t) {
      const double za = displacement(grid, grid.dim() == 1 ? t : t / N);
      const double zb = grid.dim() == 1 ? 0.0 : displacement(grid, t % N);
      best = std::max(best, std::abs(K[t]) * std::pow(1.0 + std::hypot(za, zb), k));
    }
    if (z0) {
      const std::size_t centre = grid.dim() == 1 ? N / 2 : (N / 2) * N + N / 2;
      *z0 = std::max(*z0, std::abs(K[centre]));
      double s = 0.0;
      for (const auto& v : sigma) s += std::abs(v);
      *z0_bound = std::max(*z0_bound, s * std::pow(2.0 * grid.half_width(), -grid.dim()));
    }
  }
  return best;
}

}  // namespace

KernelSample kernel(const Symbol& symbol, const GridSpec& grid, const Vec& x) {
  KernelSample ks;
  ks.x = x;
  ks.grid = grid;
  for (std::size_t t = 0; t < grid.points_per_axis(); ++t) ks.z.push_back(displacement(grid, t));
  ks.values = kernel_values(symbol_on_frequencies(symbol, grid, x), grid);
  return ks;
}

KernelDecayReport kernel_decay_check(const Symbol& symbol, const GridSpec& grid, double exponent,
                                     const std::vector<Vec>& xs) {
  require(symbol.support_radius.has_value(),
          "the (1+|z|)^-k kernel bound applies to smoothing pieces only; symbol '" + symbol.name +
              "' has no compact xi-support");
  require(!xs.empty(), "kernel decay check needs at least one base point x");
  KernelDecayReport r;
  r.exponent = exponent;
  r.constant = decay_constant(symbol, grid, exponent, xs, &r.z0_value, &r.z0_bound);
  r.constant_wide = decay_constant(symbol, grid.widened(), exponent, xs, nullptr, nullptr);
  r.stable = r.constant_wide < 1.1 * r.constant;
  return r;
}

Lemma32Report lemma32_check(const Symbol& symbol, const GridSpec& grid, int j_lo, int j_hi,
                            const std::vector<int>& powers, double tolerance, Vec x0) {
  require(j_lo <= j_hi && j_lo >= 1, "j-range must be nonempty and start at j >= 1");
  require(std::ldexp(2.0, j_hi) <= static_cast<double>(grid.points_per_axis() / 2) / (2.0 * grid.half_width()),
          "band 2^{j+1} exceeds the grid Nyquist frequency");
  const std::size_t N = grid.points_per_axis();
  const int n = grid.dim();
  const double h = grid.spacing();
  Lemma32Report report;
  report.tolerance = tolerance;

  std::vector<std::vector<Complex>> kernels;
  for (int j = j_lo; j <= j_hi; ++j) kernels.push_back(kernel_values(symbol_on_frequencies(band_piece(symbol, j), grid, x0), grid));

  for (int power : powers) {
    SlopeFit fit;
    fit.power = power;
    fit.target = n + symbol.order - power;
    for (int j = j_lo; j <= j_hi; ++j) {
      const auto& K = kernels[static_cast<std::size_t>(j - j_lo)];
      double D = 0.0;
      for (std::size_t t = 0; t < K.size(); ++t) {
        const double za = displacement(grid, n == 1 ? t : t / N);
        const double zb = n == 1 ? 0.0 : displacement(grid, t % N);
        const double y = std::hypot(za, zb);
        if (power > 0 && y < 2.0 * h) continue;
        D = std::max(D, std::pow(y, power) * std::abs(K[t]));
      }
      fit.js.push_back(j);
      fit.log2_values.push_back(std::log2(D));
    }
    // least-squares slope of log2 D against j
    const double cnt = static_cast<double>(fit.js.size());
    const double mj = std::accumulate(fit.js.begin(), fit.js.end(), 0.0) / cnt;
    const double mv = std::accumulate(fit.log2_values.begin(), fit.log2_values.end(), 0.0) / cnt;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < fit.js.size(); ++k) {
      sxy += (fit.js[k] - mj) * (fit.log2_values[k] - mv);
      sxx += (fit.js[k] - mj) * (fit.js[k] - mj);
    }
    fit.slope = sxx == 0.0 ? 0.0 : sxy / sxx;
    fit.pass = std::isfinite(fit.slope) && std::abs(fit.slope - fit.target) <= tolerance;
    report.pass = report.pass && fit.pass;
    report.fits.push_back(std::move(fit));
  }
  return report;
}

}  // namespace weightlab
