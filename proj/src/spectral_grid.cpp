#include "cornerlab/spectral_grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace cornerlab {

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Planning is not thread safe in FFTW; execution on new arrays is.
std::mutex planner_mutex;

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const std::size_t count = static_cast<std::size_t>(n) * n;
  auto* scratch = fftw_alloc_complex(count);
  Plans p;
  p.forward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  return cache.emplace(n, p).first->second;
}

fftw_complex* raw(CArray& a) { return reinterpret_cast<fftw_complex*>(a.data()); }

CArray twist_phase(const Grid& g, double sign) {
  const double xi0 = pi / g.L;
  CArray out(g.size());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const Vec2 x = g.point(i, j);
      out(g.index(i, j)) = std::exp(I * (sign * xi0 * (x.x + x.y)));
    }
  return out;
}

const CArray& cached_twist(const Grid& g, double sign) {
  static std::mutex m;
  static std::map<std::tuple<int, double, double>, CArray> cache;
  std::lock_guard lock(m);
  auto key = std::make_tuple(g.n, g.L, sign);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, twist_phase(g, sign)).first;
  return it->second;
}

double offset(const Grid& g, Basis basis) { return basis == Basis::Twisted ? pi / g.L : 0.0; }

}  // namespace

CArray sample(const Grid& g, const std::function<cplx(Vec2)>& f) {
  CArray out(g.size());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) out(g.index(i, j)) = f(g.point(i, j));
  return out;
}

RArray sample_real(const Grid& g, const std::function<double(Vec2)>& f) {
  RArray out(g.size());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) out(g.index(i, j)) = f(g.point(i, j));
  return out;
}

// FFTW is row-major with the last index fastest, which is our i (x1) index.
void fft_forward(CArray& a, int n) { fftw_execute_dft(plans_for(n).forward, raw(a), raw(a)); }

void fft_backward(CArray& a, int n) {
  fftw_execute_dft(plans_for(n).backward, raw(a), raw(a));
  a /= static_cast<double>(n) * n;
}

CArray apply_symbol(const CArray& f, const Grid& g, Basis basis,
                    const std::function<cplx(double, double)>& symbol) {
  CArray work = f;
  if (basis == Basis::Twisted) work *= cached_twist(g, -1.0);
  fft_forward(work, g.n);
  const double off = offset(g, basis);
  for (int j = 0; j < g.n; ++j) {
    const double xi2 = g.frequency(j) + off;
    for (int i = 0; i < g.n; ++i) work(g.index(i, j)) *= symbol(g.frequency(i) + off, xi2);
  }
  fft_backward(work, g.n);
  if (basis == Basis::Twisted) work *= cached_twist(g, 1.0);
  return work;
}

CArray derivative(const CArray& f, const Grid& g, int axis, Basis basis) {
  const int nyq = g.n / 2;
  const bool twisted = basis == Basis::Twisted;
  return apply_symbol(f, g, basis, [&, axis](double a, double b) -> cplx {
    const double xi = axis == 0 ? a : b;
    // Periodic Nyquist mode has no well-defined odd derivative.
    if (!twisted && std::abs(std::abs(xi) - 2 * pi * nyq / g.L) < 1e-9 * nyq / g.L) return 0.0;
    return I * xi;
  });
}

CArray laplacian(const CArray& f, const Grid& g, Basis basis) {
  return apply_symbol(f, g, basis, [](double a, double b) { return cplx(-(a * a + b * b)); });
}

double min_symbol(const Grid& g, Basis basis, const std::function<cplx(double, double)>& symbol) {
  const double off = offset(g, basis);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      best = std::min(best, std::abs(symbol(g.frequency(i) + off, g.frequency(j) + off)));
  return best;
}

double lp_norm(const CArray& f, const Grid& g, double p) {
  return std::pow((f.abs().pow(p)).sum() * g.h() * g.h(), 1.0 / p);
}

double lp_norm(const CArray& f, const Grid& g, double p, const std::function<bool(Vec2)>& mask) {
  double acc = 0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      if (mask(g.point(i, j))) acc += std::pow(std::abs(f(g.index(i, j))), p);
  return std::pow(acc * g.h() * g.h(), 1.0 / p);
}

}  // namespace cornerlab
