#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace kgbench {

using cplx = std::complex<double>;

// Shared FFTW plan cache. Plan creation is not thread-safe, execution on
// caller-owned buffers is, so plans are created once under a lock and then
// executed via fftw_execute_dft. FFTW_ESTIMATE keeps planning deterministic.
namespace fft_detail {

struct PlanKey {
  int n;
  int howmany;
  int stride;
  int dist;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(n, howmany, stride, dist, sign) <
           std::tie(o.n, o.howmany, o.stride, o.dist, o.sign);
  }
};

inline fftw_plan get_plan(const PlanKey& key) {
  static std::map<PlanKey, fftw_plan> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> buf(static_cast<size_t>(key.howmany) * key.dist +
                        static_cast<size_t>(key.n) * key.stride + 1);
  int n = key.n;
  fftw_plan p = fftw_plan_many_dft(
      1, &n, key.howmany, reinterpret_cast<fftw_complex*>(buf.data()), nullptr,
      key.stride, key.dist, reinterpret_cast<fftw_complex*>(buf.data()),
      nullptr, key.stride, key.dist, key.sign, FFTW_ESTIMATE);
  cache.emplace(key, p);
  return p;
}

}  // namespace fft_detail

// In-place unnormalized transforms on contiguous length-n data.
inline void fft_forward_raw(cplx* data, int n, int howmany = 1, int stride = 1,
                            int dist = 0) {
  fftw_plan p = fft_detail::get_plan({n, howmany, stride, dist, FFTW_FORWARD});
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

inline void fft_backward_raw(cplx* data, int n, int howmany = 1,
                             int stride = 1, int dist = 0) {
  fftw_plan p = fft_detail::get_plan({n, howmany, stride, dist, FFTW_BACKWARD});
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

// Forward carries the 1/N factor so coefficients match the discrete Fourier
// coefficients ṽ_l = (1/N) Σ_j v_j e^{-2πijl/N}; the inverse carries none.
inline void to_fourier(std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  fft_forward_raw(v.data(), n);
  const double inv = 1.0 / n;
  for (auto& x : v) x *= inv;
}

inline void to_nodal(std::vector<cplx>& v) {
  fft_backward_raw(v.data(), static_cast<int>(v.size()));
}

namespace fft_detail {

inline fftw_plan get_plan_2d(int nx, int ny, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(nx, ny, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> buf(static_cast<size_t>(nx) * ny);
  fftw_plan p = fftw_plan_dft_2d(
      ny, nx, reinterpret_cast<fftw_complex*>(buf.data()),
      reinterpret_cast<fftw_complex*>(buf.data()), sign, FFTW_ESTIMATE);
  cache.emplace(key, p);
  return p;
}

}  // namespace fft_detail

// Row-major data[iy*nx + ix]; forward carries 1/(nx ny).
inline void to_fourier_2d(std::vector<cplx>& v, int nx, int ny) {
  fftw_plan p = fft_detail::get_plan_2d(nx, ny, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(v.data()),
                   reinterpret_cast<fftw_complex*>(v.data()));
  const double inv = 1.0 / (static_cast<double>(nx) * ny);
  for (auto& x : v) x *= inv;
}

inline void to_nodal_2d(std::vector<cplx>& v, int nx, int ny) {
  fftw_plan p = fft_detail::get_plan_2d(nx, ny, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(v.data()),
                   reinterpret_cast<fftw_complex*>(v.data()));
}

}  // namespace kgbench
