#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace cepdisc::detail {

namespace {

// One r2c plan per transform length, created once and kept for the process
// lifetime. Plans are executed through the new-array interface, so they are
// shared safely across threads as long as creation itself is locked.
fftw_plan plan_for_length(int n) {
  static std::mutex mutex;
  static std::map<int, fftw_plan> cache;

  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  double* in = fftw_alloc_real(static_cast<size_t>(n));
  fftw_complex* out = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
  fftw_plan plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(n, plan);
  return plan;
}

}  // namespace

RealDft::RealDft(int length) : n_(length) {
  if (length < 1) throw std::invalid_argument("RealDft: length must be >= 1");
  in_ = fftw_alloc_real(static_cast<size_t>(n_));
  out_ = fftw_alloc_complex(static_cast<size_t>(n_ / 2 + 1));
  plan_ = plan_for_length(n_);
}

RealDft::~RealDft() {
  fftw_free(in_);
  fftw_free(static_cast<fftw_complex*>(out_));
}

void RealDft::execute() {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_), in_,
                       static_cast<fftw_complex*>(out_));
}

void RealDft::power(const double* in, double* out) {
  for (int t = 0; t < n_; ++t) in_[t] = in[t];
  execute();
  const fftw_complex* c = static_cast<fftw_complex*>(out_);
  out[0] = c[0][0] * c[0][0] + c[0][1] * c[0][1];
  for (int m = 1; m <= n_ / 2; ++m) {
    const double p = c[m][0] * c[m][0] + c[m][1] * c[m][1];
    out[m] = p;
    out[n_ - m] = p;
  }
}

void RealDft::real_part(const double* in, double* out) {
  for (int t = 0; t < n_; ++t) in_[t] = in[t];
  execute();
  const fftw_complex* c = static_cast<fftw_complex*>(out_);
  for (int m = 0; m <= n_ / 2; ++m) out[m] = c[m][0];
}

}  // namespace cepdisc::detail
