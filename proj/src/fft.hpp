#pragma once

namespace cepdisc::detail {

// Real-input DFT of fixed length, backed by one shared FFTW plan per length.
// Plan creation is serialized internally (the FFTW planner is not
// thread-safe); each instance owns its own buffers, so distinct instances can
// execute concurrently.
class RealDft {
 public:
  explicit RealDft(int length);
  ~RealDft();
  RealDft(const RealDft&) = delete;
  RealDft& operator=(const RealDft&) = delete;

  int length() const { return n_; }

  // Squared modulus of the DFT on the full grid m = 0..N-1. The result is
  // even-symmetric by construction. `out` must hold N doubles.
  void power(const double* in, double* out);

  // Real part of DFT bins m = 0..floor(N/2), i.e. the cosine sums
  // sum_t in[t] cos(2 pi m t / N). `out` must hold floor(N/2)+1 doubles.
  void real_part(const double* in, double* out);

 private:
  void execute();

  int n_;
  double* in_;
  void* out_;   // fftw_complex*
  void* plan_;  // fftw_plan, owned by the per-length cache
};

}  // namespace cepdisc::detail
