// Copyright 2026 The gravcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRAVCAT_SRC_FFTW_UTIL_HPP_
#define GRAVCAT_SRC_FFTW_UTIL_HPP_

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <new>

namespace gravcat::detail {

// FFTW's planner is not thread-safe; executing existing plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place forward/backward complex transforms on an owned buffer.
class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n) : n_(n) {
    std::lock_guard lock(fftw_planner_mutex());
    data_ = fftw_alloc_complex(n);
    if (data_ == nullptr) throw std::bad_alloc();
    const int ni = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(ni, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(ni, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~ComplexFft() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(data_);
  }
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(data_); }
  std::size_t size() const { return n_; }
  void forward() { fftw_execute(forward_); }
  // Unnormalized.
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t n_;
  fftw_complex* data_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

// In-place DST-I (RODFT00) on an owned real buffer; self-inverse up to
// 2 (n + 1).
class SineTransform {
 public:
  explicit SineTransform(std::size_t n) : n_(n) {
    std::lock_guard lock(fftw_planner_mutex());
    data_ = fftw_alloc_real(n);
    if (data_ == nullptr) throw std::bad_alloc();
    plan_ = fftw_plan_r2r_1d(static_cast<int>(n), data_, data_, FFTW_RODFT00, FFTW_ESTIMATE);
  }
  ~SineTransform() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(data_);
  }
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  double* data() { return data_; }
  std::size_t size() const { return n_; }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t n_;
  double* data_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace gravcat::detail

#endif  // GRAVCAT_SRC_FFTW_UTIL_HPP_
