#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace wignerlab::detail {

/// Owning, fftw_malloc-aligned complex buffer. Every FFT input/output goes
/// through one of these so that all executions of a plan see the same
/// alignment (and hence the same codelets and bit-identical results).
class AlignedBuffer {
 public:
  explicit AlignedBuffer(std::size_t n);
  ~AlignedBuffer();
  AlignedBuffer(AlignedBuffer&& other) noexcept;
  AlignedBuffer& operator=(AlignedBuffer&& other) noexcept;
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;

  [[nodiscard]] std::complex<double>* data() { return data_; }
  [[nodiscard]] const std::complex<double>* data() const { return data_; }
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::span<std::complex<double>> span() { return {data_, n_}; }
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return data_[i]; }

 private:
  std::complex<double>* data_ = nullptr;
  std::size_t n_ = 0;
};

enum class Direction { forward, backward };

/// Unnormalized out-of-place DFT, sign -1 for forward and +1 for backward.
/// execute() is safe to call concurrently on distinct buffers.
class FftPlan {
 public:
  FftPlan(std::size_t n, Direction dir);
  FftPlan(std::size_t rows, std::size_t cols, Direction dir);  // 2-D, row-major
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute(const AlignedBuffer& in, AlignedBuffer& out) const;
  [[nodiscard]] std::size_t size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t n_;
};

}  // namespace wignerlab::detail
