#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <new>
#include <stdexcept>

namespace wignerlab::detail {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

AlignedBuffer::AlignedBuffer(std::size_t n) : n_(n) {
  data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * (n == 0 ? 1 : n)));
  if (data_ == nullptr) throw std::bad_alloc();
  std::memset(static_cast<void*>(data_), 0, sizeof(fftw_complex) * n);
}

AlignedBuffer::~AlignedBuffer() { fftw_free(data_); }

AlignedBuffer::AlignedBuffer(AlignedBuffer&& other) noexcept : data_(other.data_), n_(other.n_) {
  other.data_ = nullptr;
  other.n_ = 0;
}

AlignedBuffer& AlignedBuffer::operator=(AlignedBuffer&& other) noexcept {
  if (this != &other) {
    fftw_free(data_);
    data_ = other.data_;
    n_ = other.n_;
    other.data_ = nullptr;
    other.n_ = 0;
  }
  return *this;
}

struct FftPlan::Impl {
  fftw_plan plan = nullptr;
};

FftPlan::FftPlan(std::size_t n, Direction dir) : impl_(std::make_unique<Impl>()), n_(n) {
  AlignedBuffer in(n), out(n);
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (impl_->plan == nullptr) throw std::runtime_error("FFTW planning failed");
}

FftPlan::FftPlan(std::size_t rows, std::size_t cols, Direction dir)
    : impl_(std::make_unique<Impl>()), n_(rows * cols) {
  AlignedBuffer in(n_), out(n_);
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                                 reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (impl_->plan == nullptr) throw std::runtime_error("FFTW planning failed");
}

FftPlan::~FftPlan() {
  if (impl_ && impl_->plan != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(impl_->plan);
  }
}

void FftPlan::execute(const AlignedBuffer& in, AlignedBuffer& out) const {
  if (in.size() != n_ || out.size() != n_) throw std::logic_error("FFT buffer size mismatch");
  // new-array execute: FFTW does not write to the input of an out-of-place
  // complex DFT, so the const_cast is sound.
  fftw_execute_dft(impl_->plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace wignerlab::detail
