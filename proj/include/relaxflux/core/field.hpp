#pragma once

#include <vector>

#include "relaxflux/core/error.hpp"

namespace relaxflux {

inline constexpr int kGhost = 2;

// Cell values on [-kGhost, n + kGhost). Interior cells are 0..n-1.
template <class T>
class Field1D {
 public:
  Field1D() = default;
  explicit Field1D(int n, const T& init = T{}) : n_(n), data_(n + 2 * kGhost, init) {}

  int size() const noexcept { return n_; }
  T& operator()(int i) { return data_[i + kGhost]; }
  const T& operator()(int i) const { return data_[i + kGhost]; }
  T* data() noexcept { return data_.data(); }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

template <class T>
class Field2D {
 public:
  Field2D() = default;
  Field2D(int nx, int ny, const T& init = T{})
      : nx_(nx), ny_(ny), stride_(nx + 2 * kGhost), data_((nx + 2 * kGhost) * (ny + 2 * kGhost), init) {}

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  T& operator()(int i, int j) { return data_[(i + kGhost) + (j + kGhost) * stride_]; }
  const T& operator()(int i, int j) const { return data_[(i + kGhost) + (j + kGhost) * stride_]; }

 private:
  int nx_ = 0;
  int ny_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

}  // namespace relaxflux
