#pragma once

#include <cassert>
#include <vector>

namespace caprise::vof2d {

/// Dense row-major (j-major) 2D array addressed as (i, j).
class Field2D {
 public:
  Field2D() = default;
  Field2D(int nx, int ny, double value = 0.0)
      : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, value) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void fill(double value) { data_.assign(data_.size(), value); }

  bool operator==(const Field2D&) const = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

}  // namespace caprise::vof2d
