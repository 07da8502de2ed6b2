#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace akm {

// Small dense tensors over a single dimension n (n <= ~10 in practice).
// Index meaning is documented at each use site; storage is row-major.

namespace detail {

template <int Rank, class Derived>
class TensorBase {
public:
  int dim() const { return n_; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  Derived& operator+=(const Derived& o) {
    assert(n_ == o.dim());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return static_cast<Derived&>(*this);
  }
  Derived& operator-=(const Derived& o) {
    assert(n_ == o.dim());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return static_cast<Derived&>(*this);
  }
  Derived& operator*=(double s) {
    for (double& x : v_) x *= s;
    return static_cast<Derived&>(*this);
  }

  friend Derived operator+(Derived a, const Derived& b) { return a += b; }
  friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
  friend Derived operator*(Derived a, double s) { return a *= s; }
  friend Derived operator*(double s, Derived a) { return a *= s; }

protected:
  TensorBase() = default;
  explicit TensorBase(int n) : n_(n), v_(pow_rank(n), 0.0) {}

  static std::size_t pow_rank(int n) {
    std::size_t r = 1;
    for (int k = 0; k < Rank; ++k) r *= static_cast<std::size_t>(n);
    return r;
  }

  int n_ = 0;
  std::vector<double> v_;
};

} // namespace detail

class Tensor3 : public detail::TensorBase<3, Tensor3> {
public:
  Tensor3() = default;
  explicit Tensor3(int n) : TensorBase(n) {}
  double& operator()(int a, int b, int c) {
    return v_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c];
  }
  double operator()(int a, int b, int c) const {
    return v_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c];
  }
};

class Tensor4 : public detail::TensorBase<4, Tensor4> {
public:
  Tensor4() = default;
  explicit Tensor4(int n) : TensorBase(n) {}
  double& operator()(int a, int b, int c, int d) {
    return v_[((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return v_[((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
};

class Tensor5 : public detail::TensorBase<5, Tensor5> {
public:
  Tensor5() = default;
  explicit Tensor5(int n) : TensorBase(n) {}
  double& operator()(int a, int b, int c, int d, int e) {
    return v_[(((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d) * n_ + e];
  }
  double operator()(int a, int b, int c, int d, int e) const {
    return v_[(((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d) * n_ + e];
  }
};

} // namespace akm
