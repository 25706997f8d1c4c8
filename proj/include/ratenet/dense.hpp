#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace ratenet {

// Row-major dense matrix; just enough for adjacency matrices and eigenbases.
template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Dense identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const T* row(std::size_t i) const { return data_.data() + i * cols_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  bool operator==(const Dense& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = Dense<double>;
using CMatrix = Dense<std::complex<double>>;

template <class T>
Dense<T> operator*(const Dense<T>& a, const Dense<T>& b) {
  assert(a.cols() == b.rows());
  Dense<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Dense<T> kron(const Dense<T>& a, const Dense<T>& b) {
  Dense<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          c(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return c;
}

}  // namespace ratenet
