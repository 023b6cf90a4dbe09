#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "micz/errors.hpp"

namespace micz {

template <typename T>
bool ring_is_zero(const T& v) {
    return v.is_zero();
}
inline bool ring_is_zero(const std::complex<double>& v) { return v == std::complex<double>(); }

// Dense matrix over any ring with value-semantics +,-,* and a default
// constructor meaning zero. Instantiated with GaussRat, ScalarExpr, QVal
// and std::complex<double>.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

    static Mat identity(int n, const T& one) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const T& v : e_)
            if (!ring_is_zero(v)) return false;
        return true;
    }

    Mat operator-() const {
        Mat m(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
        return m;
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat m(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
        return m;
    }

    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat m(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
        return m;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw DimMismatch("matrix product shape mismatch");
        Mat m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (ring_is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) m(i, j) = m(i, j) + a * o(k, j);
            }
        return m;
    }

    Mat& operator+=(const Mat& o) {
        *this = *this + o;
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        *this = *this - o;
        return *this;
    }

    Mat scaled(const T& c) const {
        Mat m(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * c;
        return m;
    }

    template <typename F>
    auto map(F&& fn) const -> Mat<decltype(fn(std::declval<const T&>()))> {
        Mat<decltype(fn(std::declval<const T&>()))> m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = fn((*this)(i, j));
        return m;
    }

    bool operator==(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (!(e_[k] == o.e_[k])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    int rows_, cols_;
    std::vector<T> e_;

    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("matrix shape mismatch");
    }
};

template <typename T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
    return a * b - b * a;
}

template <typename T>
Mat<T> anticommutator(const Mat<T>& a, const Mat<T>& b) {
    return a * b + b * a;
}

template <typename T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (ring_is_zero(a(i, j))) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

} // namespace micz
