#pragma once

#include <cstddef>
#include <vector>

#include "dec.hpp"
#include "interval.hpp"

namespace converse {

// Dense row-major matrix; small sizes only (up to 7x7 in the prism code).
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T& fill = T()) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols), fill) {}

    static Mat identity(int n) {
        Mat m(n, n, T(0));
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

    Mat block(int i0, int j0, int nr, int nc) const {
        Mat b(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }
    void set_block(int i0, int j0, const Mat& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    friend bool operator==(const Mat& x, const Mat& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z(x.rows(), y.cols(), T(0));
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            const T& xik = x(i, k);
            for (int j = 0; j < y.cols(); ++j) z(i, j) = z(i, j) + xik * y(k, j);
        }
    return z;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) z(i, j) = z(i, j) + y(i, j);
    return z;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) z(i, j) = z(i, j) - y(i, j);
    return z;
}

using DecMat = Mat<Dec>;
using IvMat = Mat<Interval>;
using DblMat = Mat<double>;

IvMat to_interval(const DecMat& m);
IvMat mul(const DecMat& x, const IvMat& y);
IvMat mul(const IvMat& x, const DecMat& y);

// sum_j |a_kj|
Dec row_sum(const DecMat& a, int k);
// sum of all |a_ij|
Dec mat_sum(const DecMat& a);
// upper bounds of the same sums for interval matrices
Dec row_sum_ub(const IvMat& a, int k);
Dec mat_sum_ub(const IvMat& a);

double row_sum(const DblMat& a, int k);
double mat_sum(const DblMat& a);

}  // namespace converse
