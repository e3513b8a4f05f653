#include "matrix.hpp"

#include <cmath>

namespace converse {

IvMat to_interval(const DecMat& m) {
    IvMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Interval(m(i, j));
    return r;
}

IvMat mul(const DecMat& x, const IvMat& y) {
    IvMat z(x.rows(), y.cols(), Interval(Dec(0)));
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            if (x(i, k).is_zero()) continue;
            Interval xik(x(i, k));
            for (int j = 0; j < y.cols(); ++j) z(i, j) = z(i, j) + xik * y(k, j);
        }
    return z;
}

IvMat mul(const IvMat& x, const DecMat& y) {
    IvMat z(x.rows(), y.cols(), Interval(Dec(0)));
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k)
            for (int j = 0; j < y.cols(); ++j) {
                if (y(k, j).is_zero()) continue;
                z(i, j) = z(i, j) + x(i, k) * Interval(y(k, j));
            }
    return z;
}

Dec row_sum(const DecMat& a, int k) {
    Dec s(0);
    for (int j = 0; j < a.cols(); ++j) s += a(k, j).abs();
    return s;
}

Dec mat_sum(const DecMat& a) {
    Dec s(0);
    for (int k = 0; k < a.rows(); ++k) s += row_sum(a, k);
    return s;
}

Dec row_sum_ub(const IvMat& a, int k) {
    Dec s(0);
    for (int j = 0; j < a.cols(); ++j) s += a(k, j).mag();
    return s;
}

Dec mat_sum_ub(const IvMat& a) {
    Dec s(0);
    for (int k = 0; k < a.rows(); ++k) s += row_sum_ub(a, k);
    return s;
}

double row_sum(const DblMat& a, int k) {
    double s = 0;
    for (int j = 0; j < a.cols(); ++j) s += std::fabs(a(k, j));
    return s;
}

double mat_sum(const DblMat& a) {
    double s = 0;
    for (int k = 0; k < a.rows(); ++k) s += row_sum(a, k);
    return s;
}

}  // namespace converse
