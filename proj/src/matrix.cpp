#include "fluxband/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxband {

Matrix& Matrix::operator+=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in +=");
    kernels::axpy(a_.size(), cd(1.0), o.a_.data(), a_.data());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in -=");
    kernels::axpy(a_.size(), cd(-1.0), o.a_.data(), a_.data());
    return *this;
}

Matrix& Matrix::operator*=(cd s) {
    kernels::scal(a_.size(), s, a_.data());
    return *this;
}

Matrix Matrix::adjoint() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conj() const {
    Matrix m(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
    return m;
}

cd Matrix::trace() const {
    cd t = 0.0;
    for (std::size_t i = 0; i < r_ && i < c_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const { return std::sqrt(kernels::nrm2sq(a_.size(), a_.data())); }

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cd& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::hermiticity_error() const {
    if (r_ != c_) throw std::invalid_argument("hermiticity_error on non-square matrix");
    double num = 0.0;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) num += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    double den = frobenius_norm();
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num) / den;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    multiply_acc(a, b, c);
    return c;
}

void multiply_acc(const Matrix& a, const Matrix& b, Matrix& c) {
    if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch in multiply");
    kernels::gemm_acc(a.rows(), a.cols(), b.cols(), a.data(), a.cols(), b.data(), b.cols(),
                      c.data(), c.cols());
}

std::vector<cd> apply(const Matrix& a, const std::vector<cd>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<cd> y(a.rows(), cd(0.0));
    kernels::gemv_acc(a.rows(), a.cols(), a.data(), a.cols(), x.data(), y.data());
    return y;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cd av = a(i, j);
            if (av == cd(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
        }
    return c;
}

}  // namespace fluxband
