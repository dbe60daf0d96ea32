#pragma once

#include "fluxband/kernels.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace fluxband {

using cd = std::complex<double>;

// Dense row-major complex matrix. Hot products go through the kernel layer.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, cd(0.0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    cd* data() { return a_.data(); }
    const cd* data() const { return a_.data(); }
    cd& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cd s);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;
    cd trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    // ||A - A^dagger|| relative to ||A|| (Frobenius); 0 for empty
    double hermiticity_error() const;

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cd s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, cd s) { return a *= s; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<cd> a_;
};

// C = A * B
Matrix multiply(const Matrix& a, const Matrix& b);
// C += A * B
void multiply_acc(const Matrix& a, const Matrix& b, Matrix& c);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

// y = A * x
std::vector<cd> apply(const Matrix& a, const std::vector<cd>& x);

Matrix kron(const Matrix& a, const Matrix& b);

inline cd inner(const std::vector<cd>& x, const std::vector<cd>& y) {
    return kernels::dotc(x.size(), x.data(), y.data());
}
inline double norm_sq(const std::vector<cd>& x) { return kernels::nrm2sq(x.size(), x.data()); }

}  // namespace fluxband
