#include "fluxband/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fluxband {

Eigh hermitian_eigendecomposition(const Matrix& a, double tol_rel, int max_sweeps) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("eigendecomposition needs a square matrix");
    if (a.hermiticity_error() > 1e-10)
        throw std::invalid_argument("matrix is not Hermitian within 1e-10 relative norm");

    Matrix A = a;
    // symmetrize to kill roundoff asymmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cd v = 0.5 * (A(i, j) + std::conj(A(j, i)));
            A(i, j) = v;
            A(j, i) = std::conj(v);
        }
    Matrix V = Matrix::identity(n);
    const double anorm = A.frobenius_norm();
    const double thresh = tol_rel * (anorm > 0 ? anorm : 1.0);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= thresh) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd apq = A(p, q);
                const double aabs = std::abs(apq);
                if (aabs <= 1e-3 * thresh / n) continue;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const cd phase = apq / aabs;
                const double tau = (aqq - app) / (2.0 * aabs);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd sp = s * phase;        // s e^{i phi}
                const cd spc = std::conj(sp);   // s e^{-i phi}

                // A <- U^dagger A (rows p, q)
                for (std::size_t i = 0; i < n; ++i) {
                    const cd arp = A(p, i), arq = A(q, i);
                    A(p, i) = c * arp - sp * arq;
                    A(q, i) = spc * arp + c * arq;
                }
                // A <- A U and V <- V U (columns p, q)
                for (std::size_t i = 0; i < n; ++i) {
                    const cd acp = A(i, p), acq = A(i, q);
                    A(i, p) = c * acp - spc * acq;
                    A(i, q) = sp * acp + c * acq;
                    const cd vcp = V(i, p), vcq = V(i, q);
                    V(i, p) = c * vcp - spc * vcq;
                    V(i, q) = sp * vcp + c * vcq;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
            }
        }
    }

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = A(i, i).real();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });

    Eigh out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = vals[idx[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = V(i, idx[k]);
    }
    return out;
}

Matrix spectral_function(const Eigh& e, const std::function<cd(double)>& f) {
    const std::size_t n = e.values.size();
    // V diag(f) V^dagger
    Matrix vf(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) vf(i, k) = e.vectors(i, k) * f(e.values[k]);
    }
    return vf * e.vectors.adjoint();
}

Matrix expi_hermitian(const Matrix& h, double s) {
    Eigh e = hermitian_eigendecomposition(h);
    return spectral_function(e, [s](double l) { return std::exp(cd(0.0, s * l)); });
}

Matrix taylor_expm(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("expm needs a square matrix");
    double norm1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) colsum += std::abs(a(i, j));
        norm1 = std::max(norm1, colsum);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale > 0.5 && squarings < 40) {
        scale *= 0.5;
        ++squarings;
    }
    Matrix as = a;
    as *= cd(scale);
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = multiply(as, term);
        term *= cd(1.0 / k);
        result += term;
        if (term.max_abs() < 1e-17 * std::max(1.0, result.max_abs())) break;
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

void expm_apply_inplace(const Matrix& a, Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("expm_apply shape mismatch");
    Matrix term = b;
    Matrix next(b.rows(), b.cols());
    const double bmax = std::max(b.max_abs(), 1e-300);
    for (int k = 1; k <= 60; ++k) {
        for (std::size_t i = 0; i < next.rows() * next.cols(); ++i) next.data()[i] = 0.0;
        multiply_acc(a, term, next);
        next *= cd(1.0 / k);
        std::swap(term, next);
        b += term;
        if (term.max_abs() < 1e-16 * bmax) break;
    }
}

}  // namespace fluxband
