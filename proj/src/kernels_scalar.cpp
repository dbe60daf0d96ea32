#include "fluxband/kernels.hpp"

namespace fluxband::kernels {
namespace {

void axpy_s(std::size_t n, cd a, const cd* x, cd* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_s(std::size_t n, cd a, cd* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cd dotc_s(std::size_t n, const cd* x, const cd* y) {
    cd s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double nrm2sq_s(std::size_t n, const cd* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
    return s;
}

void gemm_acc_s(std::size_t m, std::size_t k, std::size_t n, const cd* A, std::size_t lda,
                const cd* B, std::size_t ldb, cd* C, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        cd* ci = C + i * ldc;
        const cd* ai = A + i * lda;
        for (std::size_t p = 0; p < k; ++p) {
            const cd a = ai[p];
            if (a == cd(0.0)) continue;
            const cd* bp = B + p * ldb;
            for (std::size_t j = 0; j < n; ++j) ci[j] += a * bp[j];
        }
    }
}

void gemv_acc_s(std::size_t m, std::size_t n, const cd* A, std::size_t lda, const cd* x, cd* y) {
    for (std::size_t i = 0; i < m; ++i) {
        const cd* ai = A + i * lda;
        cd s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
        y[i] += s;
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", axpy_s, scal_s, dotc_s, nrm2sq_s, gemm_acc_s, gemv_acc_s};
    return b;
}

}  // namespace fluxband::kernels
