#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Low-level dense complex-double kernels. Scalar reference implementations
// and AVX2/FMA variants share this interface; the active backend is picked
// at runtime by CPU detection and can be overridden for equivalence tests.
namespace fluxband::kernels {

using cd = std::complex<double>;

struct Backend {
    const char* name;
    // y += a * x
    void (*axpy)(std::size_t n, cd a, const cd* x, cd* y);
    // x *= a
    void (*scal)(std::size_t n, cd a, cd* x);
    // sum conj(x[i]) * y[i]
    cd (*dotc)(std::size_t n, const cd* x, const cd* y);
    // sum |x[i]|^2
    double (*nrm2sq)(std::size_t n, const cd* x);
    // C += A(m x k) * B(k x n), row-major, leading dims = row strides
    void (*gemm_acc)(std::size_t m, std::size_t k, std::size_t n,
                     const cd* A, std::size_t lda,
                     const cd* B, std::size_t ldb,
                     cd* C, std::size_t ldc);
    // y += A(m x n) * x
    void (*gemv_acc)(std::size_t m, std::size_t n,
                     const cd* A, std::size_t lda, const cd* x, cd* y);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_available();
#endif

// Active backend. "auto" (default) picks the best supported one.
const Backend& active();
void select_backend(const std::string& name);  // "auto" | "scalar" | "avx2"
std::string active_name();

inline void axpy(std::size_t n, cd a, const cd* x, cd* y) { active().axpy(n, a, x, y); }
inline void scal(std::size_t n, cd a, cd* x) { active().scal(n, a, x); }
inline cd dotc(std::size_t n, const cd* x, const cd* y) { return active().dotc(n, x, y); }
inline double nrm2sq(std::size_t n, const cd* x) { return active().nrm2sq(n, x); }
inline void gemm_acc(std::size_t m, std::size_t k, std::size_t n, const cd* A, std::size_t lda,
                     const cd* B, std::size_t ldb, cd* C, std::size_t ldc) {
    active().gemm_acc(m, k, n, A, lda, B, ldb, C, ldc);
}
inline void gemv_acc(std::size_t m, std::size_t n, const cd* A, std::size_t lda, const cd* x, cd* y) {
    active().gemv_acc(m, n, A, lda, x, y);
}

}  // namespace fluxband::kernels
