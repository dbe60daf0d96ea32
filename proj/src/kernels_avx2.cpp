#if defined(__x86_64__) || defined(_M_X64)

#include "fluxband/kernels.hpp"

#include <immintrin.h>

// AVX2/FMA variants. Complex products are split into two fused streams
// (re*vec and im*swapped-vec) that are recombined once with addsub, so the
// inner loops are pure FMA.
namespace fluxband::kernels {
namespace {

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

void axpy_v(std::size_t n, cd a, const cd* x, cd* y) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        __m256d t = _mm256_addsub_pd(_mm256_mul_pd(are, xv), _mm256_mul_pd(aim, swap_pairs(xv)));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, t));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_v(std::size_t n, cd a, cd* x) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    double* xp = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d t = _mm256_addsub_pd(_mm256_mul_pd(are, xv), _mm256_mul_pd(aim, swap_pairs(xv)));
        _mm256_storeu_pd(xp + 2 * i, t);
    }
    for (; i < n; ++i) x[i] *= a;
}

cd dotc_v(std::size_t n, const cd* x, const cd* y) {
    __m256d p1 = _mm256_setzero_pd();  // xr*yr, xi*yi pairs
    __m256d p2 = _mm256_setzero_pd();  // xi*yr, xr*yi pairs
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        p1 = _mm256_fmadd_pd(xv, yv, p1);
        p2 = _mm256_fmadd_pd(swap_pairs(xv), yv, p2);
    }
    alignas(32) double b1[4], b2[4];
    _mm256_store_pd(b1, p1);
    _mm256_store_pd(b2, p2);
    double re = b1[0] + b1[1] + b1[2] + b1[3];
    double im = (b2[1] - b2[0]) + (b2[3] - b2[2]);
    cd s(re, im);
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double nrm2sq_v(std::size_t n, const cd* x) {
    __m256d acc = _mm256_setzero_pd();
    const double* xp = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double b[4];
    _mm256_store_pd(b, acc);
    double s = b[0] + b[1] + b[2] + b[3];
    for (; i < n; ++i) s += std::norm(x[i]);
    return s;
}

// 2x8 (rows x complex columns) register-blocked kernel; k innermost.
template <int ROWS>
inline void gemm_tile(std::size_t k, std::size_t nvec, const cd* A, std::size_t lda,
                      const cd* B, std::size_t ldb, cd* C, std::size_t ldc) {
    __m256d accA[ROWS][4], accB[ROWS][4];
    for (int r = 0; r < ROWS; ++r)
        for (std::size_t c = 0; c < nvec; ++c) {
            accA[r][c] = _mm256_setzero_pd();
            accB[r][c] = _mm256_setzero_pd();
        }
    for (std::size_t p = 0; p < k; ++p) {
        const double* bp = reinterpret_cast<const double*>(B + p * ldb);
        __m256d bv[4], bs[4];
        for (std::size_t c = 0; c < nvec; ++c) {
            bv[c] = _mm256_loadu_pd(bp + 4 * c);
            bs[c] = swap_pairs(bv[c]);
        }
        for (int r = 0; r < ROWS; ++r) {
            const cd a = A[r * lda + p];
            const __m256d are = _mm256_set1_pd(a.real());
            const __m256d aim = _mm256_set1_pd(a.imag());
            for (std::size_t c = 0; c < nvec; ++c) {
                accA[r][c] = _mm256_fmadd_pd(are, bv[c], accA[r][c]);
                accB[r][c] = _mm256_fmadd_pd(aim, bs[c], accB[r][c]);
            }
        }
    }
    for (int r = 0; r < ROWS; ++r) {
        double* cp = reinterpret_cast<double*>(C + r * ldc);
        for (std::size_t c = 0; c < nvec; ++c) {
            __m256d cv = _mm256_loadu_pd(cp + 4 * c);
            cv = _mm256_add_pd(cv, _mm256_addsub_pd(accA[r][c], accB[r][c]));
            _mm256_storeu_pd(cp + 4 * c, cv);
        }
    }
}

void gemm_acc_v(std::size_t m, std::size_t k, std::size_t n, const cd* A, std::size_t lda,
                const cd* B, std::size_t ldb, cd* C, std::size_t ldc) {
    const std::size_t nblk = n / 8 * 8;
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        for (std::size_t j = 0; j < nblk; j += 8)
            gemm_tile<2>(k, 4, A + i * lda, lda, B + j, ldb, C + i * ldc + j, ldc);
        if (std::size_t rem = n - nblk; rem >= 2)
            gemm_tile<2>(k, rem / 2, A + i * lda, lda, B + nblk, ldb, C + i * ldc + nblk, ldc);
        if (n % 2) {  // last odd column
            for (int r = 0; r < 2; ++r) {
                cd s = 0.0;
                for (std::size_t p = 0; p < k; ++p) s += A[(i + r) * lda + p] * B[p * ldb + n - 1];
                C[(i + r) * ldc + n - 1] += s;
            }
        }
    }
    for (; i < m; ++i) {
        for (std::size_t j = 0; j < nblk; j += 8)
            gemm_tile<1>(k, 4, A + i * lda, lda, B + j, ldb, C + i * ldc + j, ldc);
        if (std::size_t rem = n - nblk; rem >= 2)
            gemm_tile<1>(k, rem / 2, A + i * lda, lda, B + nblk, ldb, C + i * ldc + nblk, ldc);
        if (n % 2) {
            cd s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += A[i * lda + p] * B[p * ldb + n - 1];
            C[i * ldc + n - 1] += s;
        }
    }
}

void gemv_acc_v(std::size_t m, std::size_t n, const cd* A, std::size_t lda, const cd* x, cd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < m; ++i) {
        const double* ap = reinterpret_cast<const double*>(A + i * lda);
        __m256d p1 = _mm256_setzero_pd();
        __m256d p2 = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d av = _mm256_loadu_pd(ap + 2 * j);
            __m256d xv = _mm256_loadu_pd(xp + 2 * j);
            p1 = _mm256_fmadd_pd(av, xv, p1);               // ar*xr, ai*xi
            p2 = _mm256_fmadd_pd(swap_pairs(av), xv, p2);   // ai*xr, ar*xi
        }
        alignas(32) double b1[4], b2[4];
        _mm256_store_pd(b1, p1);
        _mm256_store_pd(b2, p2);
        cd s(b1[0] - b1[1] + b1[2] - b1[3], b2[0] + b2[1] + b2[2] + b2[3]);
        for (; j < n; ++j) s += A[i * lda + j] * x[j];
        y[i] += s;
    }
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b{"avx2", axpy_v, scal_v, dotc_v, nrm2sq_v, gemm_acc_v, gemv_acc_v};
    return b;
}

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace fluxband::kernels

#endif  // x86_64
