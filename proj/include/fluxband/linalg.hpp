#pragma once

#include "fluxband/matrix.hpp"

#include <functional>
#include <vector>

namespace fluxband {

struct Eigh {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns are eigenvectors
};

// Cyclic Jacobi for Hermitian matrices. Deterministic; accurate to ~1e-14
// relative for the dimensions used here (<= a few hundred).
Eigh hermitian_eigendecomposition(const Matrix& a, double tol_rel = 1e-15, int max_sweeps = 64);

// f applied through the spectral decomposition: V diag(f(lambda)) V^dagger
Matrix spectral_function(const Eigh& e, const std::function<cd(double)>& f);

// exp(i s H) for Hermitian H (exact through the eigendecomposition)
Matrix expi_hermitian(const Matrix& h, double s);

// exp(A) by scaling-and-squaring with a Taylor core (A arbitrary)
Matrix taylor_expm(const Matrix& a);

// B <- exp(A) * B without forming exp(A); A should have modest norm (<~ 2).
void expm_apply_inplace(const Matrix& a, Matrix& b);

}  // namespace fluxband
