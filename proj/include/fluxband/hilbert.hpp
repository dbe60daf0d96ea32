#pragma once

#include "fluxband/matrix.hpp"

#include <vector>

namespace fluxband {

// Operator on a tensor-product space. `dims` lists the subsystem dimensions;
// subsystem ordering is [transmon 1, transmon 2, resonator] throughout, with
// basis index (pi1 * M2 + pi2) * N + n for state |pi1 pi2; n>.
struct Operator {
    Matrix m;
    std::vector<int> dims;

    Operator() = default;
    Operator(Matrix mat, std::vector<int> d);

    std::size_t dim() const { return m.rows(); }
    bool is_hermitian(double tol = 1e-12) const { return m.hermiticity_error() <= tol; }
};

struct StateVector {
    std::vector<cd> v;
    std::vector<int> dims;

    double norm() const;
    void normalize();
    bool is_normalized(double tol = 1e-10) const;
};

struct DensityMatrix {
    Matrix m;
    std::vector<int> dims;

    // Hermitian, unit trace, eigenvalues >= -tol
    void validate(double tol = 1e-10) const;
};

// total dimension of a dims list
std::size_t total_dim(const std::vector<int>& dims);

// truncated annihilation operator; dim >= 2
Operator ladder(int dim);

// |i><j| on a dim-level system
Operator projector(int i, int j, int dim);

// identity on all slots except `slot`, where `op` acts; output dims = dims
Operator embed(const Operator& op, int slot, const std::vector<int>& dims);

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cd s, const Operator& a);
Operator adjoint(const Operator& a);

// reduced operator of `slot`, tracing out the others (normalized so that
// partial_trace(embed(A, slot, dims), slot) == A)
Operator partial_trace_to_slot(const Operator& full, int slot);

// density-matrix partial trace onto `slot` (standard, trace preserving)
Matrix partial_trace_density(const Matrix& rho, const std::vector<int>& dims, int slot);

DensityMatrix pure_density(const StateVector& psi);

}  // namespace fluxband
