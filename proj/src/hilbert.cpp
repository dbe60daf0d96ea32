#include "fluxband/hilbert.hpp"

#include "fluxband/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxband {

std::size_t total_dim(const std::vector<int>& dims) {
    std::size_t d = 1;
    for (int x : dims) d *= static_cast<std::size_t>(x);
    return d;
}

Operator::Operator(Matrix mat, std::vector<int> d) : m(std::move(mat)), dims(std::move(d)) {
    if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
    if (total_dim(dims) != m.rows())
        throw std::invalid_argument("operator dims do not match matrix order");
}

double StateVector::norm() const { return std::sqrt(norm_sq(v)); }

void StateVector::normalize() {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero state");
    kernels::scal(v.size(), cd(1.0 / n), v.data());
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

void DensityMatrix::validate(double tol) const {
    if (m.hermiticity_error() > tol) throw std::runtime_error("density matrix not Hermitian");
    if (std::abs(m.trace() - cd(1.0)) > tol) throw std::runtime_error("density matrix trace != 1");
    Eigh e = hermitian_eigendecomposition(m);
    if (e.values.front() < -tol) throw std::runtime_error("density matrix not positive semidefinite");
}

Operator ladder(int dim) {
    if (dim < 2) throw std::invalid_argument("ladder operator needs dim >= 2");
    Matrix a(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return Operator(std::move(a), {dim});
}

Operator projector(int i, int j, int dim) {
    if (i < 0 || j < 0 || i >= dim || j >= dim)
        throw std::invalid_argument("projector index out of range");
    Matrix p(dim, dim);
    p(i, j) = 1.0;
    return Operator(std::move(p), {dim});
}

Operator embed(const Operator& op, int slot, const std::vector<int>& dims) {
    if (slot < 0 || slot >= static_cast<int>(dims.size()))
        throw std::invalid_argument("embed: slot out of range");
    if (op.dim() != static_cast<std::size_t>(dims[slot]))
        throw std::invalid_argument("embed: operator dimension does not match dims[slot]");
    std::size_t left = 1, right = 1;
    for (int s = 0; s < slot; ++s) left *= dims[s];
    for (int s = slot + 1; s < static_cast<int>(dims.size()); ++s) right *= dims[s];
    Matrix full = kron(kron(Matrix::identity(left), op.m), Matrix::identity(right));
    return Operator(std::move(full), dims);
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("operator dims mismatch");
    return Operator(multiply(a.m, b.m), a.dims);
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("operator dims mismatch");
    return Operator(a.m + b.m, a.dims);
}

Operator operator-(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("operator dims mismatch");
    return Operator(a.m - b.m, a.dims);
}

Operator operator*(cd s, const Operator& a) { return Operator(s * a.m, a.dims); }

Operator adjoint(const Operator& a) { return Operator(a.m.adjoint(), a.dims); }

Operator partial_trace_to_slot(const Operator& full, int slot) {
    const auto& dims = full.dims;
    if (slot < 0 || slot >= static_cast<int>(dims.size()))
        throw std::invalid_argument("partial_trace: slot out of range");
    Matrix red = partial_trace_density(full.m, dims, slot);
    std::size_t others = total_dim(dims) / dims[slot];
    red *= cd(1.0 / static_cast<double>(others));
    return Operator(std::move(red), {dims[slot]});
}

Matrix partial_trace_density(const Matrix& rho, const std::vector<int>& dims, int slot) {
    std::size_t left = 1, right = 1;
    for (int s = 0; s < slot; ++s) left *= dims[s];
    for (int s = slot + 1; s < static_cast<int>(dims.size()); ++s) right *= dims[s];
    const std::size_t d = dims[slot];
    Matrix out(d, d);
    for (std::size_t l = 0; l < left; ++l)
        for (std::size_t r = 0; r < right; ++r)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    std::size_t row = (l * d + i) * right + r;
                    std::size_t col = (l * d + j) * right + r;
                    out(i, j) += rho(row, col);
                }
    return out;
}

DensityMatrix pure_density(const StateVector& psi) {
    const std::size_t n = psi.v.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = psi.v[i] * std::conj(psi.v[j]);
    return DensityMatrix{std::move(m), psi.dims};
}

}  // namespace fluxband
