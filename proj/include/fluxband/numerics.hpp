#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fluxband {

// inverse error function (Newton refinement on std::erf, ~1e-15 accurate)
double erf_inv(double y);

// natural cubic spline on a uniform grid
class UniformSpline {
public:
    UniformSpline() = default;
    UniformSpline(double x0, double dx, std::vector<double> y);
    double operator()(double x) const;  // clamped to the grid range

private:
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> y_, m_;  // values and second derivatives
};

// FNV-1a, used for config digests in data files
std::uint64_t fnv1a(const std::string& s);
std::string hex_digest(std::uint64_t h);

}  // namespace fluxband
