#include "fluxband/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxband {

double erf_inv(double y) {
    if (y <= -1.0 || y >= 1.0) throw std::domain_error("erf_inv argument must be in (-1, 1)");
    // Winitzki initial guess, then Newton on erf(x) - y
    const double a = 0.147;
    double ln1my2 = std::log(1.0 - y * y);
    double u = 2.0 / (M_PI * a) + ln1my2 / 2.0;
    double x = std::copysign(std::sqrt(std::sqrt(u * u - ln1my2 / a) - u), y);
    const double c = 2.0 / std::sqrt(M_PI);
    for (int it = 0; it < 6; ++it) {
        double err = std::erf(x) - y;
        double deriv = c * std::exp(-x * x);
        if (deriv == 0.0) break;
        x -= err / deriv;
    }
    return x;
}

UniformSpline::UniformSpline(double x0, double dx, std::vector<double> y)
    : x0_(x0), dx_(dx), y_(std::move(y)) {
    const std::size_t n = y_.size();
    if (n < 3) throw std::invalid_argument("spline needs at least 3 points");
    // natural spline: tridiagonal solve for second derivatives
    std::vector<double> u(n, 0.0);
    m_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double p = 0.5 * m_[i - 1] + 2.0;
        m_[i] = -0.5 / p;
        u[i] = (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) * 3.0 / (dx_ * dx_);
        u[i] = (u[i] - 0.5 * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = m_[i] * m_[i + 1] + u[i];
    m_[0] = m_[n - 1] = 0.0;
}

double UniformSpline::operator()(double x) const {
    const std::size_t n = y_.size();
    double s = (x - x0_) / dx_;
    if (s < 0.0) s = 0.0;
    if (s > static_cast<double>(n - 1)) s = static_cast<double>(n - 1);
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= n - 1) i = n - 2;
    double b = s - static_cast<double>(i);
    double a = 1.0 - b;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * dx_ * dx_ / 6.0;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex_digest(std::uint64_t h) {
    static const char* hexd = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hexd[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace fluxband
