#include "mq/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace mq {

double binary_entropy(double q) {
    if (q < 0.0 || q > 1.0 || std::isnan(q))
        throw std::domain_error("binary_entropy: argument outside [0, 1]");
    if (q == 0.0 || q == 1.0)
        return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double fd_value(unsigned d, double p) {
    if (d < 2)
        throw std::domain_error("fd_value: d must be at least 2");
    if (p == 0.0)
        return 0.0;
    return (1.0 - p) * binary_entropy((d - 1) * p / (1.0 - p));
}

double tau(unsigned d) {
    if (d < 2)
        throw std::domain_error("tau: d must be at least 2");
    // positive real root of x^d - x - 1
    double x = 1.3;
    for (int it = 0; it < 200; ++it) {
        const double xd1 = std::pow(x, static_cast<double>(d - 1));
        const double f = xd1 * x - x - 1.0;
        const double fp = d * xd1 - 1.0;
        const double step = f / fp;
        x -= step;
        if (std::fabs(step) < 1e-12)
            break;
    }
    return (d - 1) * std::log2(x);
}

double tau_by_maximization(unsigned d) {
    if (d < 2)
        throw std::domain_error("tau_by_maximization: d must be at least 2");
    double a = 0.0;
    double b = 1.0 / (2.0 * d - 1.0);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double e = a + phi * (b - a);
    double fc = fd_value(d, c);
    double fe = fd_value(d, e);
    for (int it = 0; it < 200; ++it) {
        if (fc > fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - phi * (b - a);
            fc = fd_value(d, c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + phi * (b - a);
            fe = fd_value(d, e);
        }
    }
    return std::max(fc, fe);
}

} // namespace mq
