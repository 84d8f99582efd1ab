#pragma once

namespace mq {

/// Binary entropy H(q) = -q log2 q - (1-q) log2(1-q), with H(0) = H(1) = 0.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double q);

/// f_d(p) = (1 - p) * H((d-1)p / (1-p)); defined for p in [0, 1/(2d-1)].
double fd_value(unsigned d, double p);

/// The exponent constant tau(d) = max of f_d on [0, 1/(2d-1)], computed as
/// (d-1) * log2(r) with r the positive real root of x^d - x - 1 (Newton,
/// tolerance 1e-12). Requires integer d >= 2.
double tau(unsigned d);

/// Independent route: direct golden-section maximization of f_d over the
/// same interval. Kept separate from tau() so the two can be cross-checked.
double tau_by_maximization(unsigned d);

} // namespace mq
