#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mq/anf.hpp"
#include "mq/f2mat.hpp"
#include "mq/rng.hpp"

namespace mq {

/// The equation system E = {P_j}: m polynomials sharing (n, d). A point x is
/// a solution when every P_j(x) = 0.
class PolySystem {
public:
    PolySystem(unsigned n, unsigned d);

    unsigned n() const { return n_; }
    unsigned d() const { return d_; }
    unsigned m() const { return static_cast<unsigned>(polys_.size()); }
    const AnfPoly& poly(unsigned j) const { return polys_[j]; }
    const std::vector<AnfPoly>& polys() const { return polys_; }

    void add(AnfPoly p);

    struct Evaluation {
        std::vector<bool> residuals; // P_j(x) per equation
        bool is_solution = true;     // all residuals zero (true when m = 0)
    };
    Evaluation evaluate(std::uint64_t x) const;
    bool is_solution(std::uint64_t x) const;

    bool operator==(const PolySystem&) const = default;

private:
    unsigned n_, d_;
    std::vector<AnfPoly> polys_;
};

struct ParseError : std::runtime_error {
    ParseError(unsigned line, unsigned col, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + what),
          line(line), col(col) {}
    unsigned line, col;
};

/// Canonical .mq text format: header lines `vars <n>` and `deg <d>`,
/// `#` comments, then one polynomial per line as `+`-joined monomials where
/// a monomial is `1`, `0` (the zero polynomial) or `*`-joined `x<i>` tokens.
PolySystem parse_system(std::string_view text);
std::string serialize_system(const PolySystem& sys);

/// ell fresh uniform random F2-combinations R_i = sum_j alpha_ij P_j.
PolySystem random_combinations(const PolySystem& sys, unsigned ell, Rng& rng);

/// Force variable var (1-based) to value b. The variable count stays n; the
/// result never references x_var.
PolySystem fix_variable(const PolySystem& sys, unsigned var, bool value);

/// Append k uniform affine equations sum_i a_i x_i + b (degree bound needs
/// d >= 1 when k > 0).
PolySystem add_affine_equations(const PolySystem& sys, unsigned k, Rng& rng);

/// Substitute x = B v for invertible B; v solves the result iff B v solves
/// sys. Throws std::domain_error when B is not invertible.
PolySystem change_variables(const PolySystem& sys, const F2Matrix& B);

/// Gaussian elimination over the coefficient matrix: drops dependent rows,
/// reports nullopt when the equations are inconsistent (no solution).
std::optional<PolySystem> preprocess(const PolySystem& sys);

/// Uniform random system; with planted != nullptr a uniform assignment is
/// drawn first and each polynomial's constant is adjusted to vanish on it.
PolySystem random_system(unsigned n, unsigned d, unsigned m, Rng& rng,
                         std::uint64_t* planted = nullptr);

} // namespace mq
