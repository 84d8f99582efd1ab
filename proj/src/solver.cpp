#include "mq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mq/numerics.hpp"
#include "mq/oracle.hpp"

namespace mq {

SolverParams SolverParams::defaults(unsigned n, unsigned d) {
    SolverParams p;
    p.lambda = n >= 4 ? std::max(1.0 / (n / 2), 0.05) : 1.0;
    if (d >= 2)
        p.kappa0 = std::min(1.0 - tau(d), 1.0 / (2.0 * d - 1.0));
    else
        p.kappa0 = 0.25; // unused: d <= 1 short-circuits to elimination
    p.r = 2 * n;
    return p;
}

namespace {

// d <= 1 systems reduce to plain Gaussian elimination.
bool is_linear(const PolySystem& sys) {
    return sys.d() <= 1;
}

std::vector<AffineRow> affine_rows(const PolySystem& sys) {
    std::vector<AffineRow> rows;
    rows.reserve(sys.m());
    for (unsigned j = 0; j < sys.m(); ++j) {
        const AnfPoly& p = sys.poly(j);
        AffineRow row;
        row.b = p.coeffs().get(0);
        if (sys.d() >= 1)
            for (unsigned i = 0; i < sys.n(); ++i)
                if (p.coeffs().get(1 + i))
                    row.a |= 1ull << i;
        rows.push_back(row);
    }
    return rows;
}

std::uint64_t auto_budget(unsigned n, unsigned d) {
    const double exp2arg = d >= 2 ? (1.0 - tau(d)) * n + 6.0 : n / 2.0;
    const double v = std::exp2(std::min(exp2arg, 22.0));
    return std::max<std::uint64_t>(4096, static_cast<std::uint64_t>(v));
}

PolySystem preprocess_or_self(const PolySystem& sys, bool& inconsistent) {
    auto pp = preprocess(sys);
    inconsistent = !pp.has_value();
    return inconsistent ? sys : std::move(*pp);
}

} // namespace

EstimateResult estimate_solution_count(const PolySystem& sys, std::uint64_t budget, Rng rng) {
    const unsigned n = sys.n();
    const unsigned d = sys.d();
    if (budget == 0)
        budget = auto_budget(n, d);
    EstimateResult res;
    const std::uint64_t mask = low_mask(n);
    while (res.samples < budget && res.hits < 256) {
        const std::uint64_t x = rng.next() & mask;
        ++res.samples;
        if (sys.is_solution(x))
            ++res.hits;
    }
    res.k_tilde = res.samples
                      ? static_cast<double>(res.hits) / static_cast<double>(res.samples) *
                            std::exp2(static_cast<double>(n))
                      : 0.0;
    const double threshold = d >= 2 ? std::exp2(tau(d) * n - 2.0) : std::exp2(n / 2.0);
    res.below_threshold = res.k_tilde <= threshold;
    return res;
}

IsolationPlan plan_isolation(const PolySystem& sys, const SolverParams& params, Rng rng) {
    const unsigned n = sys.n();
    const unsigned d = sys.d();
    IsolationPlan plan;
    plan.r = params.r ? params.r : 2 * n;
    EstimateResult est =
        estimate_solution_count(sys, params.estimate_budget, rng.fork(stream_tag(Stream::estimate)));
    if (est.below_threshold) {
        const double k0 = d >= 2 ? 1.0 - tau(d) : 0.5;
        plan.n1 = static_cast<unsigned>(std::floor(k0 * n));
    } else {
        plan.k_tilde = est.k_tilde;
        const double raw = std::floor(static_cast<double>(n) - std::log2(est.k_tilde) - 2.0);
        plan.n1 = raw < 0.0 ? 0u : std::min<unsigned>(n, static_cast<unsigned>(raw));
    }
    return plan;
}

bool decide(const PolySystem& sys, const SolverParams& params, Rng rng) {
    const unsigned n = sys.n();
    if (is_linear(sys))
        return solve_affine(affine_rows(sys), n).consistent;

    bool inconsistent = false;
    const PolySystem pp = preprocess_or_self(sys, inconsistent);
    if (inconsistent)
        return false;

    const std::uint64_t table_bits = wset_size(n, pp.d());
    const unsigned trials_per_k = std::max(1u, params.vv_c * n);
    for (unsigned k = 0; k <= n; ++k) {
        for (unsigned trial = 0; trial < trials_per_k; ++trial) {
            const std::uint64_t idx = static_cast<std::uint64_t>(k) << 20 | trial;
            Rng arng = rng.fork(stream_tag(Stream::affine, idx));
            PolySystem extended = add_affine_equations(pp, k, arng);
            if (extended.m() > table_bits) {
                auto reduced = preprocess(extended);
                if (!reduced)
                    continue; // this hash made the system inconsistent
                extended = std::move(*reduced);
            }
            if (parity_count(extended, params.kappa0, params.engine(),
                             rng.fork(stream_tag(Stream::parity_call, idx))))
                return true;
        }
    }
    return false;
}

SearchResult search(const PolySystem& sys, const SolverParams& params, Rng rng) {
    const unsigned n = sys.n();
    SearchResult res;
    if (is_linear(sys)) {
        const AffineSolution sol = solve_affine(affine_rows(sys), n);
        if (!sol.consistent)
            return res;
        res.status = SearchResult::Status::found;
        res.assignment = sol.particular;
        return res;
    }

    for (unsigned attempt = 0; attempt < std::max(1u, params.search_retries); ++attempt) {
        Rng arng = rng.fork(stream_tag(Stream::search, attempt));
        if (!decide(sys, params, arng.fork(0))) {
            res.status = SearchResult::Status::no_solution;
            return res;
        }
        PolySystem cur = sys;
        std::uint64_t assignment = 0;
        for (unsigned var = 1; var <= n; ++var) {
            PolySystem zero_branch = fix_variable(cur, var, false);
            if (decide(zero_branch, params, arng.fork(var))) {
                cur = std::move(zero_branch);
            } else {
                cur = fix_variable(cur, var, true);
                assignment |= 1ull << (var - 1);
            }
        }
        if (sys.is_solution(assignment)) {
            res.status = SearchResult::Status::found;
            res.assignment = assignment;
            return res;
        }
    }
    res.status = SearchResult::Status::retry_exhausted;
    return res;
}

std::uint64_t recover_suffix(const std::vector<ParityVector>& zv, std::uint64_t iy, unsigned n1) {
    std::uint64_t suffix = 0;
    for (unsigned i = 1; i <= n1; ++i)
        if (!zv[i].bits.get(iy))
            suffix |= 1ull << (i - 1);
    return suffix;
}

std::vector<std::uint64_t> exhaust(const PolySystem& sys, const SolverParams& params, Rng rng) {
    const unsigned n = sys.n();
    if (is_linear(sys)) {
        const AffineSolution sol = solve_affine(affine_rows(sys), n);
        std::vector<std::uint64_t> out;
        if (!sol.consistent)
            return out;
        if (sol.nullspace.size() > 26)
            throw std::domain_error("exhaust: solution space too large to enumerate");
        const std::uint64_t count = 1ull << sol.nullspace.size();
        for (std::uint64_t s = 0; s < count; ++s) {
            std::uint64_t x = sol.particular;
            for (std::size_t b = 0; b < sol.nullspace.size(); ++b)
                if ((s >> b) & 1u)
                    x ^= sol.nullspace[b];
            out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool inconsistent = false;
    const PolySystem pp = preprocess_or_self(sys, inconsistent);
    if (inconsistent)
        return {};

    const IsolationPlan plan = plan_isolation(pp, params, rng.fork(stream_tag(Stream::estimate)));
    const unsigned n1 = plan.n1;
    const unsigned n_outer = n - n1;
    const auto& outer_pts = wset_points(n_outer, n_outer);

    std::set<std::uint64_t> found;
    for (unsigned iter = 0; iter < plan.r; ++iter) {
        Rng irng = rng.fork(stream_tag(Stream::iterate, iter));
        auto [b_mat, b_inv] = sample_invertible(n, irng);
        (void)b_inv;
        const PolySystem q = change_variables(pp, b_mat);

        // Base vector plus one vector per inner variable with z_i pinned to
        // 0; pinning appends the linear equation z_i so the inner sum skips
        // that variable while (n1, w) and the indexing stay unchanged.
        std::vector<ParityVector> zv;
        zv.reserve(n1 + 1);
        zv.push_back(mult_parity_count(q, n1, n_outer, params.engine(),
                                       irng.fork(stream_tag(Stream::parity_call, 0))));
        for (unsigned i = 1; i <= n1; ++i) {
            const unsigned var = n_outer + i;
            PolySystem qi = fix_variable(q, var, false);
            AnfPoly pin(n, q.d());
            pin.set_coeff(1ull << (var - 1), true);
            qi.add(std::move(pin));
            zv.push_back(mult_parity_count(qi, n1, n_outer, params.engine(),
                                           irng.fork(stream_tag(Stream::parity_call, i))));
        }

        for (std::uint64_t iy = 0; iy < outer_pts.size(); ++iy) {
            if (!zv[0].bits.get(iy))
                continue;
            const std::uint64_t v = outer_pts[iy] | (recover_suffix(zv, iy, n1) << n_outer);
            const std::uint64_t x = b_mat.mul_vec(v);
            if (sys.is_solution(x))
                found.insert(x);
        }
    }
    return std::vector<std::uint64_t>(found.begin(), found.end());
}

bool parity(const PolySystem& sys, const SolverParams& params, Rng rng) {
    if (is_linear(sys)) {
        const AffineSolution sol = solve_affine(affine_rows(sys), sys.n());
        return sol.consistent && sol.nullspace.empty();
    }
    return parity_count(sys, params.kappa0, params.engine(),
                        rng.fork(stream_tag(Stream::parity_call, 0)));
}

std::vector<bool> isolation_check(const PolySystem& sys, const F2Matrix& B, unsigned n1,
                                  unsigned cap) {
    const auto inv = B.inverse();
    if (!inv)
        throw std::domain_error("isolation_check: matrix is not invertible");
    const std::vector<std::uint64_t> sols = oracle::solutions(sys, cap);
    const unsigned n_outer = sys.n() - n1;
    const std::uint64_t outer_mask = low_mask(n_outer);

    std::vector<std::uint64_t> prefixes;
    prefixes.reserve(sols.size());
    for (std::uint64_t x : sols)
        prefixes.push_back(inv->mul_vec(x) & outer_mask);

    std::vector<bool> flags(sols.size(), true);
    for (std::size_t i = 0; i < sols.size(); ++i)
        for (std::size_t j = 0; j < sols.size(); ++j)
            if (i != j && prefixes[i] == prefixes[j]) {
                flags[i] = false;
                break;
            }
    return flags;
}

} // namespace mq
