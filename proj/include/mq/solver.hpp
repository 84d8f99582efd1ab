#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mq/f2mat.hpp"
#include "mq/parity.hpp"
#include "mq/rng.hpp"
#include "mq/system.hpp"

namespace mq {

struct SolverParams {
    double lambda = 0.2;
    double kappa0 = 0.25;
    std::uint32_t trials = 0;       // 0 -> 48n+1
    unsigned vv_c = 4;              // decide runs vv_c * n trials per k
    unsigned r = 0;                 // exhaust iterations; 0 -> 2n
    std::uint64_t estimate_budget = 0; // 0 -> auto from (n, d)
    unsigned threads = 1;
    unsigned search_retries = 3;

    EngineParams engine() const { return EngineParams{lambda, trials, threads}; }

    /// Desk-scale defaults: lambda = max(1/floor(n/2), 0.05) so the inner
    /// block shrinks every level, kappa0 = 1 - tau(d) for d >= 2.
    static SolverParams defaults(unsigned n, unsigned d);
};

/// Solution-count estimate by uniform sampling. below_threshold means the
/// implied count is at most 2^{tau(d) n - 2} (or the sample budget ran out
/// with too few hits), in which case the caller falls back to the
/// parity-counting partition size.
struct EstimateResult {
    bool below_threshold = false;
    double k_tilde = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
};

EstimateResult estimate_solution_count(const PolySystem& sys, std::uint64_t budget, Rng rng);

/// Partition plan for one exhaust run: iteration count and inner block size,
/// derived once from the solution-count estimate.
struct IsolationPlan {
    unsigned r = 0;
    unsigned n1 = 0;
    std::optional<double> k_tilde;
};

IsolationPlan plan_isolation(const PolySystem& sys, const SolverParams& params, Rng rng);

/// Satisfiability via Valiant-Vazirani affine hashing: for k = 0..n, run
/// vv_c * n parity-counting calls on the system extended with k fresh random
/// affine equations; the first odd parity answers yes. One-sided: a yes is
/// wrong only if parity counting erred.
bool decide(const PolySystem& sys, const SolverParams& params, Rng rng);

struct SearchResult {
    enum class Status { found, no_solution, retry_exhausted };
    Status status = Status::no_solution;
    std::uint64_t assignment = 0;
};

/// Search by iteratively fixing variables through decide, with final
/// verification and bounded fresh-randomness retries.
SearchResult search(const PolySystem& sys, const SolverParams& params, Rng rng);

/// All solutions (sorted, deduplicated) via repeated random change of
/// variables, multiple parity-counting, and per-bit recovery. Every returned
/// assignment is verified against the system, so soundness is unconditional.
std::vector<std::uint64_t> exhaust(const PolySystem& sys, const SolverParams& params, Rng rng);

/// Parity of the solution count (mode = parity entry point; d <= 1 systems
/// short-circuit to Gaussian elimination).
bool parity(const PolySystem& sys, const SolverParams& params, Rng rng);

/// Suffix recovery from the per-variable parity vectors of one exhaust
/// iteration: zv[0] is the base vector, zv[i] the vector with z_i pinned to
/// 0; bit i-1 of the result is 0 iff zv[i] is set at outer index iy.
std::uint64_t recover_suffix(const std::vector<ParityVector>& zv, std::uint64_t iy, unsigned n1);

/// Test support: for each solution of sys (exhaustively enumerated), report
/// whether B^{-1} x is isolated under the (y, z) split at n1.
std::vector<bool> isolation_check(const PolySystem& sys, const F2Matrix& B, unsigned n1,
                                  unsigned cap = 24);

} // namespace mq
