#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "mq/bits.hpp"
#include "mq/rng.hpp"
#include "mq/system.hpp"

namespace mq {

/// Output of multiple parity-counting: bit i is the parity of solutions
/// extending the i-th point of W^{n-n1}_w (canonical order) over the inner
/// cube.
struct ParityVector {
    unsigned n_outer = 0;
    unsigned w = 0;
    BitVec bits;
};

/// Engine knobs. lambda is the per-level shrink fraction of the inner block,
/// relative to the system's full variable count; trials is the scoreboard
/// repetition count t (must be odd; 0 selects the proof constant 48n+1).
struct EngineParams {
    double lambda = 0.2;
    std::uint32_t trials = 0;
    unsigned threads = 1;
};

/// Per-point vote counters across the trials of one recursion node.
/// Majority is well-defined because t is odd; the threshold is strict > t/2.
struct Scoreboard {
    explicit Scoreboard(std::uint64_t entries) : votes(entries, 0) {}
    std::vector<std::uint16_t> votes;

    void add(const BitVec& evals);
    void merge(const Scoreboard& other);
};

inline bool majority(std::uint32_t votes, std::uint32_t t) {
    return 2ull * votes > t;
}

/// Work census for one recursion level; all counts are exact and
/// deterministic given the seed.
struct LevelStats {
    unsigned level = 0;
    std::uint64_t nodes = 0;
    std::uint64_t brute_nodes = 0;
    std::uint64_t outer_wset_bits = 0;     // |W^{n-n1}_w| at this level
    std::uint64_t scoreboard_entries = 0;
    std::uint64_t transform_word_ops = 0;  // butterfly word XOR equivalents
    std::uint64_t scatter_ops = 0;         // coefficient placements
};

class RecursionProfile {
public:
    void record(unsigned level, bool brute, std::uint64_t wset_bits, std::uint64_t sb_entries,
                std::uint64_t word_ops, std::uint64_t scatter);
    std::vector<LevelStats> levels() const;

private:
    mutable std::mutex mu_;
    std::vector<LevelStats> levels_;
};

/// Planned (not measured) schedule for a run: the per-level parameters and
/// node counts implied by (n, d, n1, w, params). Usable at any n, including
/// sizes far beyond what can execute.
struct LevelPlan {
    unsigned level = 0;
    unsigned n1 = 0;
    int n2 = 0;   // floor(n1 - lambda*n), before the <=0 brute-force test
    unsigned ell = 0;
    unsigned w = 0;
    bool brute = false;
    std::uint64_t nodes = 0;        // t^level, saturating
    double log2_outer_wset = 0.0;   // log2 |W^{n-n1}_w|
};

std::vector<LevelPlan> plan_recursion(unsigned n, unsigned d, unsigned n1, unsigned w,
                                      const EngineParams& params);
std::uint32_t default_trials(unsigned n);
double log2_wset_size(double n, double w);

/// Exact multiple parity-counting: evaluate every P_j on
/// W^{n-n1}_w x {0,1}^{n1} by the mixed Mobius transform, AND the
/// complemented evaluations, and XOR-fold each inner block.
ParityVector brute_force_mult_parity(const PolySystem& sys, unsigned n1, unsigned w,
                                     RecursionProfile* profile = nullptr, unsigned level = 0);

/// Recursive multiple parity-counting with probabilistic polynomials and
/// scoreboard majority votes. Delegates to brute force once the shrunk inner
/// block would be empty. With t = 48n+1 the result equals the true vector
/// except with probability <= 2^-n.
ParityVector mult_parity_count(const PolySystem& sys, unsigned n1, unsigned w,
                               const EngineParams& params, Rng rng,
                               RecursionProfile* profile = nullptr, unsigned level = 0);

/// Total parity of solutions: one multiple parity-counting call with
/// n1 = floor(kappa0 * n) and the full outer cube, XOR-folded.
/// Requires 0 < kappa0 <= 1/(2d-1).
bool parity_count(const PolySystem& sys, double kappa0, const EngineParams& params, Rng rng,
                  RecursionProfile* profile = nullptr);

} // namespace mq
