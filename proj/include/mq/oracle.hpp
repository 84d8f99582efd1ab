#pragma once

#include <cstdint>
#include <vector>

#include "mq/system.hpp"

namespace mq {

struct ParityVector; // parity.hpp

namespace oracle {

inline constexpr unsigned kDefaultCap = 24;

/// Evaluate P_j(x) term by term from an explicit monomial list. Deliberately
/// simple; shares nothing with the engine's transform code paths.
bool eval_poly(const AnfPoly& p, std::uint64_t x);
bool is_solution(const PolySystem& sys, std::uint64_t x);

/// All solutions by exhaustive enumeration of {0,1}^n (ascending).
/// Refuses n beyond the cap.
std::vector<std::uint64_t> solutions(const PolySystem& sys, unsigned cap = kDefaultCap);

/// Ground truth for multiple parity-counting: a direct double loop over
/// W^{n-n1}_w x {0,1}^{n1} with per-point evaluation.
std::vector<bool> mult_parity(const PolySystem& sys, unsigned n1, unsigned w,
                              unsigned cap = kDefaultCap);

/// Number of solutions mod 2.
bool parity(const PolySystem& sys, unsigned cap = kDefaultCap);

} // namespace oracle
} // namespace mq
