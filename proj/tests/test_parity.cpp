#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mq/oracle.hpp"
#include "mq/parity.hpp"

using namespace mq;

namespace {

bool vectors_equal(const ParityVector& got, const std::vector<bool>& want) {
    if (got.bits.size() != want.size())
        return false;
    for (std::size_t i = 0; i < want.size(); ++i)
        if (got.bits.get(i) != want[i])
            return false;
    return true;
}

} // namespace

TEST_CASE("brute force: empty system parity is the cube-size parity") {
    const PolySystem sys = parse_system("vars 6\ndeg 1\n");
    const auto v1 = brute_force_mult_parity(sys, 2, 3);
    CHECK(v1.bits.popcount() == 0); // 2^2 solutions per prefix

    const auto v0 = brute_force_mult_parity(sys, 0, 4);
    CHECK(v0.bits.popcount() == v0.bits.size()); // single point each
}

TEST_CASE("brute force: one inner equation pins one extension per prefix") {
    // z1 is the last variable; the only solution per prefix has z1 = 0
    const PolySystem sys = parse_system("vars 6\ndeg 1\nx6\n");
    const auto v = brute_force_mult_parity(sys, 1, 5);
    CHECK(v.bits.popcount() == v.bits.size());
}

TEST_CASE("brute force matches the oracle on random systems") {
    Rng rng(100);
    for (unsigned d : {2u, 3u}) {
        for (int i = 0; i < 25; ++i) {
            const unsigned n = 5 + static_cast<unsigned>(rng.below(5)); // 5..9
            const unsigned m = 1 + static_cast<unsigned>(rng.below(2 * n));
            const PolySystem sys = random_system(n, std::min(d, n), m, rng);
            const unsigned n1 = static_cast<unsigned>(rng.below(n + 1));
            const unsigned w = static_cast<unsigned>(rng.below(n - n1 + 1));
            const auto got = brute_force_mult_parity(sys, n1, w);
            CHECK(vectors_equal(got, oracle::mult_parity(sys, n1, w)));
        }
    }
}

TEST_CASE("the w = 0 vector is the single restricted parity") {
    Rng rng(101);
    const PolySystem sys = random_system(8, 2, 4, rng);
    const auto got = brute_force_mult_parity(sys, 3, 0);
    CHECK(got.bits.size() == 1);
    CHECK(vectors_equal(got, oracle::mult_parity(sys, 3, 0)));
}

TEST_CASE("mult_parity_count delegates to brute force when the block empties") {
    Rng rng(102);
    const PolySystem sys = random_system(9, 2, 6, rng);
    EngineParams p;
    p.lambda = 0.9; // floor(n1 - 0.9 n) <= 0 for any n1 <= n/2-ish
    for (unsigned n1 : {0u, 2u, 4u}) {
        const auto recursive = mult_parity_count(sys, n1, 9 - n1, p, Rng(1));
        const auto brute = brute_force_mult_parity(sys, n1, 9 - n1);
        CHECK(recursive.bits == brute.bits);
    }
}

TEST_CASE("one forced recursion level reproduces the brute-force vector") {
    // lambda*n = 2 with n1 = 3 gives n2 = 1 at the top and brute force below
    for (unsigned d : {2u, 3u}) {
        int mismatches = 0;
        for (int seed = 0; seed < 30; ++seed) {
            Rng rng(200 + 50 * d + seed);
            const unsigned n = 10;
            const PolySystem sys = random_system(n, d, 8, rng);
            EngineParams p;
            p.lambda = 2.0 / n;
            p.trials = default_trials(n);
            const auto got = mult_parity_count(sys, 3, n - 3, p, Rng(seed));
            const auto want = brute_force_mult_parity(sys, 3, n - 3);
            if (got.bits != want.bits)
                ++mismatches;
        }
        CHECK(mismatches == 0); // failure probability ~2^-n per run
    }
}

TEST_CASE("identical seeds give identical vectors, threaded or not") {
    Rng rng(103);
    const PolySystem sys = random_system(10, 2, 6, rng);
    EngineParams p1;
    p1.lambda = 0.2;
    p1.trials = 49;
    EngineParams p3 = p1;
    p3.threads = 3;
    const auto a = mult_parity_count(sys, 3, 7, p1, Rng(42));
    const auto b = mult_parity_count(sys, 3, 7, p1, Rng(42));
    const auto c = mult_parity_count(sys, 3, 7, p3, Rng(42));
    CHECK(a.bits == b.bits);
    CHECK(a.bits == c.bits);
}

TEST_CASE("parity_count trivial cases") {
    EngineParams p;
    const PolySystem empty = parse_system("vars 5\ndeg 1\n");
    CHECK(parity_count(empty, 0.3, p, Rng(0)) == false); // 2^5 solutions

    const PolySystem two = parse_system("vars 2\ndeg 1\nx1 + x2 + 1\n");
    CHECK(parity_count(two, 0.5, p, Rng(0)) == false); // two solutions
}

TEST_CASE("parity_count matches the oracle parity on random systems") {
    int mismatches = 0;
    for (int seed = 0; seed < 40; ++seed) {
        Rng rng(300 + seed);
        const unsigned n = 6 + static_cast<unsigned>(rng.below(5)); // 6..10
        const PolySystem sys = random_system(n, 2, n, rng);
        EngineParams p;
        p.lambda = 2.0 / n;
        const bool got = parity_count(sys, 0.3, p, Rng(seed));
        if (got != oracle::parity(sys))
            ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("parity_count validates kappa0") {
    const PolySystem sys = parse_system("vars 6\ndeg 2\nx1*x2\n");
    EngineParams p;
    CHECK_THROWS_AS(parity_count(sys, 0.0, p, Rng(0)), std::invalid_argument);
    CHECK_THROWS_AS(parity_count(sys, 0.5, p, Rng(0)), std::invalid_argument);
}

TEST_CASE("trial count must be odd and fit the scoreboard") {
    Rng rng(104);
    const PolySystem sys = random_system(8, 2, 4, rng);
    EngineParams p;
    p.lambda = 0.125;
    p.trials = 48; // even
    CHECK_THROWS_AS(mult_parity_count(sys, 2, 6, p, Rng(0)), std::invalid_argument);
}

TEST_CASE("single-trial partial parities are right at least 3/4 of the time") {
    Rng rng(105);
    const unsigned n = 8, n2 = 2, ell = n2 + 2;
    const PolySystem sys = random_system(n, 2, 6, rng);

    // true partial parity at a fixed (y, u) prefix: sum over the v-cube
    const auto truth = oracle::mult_parity(sys, n2, n - n2);
    WSet outer(n - n2, n - n2);

    const int trials = 3000;
    std::vector<int> correct(3, 0);
    const std::uint64_t probe[3] = {0, 5, outer.size() - 1};
    for (int k = 0; k < trials; ++k) {
        Rng r(k);
        const PolySystem combos = random_combinations(sys, ell, r);
        const auto approx = oracle::mult_parity(combos, n2, n - n2);
        for (int i = 0; i < 3; ++i)
            correct[i] += approx[probe[i]] == truth[probe[i]] ? 1 : 0;
    }
    const double sigma = std::sqrt(0.25 * 0.75 / trials);
    for (int i = 0; i < 3; ++i)
        CHECK(static_cast<double>(correct[i]) / trials >= 0.75 - 3 * sigma);
}

TEST_CASE("recursion schedule matches the hand computation for (40, 0.3, 0.1)") {
    EngineParams p;
    p.lambda = 0.1;
    const auto plan = plan_recursion(40, 2, 12, 28, p);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].n1 == 12);
    CHECK(plan[0].n2 == 8);
    CHECK(plan[0].ell == 10);
    CHECK(plan[0].w == 28);
    CHECK(!plan[0].brute);
    CHECK(plan[1].n1 == 8);
    CHECK(plan[1].n2 == 4);
    CHECK(plan[1].ell == 6);
    CHECK(plan[1].w == 12); // n2(d-1) + 2d = 8 + 4
    CHECK(plan[2].n1 == 4);
    CHECK(plan[2].brute);
    CHECK(plan[2].w == 8);
    CHECK(plan[1].nodes == default_trials(40));
    CHECK(plan[2].nodes == static_cast<std::uint64_t>(default_trials(40)) * default_trials(40));
}

TEST_CASE("profile counters: node counts per level") {
    Rng rng(106);
    const unsigned n = 10;
    const PolySystem sys = random_system(n, 2, 5, rng);

    // depth-0 only: brute force at the top is a single node
    {
        EngineParams p;
        p.lambda = 0.9;
        RecursionProfile prof;
        mult_parity_count(sys, 3, 7, p, Rng(0), &prof);
        const auto levels = prof.levels();
        REQUIRE(levels.size() == 1);
        CHECK(levels[0].nodes == 1);
        CHECK(levels[0].brute_nodes == 1);
    }
    // one recursion level: level-1 node count equals t
    {
        EngineParams p;
        p.lambda = 2.0 / n;
        p.trials = 7;
        RecursionProfile prof;
        mult_parity_count(sys, 3, 7, p, Rng(0), &prof);
        const auto levels = prof.levels();
        REQUIRE(levels.size() == 2);
        CHECK(levels[0].nodes == 1);
        CHECK(levels[0].brute_nodes == 0);
        CHECK(levels[1].nodes == 7);
        CHECK(levels[1].brute_nodes == 7);
    }
    // t = 1: exactly one recursive node
    {
        EngineParams p;
        p.lambda = 2.0 / n;
        p.trials = 1;
        RecursionProfile prof;
        mult_parity_count(sys, 3, 7, p, Rng(0), &prof);
        const auto levels = prof.levels();
        REQUIRE(levels.size() == 2);
        CHECK(levels[1].nodes == 1);
    }
}

TEST_CASE("majority threshold is strict") {
    CHECK(majority(25, 49));
    CHECK(!majority(24, 49));
    CHECK(majority(1, 1));
    CHECK(!majority(0, 1));
}
