#include "mq/oracle.hpp"

#include <stdexcept>

#include "mq/wset.hpp"

namespace mq::oracle {

namespace {

void check_cap(unsigned n, unsigned cap) {
    if (n > cap)
        throw std::domain_error("oracle: n exceeds the exhaustive-enumeration cap");
}

std::vector<std::uint64_t> monomials_of(const AnfPoly& p) {
    std::vector<std::uint64_t> masks;
    const auto& pts = wset_points(p.n(), p.degree_bound());
    for (std::uint64_t r = 0; r < pts.size(); ++r)
        if (p.coeffs().get(r))
            masks.push_back(pts[r]);
    return masks;
}

} // namespace

bool eval_poly(const AnfPoly& p, std::uint64_t x) {
    bool acc = false;
    for (std::uint64_t mono : monomials_of(p))
        acc ^= (x & mono) == mono;
    return acc;
}

bool is_solution(const PolySystem& sys, std::uint64_t x) {
    for (unsigned j = 0; j < sys.m(); ++j)
        if (eval_poly(sys.poly(j), x))
            return false;
    return true;
}

std::vector<std::uint64_t> solutions(const PolySystem& sys, unsigned cap) {
    check_cap(sys.n(), cap);
    std::vector<std::vector<std::uint64_t>> masks;
    for (unsigned j = 0; j < sys.m(); ++j)
        masks.push_back(monomials_of(sys.poly(j)));

    std::vector<std::uint64_t> out;
    const std::uint64_t total = 1ull << sys.n();
    for (std::uint64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (const auto& poly : masks) {
            bool v = false;
            for (std::uint64_t mono : poly)
                v ^= (x & mono) == mono;
            if (v) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(x);
    }
    return out;
}

std::vector<bool> mult_parity(const PolySystem& sys, unsigned n1, unsigned w, unsigned cap) {
    check_cap(sys.n(), cap);
    if (n1 > sys.n() || w > sys.n() - n1)
        throw std::domain_error("oracle::mult_parity: bad partition");
    const unsigned n_outer = sys.n() - n1;
    std::vector<std::vector<std::uint64_t>> masks;
    for (unsigned j = 0; j < sys.m(); ++j)
        masks.push_back(monomials_of(sys.poly(j)));

    const auto& outer_pts = wset_points(n_outer, w);
    std::vector<bool> v(outer_pts.size(), false);
    for (std::size_t i = 0; i < outer_pts.size(); ++i) {
        bool par = false;
        for (std::uint64_t z = 0; z < (1ull << n1); ++z) {
            const std::uint64_t x = outer_pts[i] | (z << n_outer);
            bool sol = true;
            for (const auto& poly : masks) {
                bool val = false;
                for (std::uint64_t mono : poly)
                    val ^= (x & mono) == mono;
                if (val) {
                    sol = false;
                    break;
                }
            }
            par ^= sol;
        }
        v[i] = par;
    }
    return v;
}

bool parity(const PolySystem& sys, unsigned cap) {
    return solutions(sys, cap).size() & 1u;
}

} // namespace mq::oracle
