#include "mq/system.hpp"

#include <algorithm>
#include <cctype>

namespace mq {

PolySystem::PolySystem(unsigned n, unsigned d) : n_(n), d_(d) {
    if (n > 64)
        throw std::domain_error("PolySystem: n exceeds 64");
    if (d > n)
        throw std::domain_error("PolySystem: degree bound exceeds n");
}

void PolySystem::add(AnfPoly p) {
    if (p.n() != n_ || p.degree_bound() != d_)
        throw std::invalid_argument("PolySystem::add: (n, d) mismatch");
    polys_.push_back(std::move(p));
}

PolySystem::Evaluation PolySystem::evaluate(std::uint64_t x) const {
    Evaluation ev;
    ev.residuals.reserve(polys_.size());
    for (const AnfPoly& p : polys_) {
        const bool r = p.evaluate(x);
        ev.residuals.push_back(r);
        if (r)
            ev.is_solution = false;
    }
    return ev;
}

bool PolySystem::is_solution(std::uint64_t x) const {
    for (const AnfPoly& p : polys_)
        if (p.evaluate(x))
            return false;
    return true;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    unsigned line = 1;
    unsigned col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_spaces() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
            advance();
    }
};

[[noreturn]] void fail(const Cursor& c, const std::string& what) {
    throw ParseError(c.line, c.col, what);
}

std::uint64_t parse_number(Cursor& c, const char* what) {
    c.skip_spaces();
    if (c.eof() || !std::isdigit(static_cast<unsigned char>(c.peek())))
        fail(c, std::string("expected ") + what);
    std::uint64_t v = 0;
    while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + static_cast<std::uint64_t>(c.peek() - '0');
        if (v > 1'000'000)
            fail(c, std::string(what) + " out of range");
        c.advance();
    }
    return v;
}

void expect_line_end(Cursor& c) {
    c.skip_spaces();
    if (!c.eof() && c.peek() == '#') {
        while (!c.eof() && c.peek() != '\n')
            c.advance();
    }
    if (!c.eof()) {
        if (c.peek() != '\n')
            fail(c, "unexpected trailing characters");
        c.advance();
    }
}

bool skip_blank_or_comment(Cursor& c) {
    c.skip_spaces();
    if (c.eof())
        return true;
    if (c.peek() == '\n') {
        c.advance();
        return true;
    }
    if (c.peek() == '#') {
        while (!c.eof() && c.peek() != '\n')
            c.advance();
        if (!c.eof())
            c.advance();
        return true;
    }
    return false;
}

std::string parse_word(Cursor& c) {
    c.skip_spaces();
    std::string w;
    while (!c.eof() && std::isalpha(static_cast<unsigned char>(c.peek()))) {
        w.push_back(c.peek());
        c.advance();
    }
    return w;
}

// One monomial: `1`, `0` or x<i> [* x<j> ...]. Returns the variable mask and
// sets is_zero for the `0` token.
std::uint64_t parse_monomial(Cursor& c, unsigned n, unsigned d, bool& is_zero) {
    c.skip_spaces();
    is_zero = false;
    if (c.eof())
        fail(c, "expected a monomial");
    if (c.peek() == '1') {
        c.advance();
        return 0;
    }
    if (c.peek() == '0') {
        c.advance();
        is_zero = true;
        return 0;
    }
    std::uint64_t mask = 0;
    for (;;) {
        c.skip_spaces();
        if (c.eof() || c.peek() != 'x')
            fail(c, "expected a variable token x<i>");
        c.advance();
        const std::uint64_t idx = parse_number(c, "variable index");
        if (idx < 1 || idx > n)
            fail(c, "variable index out of range");
        mask |= 1ull << (idx - 1);
        if (static_cast<unsigned>(__builtin_popcountll(mask)) > d)
            fail(c, "monomial degree exceeds the declared bound");
        c.skip_spaces();
        if (!c.eof() && c.peek() == '*') {
            c.advance();
            continue;
        }
        break;
    }
    return mask;
}

} // namespace

PolySystem parse_system(std::string_view text) {
    Cursor c{text};

    while (!c.eof() && skip_blank_or_comment(c)) {
    }
    if (parse_word(c) != "vars")
        fail(c, "expected `vars <n>` header");
    const std::uint64_t n = parse_number(c, "variable count");
    if (n > 64)
        fail(c, "variable count exceeds 64");
    expect_line_end(c);

    while (!c.eof() && skip_blank_or_comment(c)) {
    }
    if (parse_word(c) != "deg")
        fail(c, "expected `deg <d>` header");
    const std::uint64_t d = parse_number(c, "degree bound");
    if (d > n)
        fail(c, "degree bound exceeds the variable count");
    expect_line_end(c);

    PolySystem sys(static_cast<unsigned>(n), static_cast<unsigned>(d));
    while (!c.eof()) {
        if (skip_blank_or_comment(c))
            continue;
        AnfPoly p(sys.n(), sys.d());
        for (;;) {
            bool is_zero = false;
            const std::uint64_t mono = parse_monomial(c, sys.n(), sys.d(), is_zero);
            if (!is_zero)
                p.set_coeff(mono, !p.coeff(mono)); // duplicates cancel over F2
            c.skip_spaces();
            if (!c.eof() && c.peek() == '+') {
                c.advance();
                continue;
            }
            break;
        }
        expect_line_end(c);
        sys.add(std::move(p));
    }
    return sys;
}

std::string serialize_system(const PolySystem& sys) {
    std::string out;
    out += "vars " + std::to_string(sys.n()) + "\n";
    out += "deg " + std::to_string(sys.d()) + "\n";
    const auto& pts = wset_points(sys.n(), sys.d());
    for (unsigned j = 0; j < sys.m(); ++j) {
        const BitVec& coeffs = sys.poly(j).coeffs();
        bool first = true;
        for (std::uint64_t r = 0; r < pts.size(); ++r) {
            if (!coeffs.get(r))
                continue;
            if (!first)
                out += " + ";
            first = false;
            std::uint64_t mono = pts[r];
            if (mono == 0) {
                out += "1";
            } else {
                bool firstVar = true;
                while (mono) {
                    const unsigned i = static_cast<unsigned>(__builtin_ctzll(mono));
                    if (!firstVar)
                        out += "*";
                    firstVar = false;
                    out += "x" + std::to_string(i + 1);
                    mono &= mono - 1;
                }
            }
        }
        if (first)
            out += "0";
        out += "\n";
    }
    return out;
}

PolySystem random_combinations(const PolySystem& sys, unsigned ell, Rng& rng) {
    if (ell < 1)
        throw std::invalid_argument("random_combinations: ell must be positive");
    PolySystem out(sys.n(), sys.d());
    const std::uint64_t table_bits = wset_size(sys.n(), sys.d());
    for (unsigned i = 0; i < ell; ++i) {
        BitVec acc(table_bits);
        for (unsigned j = 0; j < sys.m(); ++j)
            if (rng.bit())
                acc.xor_with(sys.poly(j).coeffs());
        out.add(AnfPoly::from_table(sys.n(), sys.d(), std::move(acc)));
    }
    return out;
}

PolySystem fix_variable(const PolySystem& sys, unsigned var, bool value) {
    if (var < 1 || var > sys.n())
        throw std::invalid_argument("fix_variable: variable index out of range");
    const std::uint64_t bit = 1ull << (var - 1);
    const auto& pts = wset_points(sys.n(), sys.d());
    const WSet ws(sys.n(), sys.d());
    PolySystem out(sys.n(), sys.d());
    for (unsigned j = 0; j < sys.m(); ++j) {
        BitVec coeffs = sys.poly(j).coeffs();
        for (std::uint64_t r = 0; r < pts.size(); ++r) {
            if (!(pts[r] & bit) || !coeffs.get(r))
                continue;
            coeffs.set(r, false);
            if (value)
                coeffs.flip(ws.rank(pts[r] ^ bit)); // x_var = 1: merge into the reduced monomial
        }
        out.add(AnfPoly::from_table(sys.n(), sys.d(), std::move(coeffs)));
    }
    return out;
}

PolySystem add_affine_equations(const PolySystem& sys, unsigned k, Rng& rng) {
    if (k > 0 && sys.d() < 1)
        throw std::domain_error("add_affine_equations: degree bound below 1");
    PolySystem out = sys;
    const std::uint64_t var_mask = low_mask(sys.n());
    for (unsigned i = 0; i < k; ++i) {
        AnfPoly p(sys.n(), sys.d());
        std::uint64_t a = rng.next() & var_mask;
        if (rng.bit())
            p.set_coeff(0, true);
        while (a) {
            const unsigned v = static_cast<unsigned>(__builtin_ctzll(a));
            p.set_coeff(1ull << v, true);
            a &= a - 1;
        }
        out.add(std::move(p));
    }
    return out;
}

namespace {

// Multiply a multilinear coefficient table by the affine form
// (sum over bits of lin x_i) + c, over F2 (x_i^2 = x_i).
BitVec multiply_by_affine(const BitVec& coeffs, const std::vector<std::uint64_t>& pts,
                          const WSet& ws, std::uint64_t lin, bool c) {
    BitVec out(coeffs.size());
    for (std::uint64_t r = 0; r < pts.size(); ++r) {
        if (!coeffs.get(r))
            continue;
        const std::uint64_t mono = pts[r];
        if (c)
            out.flip(r);
        std::uint64_t l = lin;
        while (l) {
            const unsigned v = static_cast<unsigned>(__builtin_ctzll(l));
            out.flip(ws.rank(mono | (1ull << v)));
            l &= l - 1;
        }
    }
    return out;
}

} // namespace

PolySystem change_variables(const PolySystem& sys, const F2Matrix& B) {
    if (B.n() != sys.n())
        throw std::invalid_argument("change_variables: matrix size mismatch");
    if (!B.inverse())
        throw std::domain_error("change_variables: matrix is not invertible");
    const unsigned n = sys.n();
    const unsigned d = sys.d();
    const auto& pts = wset_points(n, d);
    const WSet ws(n, d);

    // Row i of B is the linear form substituted for x_i.
    PolySystem out(n, d);
    for (unsigned j = 0; j < sys.m(); ++j) {
        BitVec acc(pts.size());
        const BitVec& coeffs = sys.poly(j).coeffs();
        for (std::uint64_t r = 0; r < pts.size(); ++r) {
            if (!coeffs.get(r))
                continue;
            std::uint64_t mono = pts[r];
            BitVec term(pts.size());
            term.set(0, true); // constant 1
            while (mono) {
                const unsigned i = static_cast<unsigned>(__builtin_ctzll(mono));
                term = multiply_by_affine(term, pts, ws, B.row(i), false);
                mono &= mono - 1;
            }
            acc.xor_with(term);
        }
        out.add(AnfPoly::from_table(n, d, std::move(acc)));
    }
    return out;
}

std::optional<PolySystem> preprocess(const PolySystem& sys) {
    const std::uint64_t cols = wset_size(sys.n(), sys.d());
    std::vector<BitVec> rows;
    rows.reserve(sys.m());
    for (unsigned j = 0; j < sys.m(); ++j)
        rows.push_back(sys.poly(j).coeffs());

    // Row echelon with the constant column (rank 0) considered last, so a
    // pivot landing there means the row reads 0 = 1.
    std::size_t rank = 0;
    for (std::uint64_t c = 1; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(c))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i].get(c))
                rows[i].xor_with(rows[rank]);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i].get(0))
            return std::nullopt; // inconsistent: 0 = 1

    PolySystem out(sys.n(), sys.d());
    for (std::size_t i = 0; i < rank; ++i)
        out.add(AnfPoly::from_table(sys.n(), sys.d(), std::move(rows[i])));
    return out;
}

PolySystem random_system(unsigned n, unsigned d, unsigned m, Rng& rng, std::uint64_t* planted) {
    const std::uint64_t table_bits = wset_size(n, d);
    std::uint64_t x = 0;
    if (planted) {
        x = rng.next() & low_mask(n);
        *planted = x;
    }
    PolySystem sys(n, d);
    for (unsigned j = 0; j < m; ++j) {
        BitVec coeffs(table_bits);
        rng.fill_bits(coeffs.data(), table_bits);
        AnfPoly p = AnfPoly::from_table(n, d, std::move(coeffs));
        if (planted && p.evaluate(x))
            p.set_coeff(0, !p.coeff(0));
        sys.add(std::move(p));
    }
    return sys;
}

} // namespace mq
