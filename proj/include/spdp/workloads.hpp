#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "spdp/cnf.hpp"
#include "spdp/errors.hpp"
#include "spdp/poly.hpp"

namespace spdp {

// Variable layout for n x n matrix workloads: x_{i,j} has index i*n + j.
inline uint32_t matrix_var(uint32_t n, uint32_t i, uint32_t j) { return i * n + j; }

namespace detail {

template <typename Fn>
void for_each_permutation(uint32_t n, Fn&& fn) {
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    // iterate permutations in lexicographic order, tracking parity
    bool even = true;
    while (true) {
        fn(perm, even);
        // next_permutation with parity: each adjacent swap flips parity; count swaps
        uint32_t i = n;
        if (n < 2) return;
        i = n - 1;
        while (i > 0 && perm[i - 1] >= perm[i]) --i;
        if (i == 0) return;
        uint32_t j = n - 1;
        while (perm[j] <= perm[i - 1]) --j;
        std::swap(perm[i - 1], perm[j]);
        even = !even;
        uint32_t lo = i, hi = n - 1;
        while (lo < hi) {
            std::swap(perm[lo], perm[hi]);
            even = !even;
            ++lo; --hi;
        }
    }
}

}  // namespace detail

// perm_n: sum over permutations of prod_i x_{i,sigma(i)}. n! terms.
inline SparsePoly permanent(FieldCtx ctx, uint32_t n, uint32_t cap = 6) {
    if (n < 1 || n > cap) throw SizeError("permanent: n out of range (cap " + std::to_string(cap) + ")");
    SparsePoly p(ctx, n * n);
    detail::for_each_permutation(n, [&](const std::vector<uint32_t>& perm, bool) {
        std::vector<uint32_t> vars;
        vars.reserve(n);
        for (uint32_t i = 0; i < n; ++i) vars.push_back(matrix_var(n, i, perm[i]));
        std::sort(vars.begin(), vars.end());
        p.add_term(Monomial::from_vars(vars), 1);
    });
    return p;
}

// det_n: signed permutation expansion.
inline SparsePoly determinant(FieldCtx ctx, uint32_t n, uint32_t cap = 6) {
    if (n < 1 || n > cap) throw SizeError("determinant: n out of range (cap " + std::to_string(cap) + ")");
    SparsePoly p(ctx, n * n);
    detail::for_each_permutation(n, [&](const std::vector<uint32_t>& perm, bool even) {
        std::vector<uint32_t> vars;
        vars.reserve(n);
        for (uint32_t i = 0; i < n; ++i) vars.push_back(matrix_var(n, i, perm[i]));
        std::sort(vars.begin(), vars.end());
        p.add_term(Monomial::from_vars(vars), even ? 1 : ctx.neg(1));
    });
    return p;
}

// Clause sum S_j = sum of literal polynomials; negative literal is 1 - x.
inline SparsePoly clause_sum(FieldCtx ctx, uint32_t nvars, const Clause& c) {
    SparsePoly s(ctx, nvars);
    for (const Lit& l : c) {
        if (l.positive) {
            s.add_term(Monomial::var(l.var), 1);
        } else {
            s.add_term(Monomial::one(), 1);
            s.add_term(Monomial::var(l.var), ctx.neg(1));
        }
    }
    return s;
}

// Zero-test polynomial P = prod_j S_j. Nonzero at a Boolean point iff the
// point satisfies the formula. Plain-ring product, no multilinear reduction.
inline SparsePoly cnf_zero_test(FieldCtx ctx, const CnfFormula& f, size_t term_cap = 1u << 21) {
    if (f.clauses.empty()) throw std::domain_error("cnf_zero_test: formula must be nonempty");
    f.validate();
    SparsePoly p = SparsePoly::constant(ctx, f.nvars, 1);
    for (const auto& c : f.clauses) {
        p = p * clause_sum(ctx, f.nvars, c);
        if (p.term_count() > term_cap)
            throw SizeError("cnf_zero_test: expansion exceeds term cap");
    }
    return p;
}

// Multilinear indicator of the satisfying assignments; enumerates the cube.
inline SparsePoly characteristic_poly(FieldCtx ctx, const CnfFormula& f, uint32_t var_cap = 20) {
    if (f.nvars > var_cap) throw SizeError("characteristic_poly: too many variables");
    f.validate();
    SparsePoly chi(ctx, f.nvars);
    std::vector<bool> a(f.nvars, false);
    uint64_t total = 1ULL << f.nvars;
    for (uint64_t x = 0; x < total; ++x) {
        for (uint32_t i = 0; i < f.nvars; ++i) a[i] = (x >> i) & 1;
        if (!satisfies(f, a)) continue;
        // prod_{a_i=1} x_i * prod_{a_j=0} (1 - x_j), expanded over subsets of zeros
        std::vector<uint32_t> ones, zeros;
        for (uint32_t i = 0; i < f.nvars; ++i) (a[i] ? ones : zeros).push_back(i);
        uint64_t nz = zeros.size();
        for (uint64_t sub = 0; sub < (1ULL << nz); ++sub) {
            std::vector<uint32_t> vars = ones;
            uint32_t bits = 0;
            for (uint64_t b = 0; b < nz; ++b)
                if ((sub >> b) & 1) { vars.push_back(zeros[b]); ++bits; }
            std::sort(vars.begin(), vars.end());
            chi.add_term(Monomial::from_vars(vars), (bits % 2 == 0) ? 1 : ctx.neg(1));
        }
    }
    return chi;
}

// Small explicit graphs for parity workloads.
struct Graph {
    uint32_t nverts = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    static Graph cycle(uint32_t n) {
        Graph g{n, {}};
        for (uint32_t v = 0; v < n; ++v) g.edges.emplace_back(v, (v + 1) % n);
        return g;
    }

    static Graph complete(uint32_t n) {
        Graph g{n, {}};
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
        return g;
    }

    // Ring plus a seeded perfect matching: 3-regular for even n >= 4.
    static Graph cubic_ring(uint32_t n, uint64_t seed) {
        if (n < 4 || n % 2 != 0)
            throw std::domain_error("cubic_ring: need even n >= 4");
        Graph g = cycle(n);
        std::vector<uint32_t> verts(n);
        for (uint32_t v = 0; v < n; ++v) verts[v] = v;
        for (uint32_t i = n - 1; i > 0; --i) {
            uint32_t j = static_cast<uint32_t>(hash_pair(seed, i) % (i + 1));
            std::swap(verts[i], verts[j]);
        }
        for (uint32_t k = 0; k + 1 < n; k += 2) {
            uint32_t a = std::min(verts[k], verts[k + 1]);
            uint32_t b = std::max(verts[k], verts[k + 1]);
            bool dup = false;
            for (auto [x, y] : g.edges) dup |= (x == a && y == b);
            if (!dup) g.edges.emplace_back(a, b);
        }
        return g;
    }

    std::vector<std::vector<uint32_t>> incidence() const {
        std::vector<std::vector<uint32_t>> inc(nverts);
        for (uint32_t e = 0; e < edges.size(); ++e) {
            inc[edges[e].first].push_back(e);
            inc[edges[e].second].push_back(e);
        }
        return inc;
    }

    uint32_t max_degree() const {
        auto inc = incidence();
        size_t d = 0;
        for (const auto& i : inc) d = std::max(d, i.size());
        return static_cast<uint32_t>(d);
    }
};

namespace detail {

// Append CNF clauses for xor of the given literals == target.
inline void emit_xor_clauses(CnfFormula& f, const std::vector<uint32_t>& vars, bool target) {
    uint32_t k = static_cast<uint32_t>(vars.size());
    // forbid every assignment with the wrong parity
    for (uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        bool parity = false;
        for (uint32_t b = 0; b < k; ++b) parity ^= ((mask >> b) & 1);
        if (parity == target) continue;
        Clause c;
        for (uint32_t b = 0; b < k; ++b) {
            bool bit = (mask >> b) & 1;
            c.push_back(Lit{vars[b], !bit});  // clause falsified exactly at this assignment
        }
        f.clauses.push_back(c);
    }
}

}  // namespace detail

// Parity constraints per vertex: xor of incident edge variables equals the
// vertex charge. Degree-4 vertices are split through one auxiliary variable
// so every emitted clause has width <= 3.
inline CnfFormula tseitin_cnf(const Graph& g, const std::vector<bool>& charge) {
    if (charge.size() != g.nverts)
        throw std::domain_error("tseitin_cnf: need one charge per vertex");
    if (g.max_degree() > 4) throw std::domain_error("tseitin_cnf: max degree 4 supported");
    CnfFormula f;
    f.nvars = static_cast<uint32_t>(g.edges.size());
    auto inc = g.incidence();
    uint32_t next_aux = f.nvars;
    for (uint32_t v = 0; v < g.nverts; ++v) {
        const auto& ev = inc[v];
        if (ev.empty()) {
            if (charge[v])  // xor over the empty set is 0; charge 1 is unsatisfiable
                throw std::domain_error("tseitin_cnf: isolated vertex with odd charge");
            continue;
        }
        if (ev.size() <= 3) {
            detail::emit_xor_clauses(f, ev, charge[v]);
        } else {
            // e1 ^ e2 ^ a = 0 and a ^ e3 ^ e4 = charge
            uint32_t aux = next_aux++;
            f.nvars = next_aux;
            detail::emit_xor_clauses(f, {ev[0], ev[1], aux}, false);
            detail::emit_xor_clauses(f, {aux, ev[2], ev[3]}, charge[v]);
        }
    }
    f.validate();
    return f;
}

// Number of distinct values on the Boolean cube.
inline uint64_t valrank(const SparsePoly& p, uint32_t var_cap = 20) {
    if (p.nvars() > var_cap) throw SizeError("valrank: too many variables");
    std::set<uint64_t> values;
    std::vector<uint64_t> a(p.nvars(), 0);
    uint64_t total = 1ULL << p.nvars();
    for (uint64_t x = 0; x < total; ++x) {
        for (uint32_t i = 0; i < p.nvars(); ++i) a[i] = (x >> i) & 1;
        values.insert(p.eval(a));
    }
    return values.size();
}

}  // namespace spdp
