#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "spdp/errors.hpp"
#include "spdp/sheets.hpp"
#include "spdp/spdp.hpp"
#include "spdp/workloads.hpp"

namespace spdp {

// An explicit rank lower-bound witness: a set of SPDP row descriptors and
// column monomials whose extracted submatrix is diagonal with nonzero
// diagonal. Rows are stored as (S, u) descriptors, not raw matrix rows, so a
// certificate stays valid across column-basis changes.
struct MinorCertificate {
    std::string kind;
    std::vector<SpdpRow> rows;
    std::vector<Monomial> cols;
    size_t claimed_size = 0;
    uint64_t modulus = 0;
};

// Diagonal-derivative identity minor for the permanent: row S differentiates
// the diagonal variables indexed by S, the witness column is the complement
// diagonal monomial. Self-verifies by direct coefficient extraction.
inline MinorCertificate perm_minor(FieldCtx ctx, uint32_t n, uint32_t kappa, uint32_t cap = 6) {
    if (n < 1 || n > cap) throw SizeError("perm_minor: n out of range");
    if (kappa > n) throw std::domain_error("perm_minor: kappa must be <= n");
    SparsePoly perm = permanent(ctx, n, cap);

    MinorCertificate cert;
    cert.kind = "perm_minor";
    cert.modulus = ctx.modulus();
    std::vector<std::vector<uint32_t>> index_sets;  // subsets of [n]
    for_each_subset(n, kappa, [&](const std::vector<uint32_t>& s0) {
        index_sets.push_back(s0);
        std::vector<uint32_t> vars;
        std::vector<uint32_t> witness;
        for (uint32_t i : s0) vars.push_back(matrix_var(n, i, i));
        for (uint32_t i = 0; i < n; ++i) {
            bool in_s = std::find(s0.begin(), s0.end(), i) != s0.end();
            if (!in_s) witness.push_back(matrix_var(n, i, i));
        }
        std::sort(vars.begin(), vars.end());
        std::sort(witness.begin(), witness.end());
        cert.rows.push_back(SpdpRow{vars, Monomial::one()});
        cert.cols.push_back(Monomial::from_vars(witness));
    });
    cert.claimed_size = cert.rows.size();

    // verify: private 1 on the diagonal, 0 off the diagonal
    for (size_t r = 0; r < cert.rows.size(); ++r) {
        SparsePoly d = perm.derive(cert.rows[r].s);
        for (size_t c = 0; c < cert.cols.size(); ++c) {
            uint64_t coef = d.coeff(cert.cols[c]);
            uint64_t expect = (r == c) ? 1 : 0;
            if (coef != expect)
                throw CertificateError("perm_minor: entry (" + std::to_string(r) + "," +
                                       std::to_string(c) + ") = " + std::to_string(coef) +
                                       ", expected " + std::to_string(expect));
        }
    }
    return cert;
}

// Coordinate projection onto the permanent's witness-monomial columns,
// exposing the identity block of M_{kappa,0}(perm_n).
struct GodMoveResult {
    SpdpMatrix matrix;               // full M_{kappa,0}(perm_n)
    std::vector<size_t> canonical_rows;
    std::vector<size_t> witness_cols;
    ModMatrix projected;             // canonical rows x witness columns
};

inline GodMoveResult god_move_projection(FieldCtx ctx, uint32_t n, uint32_t kappa,
                                         uint32_t cap = 6) {
    MinorCertificate cert = perm_minor(ctx, n, kappa, cap);
    SparsePoly perm = permanent(ctx, n, cap);
    SpdpParams prm;
    prm.kappa = kappa;
    prm.ell = 0;
    SpdpMatrix M = build_matrix(perm, prm);

    std::vector<size_t> rows, cols;
    for (const auto& r : cert.rows) {
        auto idx = M.find_row(r.s, r.u);
        if (!idx) throw CertificateMismatch("god_move_projection: canonical row missing");
        rows.push_back(*idx);
    }
    for (const auto& c : cert.cols) {
        auto idx = M.find_col(c);
        if (!idx) throw CertificateMismatch("god_move_projection: witness column missing");
        cols.push_back(*idx);
    }
    ModMatrix block = M.data().submatrix(rows, cols);
    if (!block.is_identity())
        throw CertificateError("god_move_projection: projected block is not the identity");
    return GodMoveResult{std::move(M), std::move(rows), std::move(cols), std::move(block)};
}

// Dual certificate for the projected identity system A v = e_s: checks
// primal feasibility at v = e_s and that the KKT residual A^T (A v - e_s)
// vanishes.
inline bool farkas_check(const ModMatrix& A, size_t s) {
    if (A.rows() != A.cols()) throw std::domain_error("farkas_check: matrix must be square");
    if (s >= A.rows()) throw std::domain_error("farkas_check: row index out of range");
    const FieldCtx& F = A.ctx();
    std::vector<uint64_t> v(A.cols(), 0);
    v[s] = 1;
    std::vector<uint64_t> av = A.apply(v);
    std::vector<uint64_t> resid(av);
    resid[s] = F.sub(resid[s], 1);
    bool primal = true;
    for (size_t i = 0; i < av.size(); ++i)
        if (av[i] != (i == s ? 1u : 0u)) primal = false;
    std::vector<uint64_t> dual = A.transpose().apply(resid);
    bool kkt = true;
    for (uint64_t x : dual)
        if (x != 0) kkt = false;
    return primal && kkt;
}

namespace detail {

// Coefficient of `target` in the product of gadget squares over `chosen`
// clauses. The blocks are variable-disjoint, so the coefficient factors
// through the blocks; any target variable outside the chosen blocks kills it.
inline uint64_t factored_square_coeff(FieldCtx ctx, const std::vector<ClauseGadget>& gadgets,
                                      const std::vector<SparsePoly>& squares,
                                      const std::vector<uint32_t>& chosen, const Monomial& target) {
    std::map<uint32_t, uint32_t> block_of;  // var -> position in chosen
    for (uint32_t pos = 0; pos < chosen.size(); ++pos)
        for (uint32_t v : gadgets[chosen[pos]].block) block_of[v] = pos;

    std::vector<Monomial> parts(chosen.size(), Monomial::one());
    for (const auto& [v, e] : target.terms()) {
        auto it = block_of.find(v);
        if (it == block_of.end()) return 0;  // touches a block outside the product
        parts[it->second] = parts[it->second].mul(Monomial::var(v, e));
    }
    uint64_t coef = 1;
    for (uint32_t pos = 0; pos < chosen.size(); ++pos) {
        coef = ctx.mul(coef, squares[chosen[pos]].coeff(parts[pos]));
        if (coef == 0) return 0;
    }
    return coef;
}

}  // namespace detail

// Coefficient-space identity minor of the coupled sheet: rows are the mixed
// selector derivatives d_{z_S} Q^x, columns the tag monomials prod_{C in S}
// t_C^2, diagonal (-1)^kappa. Verified by coefficient extraction through the
// factored product, so the expanded sheet is never materialized.
inline MinorCertificate coupled_minor(FieldCtx ctx, const CnfFormula& f, uint32_t kappa,
                                      uint32_t clause_cap = 10) {
    uint32_t m = static_cast<uint32_t>(f.clauses.size());
    if (m == 0 || m > clause_cap) throw SizeError("coupled_minor: clause count out of range");
    if (kappa > m) throw std::domain_error("coupled_minor: kappa must be <= clause count");

    SheetLayout L = SheetLayout::plan(f);
    auto gadgets = coupled_gadgets(ctx, f, L);

    // structural gadget checks: unit tag, disjoint blocks, bounded degree
    std::set<uint32_t> seen;
    for (const auto& g : gadgets) {
        if (g.gadget.coeff(Monomial::var(g.tag)) != 1)
            throw CertificateError("coupled_minor: tag coefficient is not 1");
        if (g.gadget.degree() > 3)
            throw CertificateError("coupled_minor: gadget degree exceeds bound");
        for (uint32_t v : g.block) {
            if (seen.count(v)) throw CertificateError("coupled_minor: clause blocks overlap");
            seen.insert(v);
        }
    }

    std::vector<SparsePoly> squares;
    squares.reserve(m);
    for (const auto& g : gadgets) squares.push_back(g.gadget * g.gadget);

    std::vector<std::vector<uint32_t>> subsets;
    for_each_subset(m, kappa, [&](const std::vector<uint32_t>& s) { subsets.push_back(s); });

    MinorCertificate cert;
    cert.kind = "coupled_minor";
    cert.modulus = ctx.modulus();
    cert.claimed_size = subsets.size();
    std::vector<Monomial> taus;
    for (const auto& s : subsets) {
        std::vector<uint32_t> zvars;
        Monomial tau;
        for (uint32_t c : s) {
            zvars.push_back(L.selector[c]);
            tau = tau.mul(Monomial::var(L.tags[c], 2));
        }
        std::sort(zvars.begin(), zvars.end());
        cert.rows.push_back(SpdpRow{zvars, Monomial::one()});
        cert.cols.push_back(tau);
        taus.push_back(tau);
    }

    uint64_t diag = (kappa % 2 == 0) ? 1 : ctx.neg(1);
    for (size_t r = 0; r < subsets.size(); ++r) {
        for (size_t c = 0; c < subsets.size(); ++c) {
            // [tau_c] d_{z_{S_r}} Q^x: the z-constant slice of the derivative is
            // (-1)^kappa prod_{C in S_r} V_C^2, and tau_c has no selector vars.
            uint64_t coef = detail::factored_square_coeff(ctx, gadgets, squares, subsets[r], taus[c]);
            coef = ctx.mul(coef, diag);
            uint64_t expect = (r == c) ? diag : 0;
            if (coef != expect)
                throw CertificateError("coupled_minor: entry (" + std::to_string(r) + "," +
                                       std::to_string(c) + ") = " + std::to_string(coef) +
                                       ", expected " + std::to_string(expect));
        }
    }
    return cert;
}

// Greedy matching in the clause hypergraph, input order. The returned clauses
// are pairwise variable-disjoint; for width-w formulas with occurrence bound
// D the size is at least m / (w * D).
inline std::vector<size_t> greedy_disjoint_pack(const CnfFormula& f) {
    std::set<uint32_t> used;
    std::vector<size_t> picked;
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        bool clash = false;
        for (const Lit& l : f.clauses[j]) clash |= used.count(l.var) > 0;
        if (clash) continue;
        picked.push_back(j);
        for (const Lit& l : f.clauses[j]) used.insert(l.var);
    }
    return picked;
}

// Certify gamma(p, params) >= cert.claimed_size by locating the certificate's
// rows and columns inside the built matrix and checking the extracted
// submatrix has full rank.
inline bool rank_lb_check(const SparsePoly& p, const SpdpParams& prm, const MinorCertificate& cert) {
    SpdpMatrix M = build_matrix(p, prm);
    std::vector<size_t> rows, cols;
    for (const auto& r : cert.rows) {
        auto idx = M.find_row(r.s, r.u);
        if (!idx) throw CertificateMismatch("rank_lb_check: certificate row not found");
        rows.push_back(*idx);
    }
    for (const auto& c : cert.cols) {
        auto idx = M.find_col(c);
        if (!idx) throw CertificateMismatch("rank_lb_check: certificate column not found");
        cols.push_back(*idx);
    }
    return M.submatrix_rank(rows, cols) == cert.claimed_size;
}

}  // namespace spdp
