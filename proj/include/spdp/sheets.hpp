#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spdp/cnf.hpp"
#include "spdp/errors.hpp"
#include "spdp/poly.hpp"

namespace spdp {

// One clause's local gadget: a block of fresh pad variables (one per
// literal), a designated tag variable carrying coefficient +1, and the gadget
// polynomial V_C = t_C + sum of pad literals - width.
struct ClauseGadget {
    uint32_t clause_id = 0;
    std::vector<uint32_t> block;  // pad vars then tag, indices into the sheet space
    uint32_t tag = 0;
    SparsePoly gadget;

    ClauseGadget(uint32_t id, std::vector<uint32_t> blk, uint32_t tag_var, SparsePoly g)
        : clause_id(id), block(std::move(blk)), tag(tag_var), gadget(std::move(g)) {}
};

// Variable layout shared by both sheets: for each clause, its pads then its
// tag; all selector variables come after every clause block.
struct SheetLayout {
    uint32_t nvars = 0;                  // total, including selectors
    std::vector<uint32_t> selector;      // z_C per clause
    std::vector<std::vector<uint32_t>> pads;
    std::vector<uint32_t> tags;

    static SheetLayout plan(const CnfFormula& f) {
        SheetLayout L;
        uint32_t next = 0;
        for (const auto& c : f.clauses) {
            std::vector<uint32_t> p;
            for (size_t i = 0; i < c.size(); ++i) p.push_back(next++);
            L.pads.push_back(std::move(p));
            L.tags.push_back(next++);
        }
        for (size_t j = 0; j < f.clauses.size(); ++j) L.selector.push_back(next++);
        L.nvars = next;
        return L;
    }
};

// Build all clause gadgets over the sheet's variable space. Every gadget is
// multilinear in its block, non-constant, and has [t_C] V_C = 1.
inline std::vector<ClauseGadget> coupled_gadgets(FieldCtx ctx, const CnfFormula& f,
                                                 const SheetLayout& L) {
    f.validate();
    std::vector<ClauseGadget> out;
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        const Clause& c = f.clauses[j];
        SparsePoly v(ctx, L.nvars);
        v.add_term(Monomial::var(L.tags[j]), 1);
        for (size_t i = 0; i < c.size(); ++i) {
            uint32_t pad = L.pads[j][i];
            if (c[i].positive) {
                v.add_term(Monomial::var(pad), 1);
            } else {
                v.add_term(Monomial::one(), 1);
                v.add_term(Monomial::var(pad), ctx.neg(1));
            }
        }
        v.add_term(Monomial::one(), ctx.reduce(-static_cast<int64_t>(c.size())));
        std::vector<uint32_t> block = L.pads[j];
        block.push_back(L.tags[j]);
        out.emplace_back(static_cast<uint32_t>(j), std::move(block), L.tags[j], std::move(v));
    }
    return out;
}

struct CoupledSheet {
    SheetLayout layout;
    std::vector<ClauseGadget> gadgets;
    SparsePoly poly;  // the expanded product, plain ring
};

// Q^x = prod_C (1 - z_C * V_C^2), expanded. The product over m clauses has
// roughly (terms per factor)^m monomials, so m is capped and a term guard
// aborts oversized expansions.
inline CoupledSheet coupled_sheet(FieldCtx ctx, const CnfFormula& f, uint32_t clause_cap = 10,
                                  size_t term_cap = 1u << 22) {
    if (f.clauses.empty()) throw std::domain_error("coupled_sheet: formula must be nonempty");
    if (f.clauses.size() > clause_cap)
        throw SizeError("coupled_sheet: clause count exceeds cap " + std::to_string(clause_cap));
    SheetLayout L = SheetLayout::plan(f);
    auto gadgets = coupled_gadgets(ctx, f, L);
    SparsePoly q = SparsePoly::constant(ctx, L.nvars, 1);
    for (size_t j = 0; j < gadgets.size(); ++j) {
        SparsePoly factor = SparsePoly::constant(ctx, L.nvars, 1);
        SparsePoly v2 = gadgets[j].gadget * gadgets[j].gadget;
        factor = factor - v2.shift(Monomial::var(L.selector[j]));
        q = q * factor;
        if (q.term_count() > term_cap)
            throw SizeError("coupled_sheet: expansion exceeds term cap");
    }
    return CoupledSheet{L, std::move(gadgets), std::move(q)};
}

// Q^+ = 1 - sum_C V_C^2: the additive counterpart used as a negative control.
// No selector variables are involved; they stay unused in the layout.
inline SparsePoly additive_sheet(FieldCtx ctx, const CnfFormula& f) {
    if (f.clauses.empty()) throw std::domain_error("additive_sheet: formula must be nonempty");
    SheetLayout L = SheetLayout::plan(f);
    auto gadgets = coupled_gadgets(ctx, f, L);
    SparsePoly q = SparsePoly::constant(ctx, L.nvars, 1);
    for (const auto& g : gadgets) q = q - g.gadget * g.gadget;
    return q;
}

}  // namespace spdp
