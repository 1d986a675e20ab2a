#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdp/dtm.hpp"
#include "spdp/errors.hpp"
#include "spdp/poly.hpp"

namespace spdp {

enum class ConstraintKind {
    Booleanity,
    StateOneHot,
    HeadOneHot,
    Init,
    Accept,
    Frame,
    Write,
    NextState,
    HeadMove,
};

inline const char* constraint_kind_name(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::Booleanity: return "booleanity";
        case ConstraintKind::StateOneHot: return "state_onehot";
        case ConstraintKind::HeadOneHot: return "head_onehot";
        case ConstraintKind::Init: return "init";
        case ConstraintKind::Accept: return "accept";
        case ConstraintKind::Frame: return "frame";
        case ConstraintKind::Write: return "write";
        case ConstraintKind::NextState: return "next_state";
        case ConstraintKind::HeadMove: return "head_move";
    }
    return "?";
}

// One local constraint, anchored at tableau cell (t, i). The run is valid and
// accepting iff every constraint polynomial evaluates to zero.
struct TableauConstraint {
    ConstraintKind kind;
    uint32_t t = 0;
    uint32_t i = 0;
    SparsePoly poly;
};

struct CompiledTableau {
    TableauLayout layout;
    std::vector<TableauConstraint> constraints;
    SparsePoly aggregate;  // 1 - sum of squared constraints

    // Number of constraints violated by the assignment.
    size_t violations(const std::vector<uint64_t>& a) const {
        size_t k = 0;
        for (const auto& c : constraints)
            if (c.poly.eval(a) != 0) ++k;
        return k;
    }

    // The acceptance predicate: aggregate == 1, equivalently zero violations.
    bool accepts(const std::vector<uint64_t>& a) const { return violations(a) == 0; }
};

namespace detail {

// clipped head target: moves off the tape become stays
inline uint32_t clip_move(uint32_t i, Move m, uint32_t cells) {
    if (m == Move::Left) return i > 0 ? i - 1 : i;
    if (m == Move::Right) return i + 1 < cells ? i + 1 : i;
    return i;
}

}  // namespace detail

// Cook-Levin arithmetization of a DTM run: Booleanity, one-hot state/head
// rows, initialization, acceptance at the final step, frame conditions away
// from the head, and the transition family (write / next-state / head-move)
// conditioned on (state, head, read-bit). Every constraint polynomial has
// degree <= 3; the aggregate is 1 - sum C^2 of degree <= 6.
inline CompiledTableau compile_dtm(FieldCtx ctx, const DtmSpec& M, uint32_t n, uint32_t T,
                                   uint32_t t_cap = 8, uint32_t n_cap = 4) {
    M.validate();
    if (T == 0 || T > t_cap) throw SizeError("compile_dtm: horizon out of range");
    if (n > n_cap || n > T + 1) throw SizeError("compile_dtm: input length out of range");

    TableauLayout L{n, T, M.n_states()};
    uint32_t cells = L.cells();
    uint32_t N = L.total_vars();
    std::vector<TableauConstraint> cs;

    auto var = [&](uint32_t idx) { return SparsePoly::variable(ctx, N, idx); };
    auto cnst = [&](int64_t c) { return SparsePoly::constant(ctx, N, c); };
    auto push = [&](ConstraintKind k, uint32_t t, uint32_t i, SparsePoly p) {
        cs.push_back(TableauConstraint{k, t, i, std::move(p)});
    };

    // Booleanity z^2 - z for every tableau variable
    for (uint32_t idx = 0; idx < N; ++idx) {
        SparsePoly p(ctx, N);
        p.add_term(Monomial::var(idx, 2), 1);
        p.add_term(Monomial::var(idx), ctx.neg(1));
        uint32_t t = 0, i = 0;
        if (idx < L.base_s()) {
            t = idx / cells; i = idx % cells;
        } else if (idx < L.base_h()) {
            t = (idx - L.base_s()) / M.n_states(); i = 0;
        } else {
            t = (idx - L.base_h()) / cells; i = (idx - L.base_h()) % cells;
        }
        push(ConstraintKind::Booleanity, t, i, std::move(p));
    }

    // one-hot rows
    for (uint32_t t = 0; t <= T; ++t) {
        SparsePoly s_sum(ctx, N);
        for (uint32_t q = 0; q < M.n_states(); ++q) s_sum.add_term(Monomial::var(L.var_s(t, q)), 1);
        s_sum.add_term(Monomial::one(), ctx.neg(1));
        push(ConstraintKind::StateOneHot, t, 0, std::move(s_sum));

        SparsePoly h_sum(ctx, N);
        for (uint32_t i = 0; i < cells; ++i) h_sum.add_term(Monomial::var(L.var_h(t, i)), 1);
        h_sum.add_term(Monomial::one(), ctx.neg(1));
        push(ConstraintKind::HeadOneHot, t, 0, std::move(h_sum));
    }

    // initialization: start state, head at 0, blank tape beyond the input
    push(ConstraintKind::Init, 0, 0, var(L.var_s(0, M.q0)) - cnst(1));
    push(ConstraintKind::Init, 0, 0, var(L.var_h(0, 0)) - cnst(1));
    for (uint32_t i = n; i < cells; ++i)
        push(ConstraintKind::Init, 0, i, var(L.var_b(0, i)));

    // acceptance at the final step (accept state is absorbing)
    push(ConstraintKind::Accept, T, 0, var(L.var_s(T, M.acc)) - cnst(1));

    for (uint32_t t = 0; t < T; ++t) {
        // frame: cells away from the head keep their bit
        for (uint32_t i = 0; i < cells; ++i) {
            SparsePoly away = cnst(1) - var(L.var_h(t, i));
            push(ConstraintKind::Frame, t, i,
                 away * (var(L.var_b(t + 1, i)) - var(L.var_b(t, i))));
        }

        for (uint32_t i = 0; i < cells; ++i) {
            SparsePoly gate_hi = var(L.var_h(t, i));
            SparsePoly b = var(L.var_b(t, i));
            SparsePoly one_minus_b = cnst(1) - b;
            for (uint32_t q = 0; q < M.n_states(); ++q) {
                SparsePoly gate = var(L.var_s(t, q)) * gate_hi;
                const DtmRule& r0 = M.rules[q][0];
                const DtmRule& r1 = M.rules[q][1];

                // written bit: b_{t+1,i} = (1-b)*write0 + b*write1
                SparsePoly target = var(L.var_b(t + 1, i));
                if (r0.write) target = target - one_minus_b;
                if (r1.write) target = target - b;
                push(ConstraintKind::Write, t, i, gate * target);

                // next state one-hot row is a function of the read bit
                for (uint32_t s2 = 0; s2 < M.n_states(); ++s2) {
                    SparsePoly want(ctx, N);
                    if (r0.next_state == s2) want = want + one_minus_b;
                    if (r1.next_state == s2) want = want + b;
                    push(ConstraintKind::NextState, t, i,
                         gate * (var(L.var_s(t + 1, s2)) - want));
                }

                // head position among the near cells; the head one-hot at
                // t+1 plus Booleanity force every far cell to zero, so no
                // separate far-cell constraints are needed
                uint32_t j0 = detail::clip_move(i, r0.move, cells);
                uint32_t j1 = detail::clip_move(i, r1.move, cells);
                for (uint32_t j = (i == 0 ? 0 : i - 1); j <= i + 1 && j < cells; ++j) {
                    SparsePoly want(ctx, N);
                    if (j0 == j) want = want + one_minus_b;
                    if (j1 == j) want = want + b;
                    push(ConstraintKind::HeadMove, t, i,
                         gate * (var(L.var_h(t + 1, j)) - want));
                }
            }
        }
    }

    SparsePoly agg = SparsePoly::constant(ctx, N, 1);
    for (const auto& c : cs) agg = agg - c.poly * c.poly;

    return CompiledTableau{L, std::move(cs), std::move(agg)};
}

// Per-kind locality window: time-span and tape-span of a constraint's support
// relative to its anchor. One-hot rows span a whole row; everything else is
// confined to the adjacent cells of the anchor.
inline bool constraint_is_local(const TableauConstraint& c, const TableauLayout& L) {
    uint32_t cells = L.cells();
    int64_t t_lo = INT64_MAX, t_hi = INT64_MIN, i_lo = INT64_MAX, i_hi = INT64_MIN;
    bool any_tape = false;
    for (const auto& [m, coef] : c.poly.terms()) {
        for (const auto& [v, e] : m.terms()) {
            int64_t t, i;
            bool tape_indexed = true;
            if (v < L.base_s()) {
                t = v / cells; i = v % cells;
            } else if (v < L.base_h()) {
                t = (v - L.base_s()) / L.n_states(); i = 0; tape_indexed = false;
            } else {
                t = (v - L.base_h()) / cells; i = (v - L.base_h()) % cells;
            }
            t_lo = std::min(t_lo, t); t_hi = std::max(t_hi, t);
            if (tape_indexed) {
                any_tape = true;
                i_lo = std::min(i_lo, i); i_hi = std::max(i_hi, i);
            }
        }
    }
    if (t_lo > t_hi) return true;  // constant polynomial
    bool time_ok = t_lo >= static_cast<int64_t>(c.t) - 1 && t_hi <= static_cast<int64_t>(c.t) + 1;
    if (c.kind == ConstraintKind::StateOneHot || c.kind == ConstraintKind::HeadOneHot)
        return t_lo == c.t && t_hi == c.t;  // row-local, not cell-local
    bool tape_ok = !any_tape || (i_lo >= static_cast<int64_t>(c.i) - 1 &&
                                 i_hi <= static_cast<int64_t>(c.i) + 1);
    return time_ok && tape_ok;
}

}  // namespace spdp
