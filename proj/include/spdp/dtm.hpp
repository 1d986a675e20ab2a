#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdp/errors.hpp"

namespace spdp {

enum class Move { Left, Stay, Right };

struct DtmRule {
    uint32_t next_state;
    uint8_t write;
    Move move;
};

// Finite machine over the binary alphabet. The transition table is total on
// non-halting states; accept/reject are absorbing (normalized to self-loops).
struct DtmSpec {
    std::vector<std::string> states;
    uint32_t q0 = 0, acc = 0, rej = 0;
    // rules[q][a]
    std::vector<std::array<DtmRule, 2>> rules;

    uint32_t n_states() const { return static_cast<uint32_t>(states.size()); }

    bool halting(uint32_t q) const { return q == acc || q == rej; }

    void validate() const {
        uint32_t ns = n_states();
        if (q0 >= ns || acc >= ns || rej >= ns)
            throw std::domain_error("DtmSpec: state index out of range");
        if (rules.size() != ns) throw std::domain_error("DtmSpec: need a rule row per state");
        for (uint32_t q = 0; q < ns; ++q)
            for (int a = 0; a < 2; ++a) {
                const DtmRule& r = rules[q][a];
                if (r.next_state >= ns || r.write > 1)
                    throw std::domain_error("DtmSpec: bad rule");
                if (halting(q) && (r.next_state != q || r.write != a || r.move != Move::Stay))
                    throw std::domain_error("DtmSpec: halting states must be absorbing");
            }
    }

    // Build with absorbing self-loops filled in for acc/rej.
    static DtmSpec make(std::vector<std::string> state_names,
                        const std::map<std::pair<uint32_t, uint8_t>, DtmRule>& delta,
                        uint32_t q0, uint32_t acc, uint32_t rej) {
        DtmSpec m;
        m.states = std::move(state_names);
        m.q0 = q0;
        m.acc = acc;
        m.rej = rej;
        m.rules.resize(m.states.size());
        for (uint32_t q = 0; q < m.states.size(); ++q)
            for (uint8_t a = 0; a < 2; ++a) {
                if (m.halting(q)) {
                    m.rules[q][a] = DtmRule{q, a, Move::Stay};
                } else {
                    auto it = delta.find({q, a});
                    if (it == delta.end())
                        throw std::domain_error("DtmSpec: delta not total on state " +
                                                m.states[q]);
                    m.rules[q][a] = it->second;
                }
            }
        m.validate();
        return m;
    }
};

// Tableau variable layout for a run of horizon T on tape cells 0..T: tape
// bits b_{t,i}, state one-hots s_{t,q}, head one-hots h_{t,i}. Tape bits are
// stored flat, so the row-0 prefix b_{0,0..n-1} doubles as the input
// variables x_0..x_{n-1}.
struct TableauLayout {
    uint32_t n = 0;        // input length
    uint32_t T = 0;        // time horizon; grid is (T+1) x (T+1)
    uint32_t n_states = 0;

    uint32_t cells() const { return T + 1; }

    uint32_t var_b(uint32_t t, uint32_t i) const { return t * cells() + i; }

    uint32_t var_s(uint32_t t, uint32_t q) const { return base_s() + t * n_states + q; }

    uint32_t var_h(uint32_t t, uint32_t i) const { return base_h() + t * cells() + i; }

    uint32_t base_s() const { return cells() * cells(); }
    uint32_t base_h() const { return base_s() + cells() * n_states; }
    uint32_t total_vars() const { return base_h() + cells() * cells(); }
};

struct RunResult {
    bool accepted = false;
    std::vector<uint64_t> tableau;  // full assignment over layout.total_vars()
};

// Step-by-step simulator producing the canonical run tableau. Head moves are
// clipped to the tape range [0, T]; off-tape moves become stays.
inline RunResult simulate(const DtmSpec& M, const std::vector<uint8_t>& input, uint32_t T) {
    M.validate();
    TableauLayout L{static_cast<uint32_t>(input.size()), T, M.n_states()};
    std::vector<uint64_t> a(L.total_vars(), 0);

    uint32_t cells = L.cells();
    std::vector<uint8_t> tape(cells, 0);
    for (uint32_t i = 0; i < input.size() && i < cells; ++i) tape[i] = input[i];
    uint32_t q = M.q0, head = 0;

    for (uint32_t t = 0; t <= T; ++t) {
        for (uint32_t i = 0; i < cells; ++i) a[L.var_b(t, i)] = tape[i];
        a[L.var_s(t, q)] = 1;
        a[L.var_h(t, head)] = 1;
        if (t == T) break;
        const DtmRule& r = M.rules[q][tape[head]];
        tape[head] = r.write;
        q = r.next_state;
        if (r.move == Move::Left && head > 0) --head;
        else if (r.move == Move::Right && head + 1 < cells) ++head;
    }
    return RunResult{q == M.acc, std::move(a)};
}

}  // namespace spdp
