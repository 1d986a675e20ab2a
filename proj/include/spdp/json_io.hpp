#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "spdp/certificates.hpp"
#include "spdp/dtm.hpp"
#include "spdp/poly.hpp"

namespace spdp {

// Polynomial format:
// {"nvars": N, "modulus": p, "terms": [{"mono": [[idx,exp],...], "coef": c}, ...]}
inline nlohmann::json poly_to_json(const SparsePoly& p) {
    nlohmann::json j;
    j["nvars"] = p.nvars();
    j["modulus"] = p.ctx().modulus();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [v, e] : m.terms()) mono.push_back({v, e});
        terms.push_back({{"mono", mono}, {"coef", c}});
    }
    j["terms"] = std::move(terms);
    return j;
}

inline SparsePoly poly_from_json(const nlohmann::json& j) {
    FieldCtx ctx(j.at("modulus").get<uint64_t>());
    SparsePoly p(ctx, j.at("nvars").get<uint32_t>());
    for (const auto& t : j.at("terms")) {
        Monomial m;
        for (const auto& pair : t.at("mono")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::domain_error("poly_from_json: mono entries must be [index, exponent]");
            m = m.mul(Monomial::var(pair[0].get<uint32_t>(), pair[1].get<uint32_t>()));
        }
        p.add_term(m, ctx.reduce_u(t.at("coef").get<uint64_t>()));
    }
    return p;
}

inline SparsePoly poly_from_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    return poly_from_json(j);
}

// Certificate format:
// {"kind": ..., "rows": [{"S": [...], "u": [[idx,exp],...]}, ...],
//  "cols": [[[idx,exp],...], ...], "size": k, "modulus": p}
inline nlohmann::json certificate_to_json(const MinorCertificate& cert) {
    nlohmann::json j;
    j["kind"] = cert.kind;
    j["size"] = cert.claimed_size;
    j["modulus"] = cert.modulus;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : cert.rows) {
        nlohmann::json u = nlohmann::json::array();
        for (const auto& [v, e] : r.u.terms()) u.push_back({v, e});
        rows.push_back({{"S", r.s}, {"u", u}});
    }
    j["rows"] = std::move(rows);
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : cert.cols) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [v, e] : c.terms()) mono.push_back({v, e});
        cols.push_back(mono);
    }
    j["cols"] = std::move(cols);
    return j;
}

inline MinorCertificate certificate_from_json(const nlohmann::json& j) {
    MinorCertificate cert;
    cert.kind = j.at("kind").get<std::string>();
    cert.claimed_size = j.at("size").get<size_t>();
    cert.modulus = j.at("modulus").get<uint64_t>();
    for (const auto& r : j.at("rows")) {
        SpdpRow row;
        row.s = r.at("S").get<std::vector<uint32_t>>();
        for (const auto& pair : r.at("u"))
            row.u = row.u.mul(Monomial::var(pair[0].get<uint32_t>(), pair[1].get<uint32_t>()));
        cert.rows.push_back(std::move(row));
    }
    for (const auto& c : j.at("cols")) {
        Monomial m;
        for (const auto& pair : c)
            m = m.mul(Monomial::var(pair[0].get<uint32_t>(), pair[1].get<uint32_t>()));
        cert.cols.push_back(m);
    }
    return cert;
}

// Machine format:
// {"states": [...], "delta": [[q,a,q',a',move], ...], "q0": ..., "acc": ..., "rej": ...}
// with states referenced by name and move one of "L", "S", "R".
inline DtmSpec dtm_from_json(const nlohmann::json& j) {
    std::vector<std::string> names = j.at("states").get<std::vector<std::string>>();
    auto index_of = [&](const std::string& s) -> uint32_t {
        for (uint32_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return i;
        throw std::domain_error("dtm_from_json: unknown state " + s);
    };
    uint32_t q0 = index_of(j.at("q0").get<std::string>());
    uint32_t acc = index_of(j.at("acc").get<std::string>());
    uint32_t rej = index_of(j.at("rej").get<std::string>());
    std::map<std::pair<uint32_t, uint8_t>, DtmRule> delta;
    for (const auto& rule : j.at("delta")) {
        if (!rule.is_array() || rule.size() != 5)
            throw std::domain_error("dtm_from_json: delta entries are [q,a,q',a',move]");
        uint32_t q = index_of(rule[0].get<std::string>());
        uint8_t a = rule[1].get<uint8_t>();
        uint32_t q2 = index_of(rule[2].get<std::string>());
        uint8_t a2 = rule[3].get<uint8_t>();
        std::string mv = rule[4].get<std::string>();
        Move m = mv == "L" ? Move::Left : mv == "R" ? Move::Right : Move::Stay;
        if (mv != "L" && mv != "R" && mv != "S")
            throw std::domain_error("dtm_from_json: move must be L, S or R");
        delta[{q, a}] = DtmRule{q2, a2, m};
    }
    return DtmSpec::make(std::move(names), delta, q0, acc, rej);
}

inline DtmSpec dtm_from_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    return dtm_from_json(j);
}

inline nlohmann::json dtm_to_json(const DtmSpec& m) {
    nlohmann::json j;
    j["states"] = m.states;
    j["q0"] = m.states[m.q0];
    j["acc"] = m.states[m.acc];
    j["rej"] = m.states[m.rej];
    nlohmann::json delta = nlohmann::json::array();
    for (uint32_t q = 0; q < m.n_states(); ++q) {
        if (m.halting(q)) continue;
        for (uint8_t a = 0; a < 2; ++a) {
            const DtmRule& r = m.rules[q][a];
            const char* mv = r.move == Move::Left ? "L" : r.move == Move::Right ? "R" : "S";
            delta.push_back({m.states[q], a, m.states[r.next_state], r.write, mv});
        }
    }
    j["delta"] = std::move(delta);
    return j;
}

}  // namespace spdp
