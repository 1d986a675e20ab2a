#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdp/errors.hpp"
#include "spdp/util.hpp"

namespace spdp {

struct Lit {
    uint32_t var;
    bool positive;

    bool operator==(const Lit& o) const { return var == o.var && positive == o.positive; }
};

using Clause = std::vector<Lit>;

struct CnfFormula {
    uint32_t nvars = 0;
    std::vector<Clause> clauses;
    bool allow_empty_clause = false;

    void validate() const {
        for (const auto& c : clauses) {
            if (c.empty() && !allow_empty_clause)
                throw std::domain_error("CnfFormula: empty clause");
            for (const Lit& l : c)
                if (l.var >= nvars)
                    throw std::domain_error("CnfFormula: literal index out of range");
        }
    }

    uint32_t width() const {
        size_t w = 0;
        for (const auto& c : clauses) w = std::max(w, c.size());
        return static_cast<uint32_t>(w);
    }

    // Max number of clauses any single variable occurs in.
    uint32_t max_occurrence() const {
        std::vector<uint32_t> occ(nvars, 0);
        for (const auto& c : clauses)
            for (const Lit& l : c) ++occ[l.var];
        uint32_t m = 0;
        for (uint32_t o : occ) m = std::max(m, o);
        return m;
    }
};

inline bool clause_satisfied(const Clause& c, const std::vector<bool>& a) {
    for (const Lit& l : c)
        if (a[l.var] == l.positive) return true;
    return false;
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& a) {
    for (const auto& c : f.clauses)
        if (!clause_satisfied(c, a)) return false;
    return true;
}

// Exhaustive SAT check; desk scale only.
inline std::optional<std::vector<bool>> find_satisfying(const CnfFormula& f, uint32_t var_cap = 26) {
    if (f.nvars > var_cap)
        throw SizeError("find_satisfying: too many variables for exhaustive search");
    std::vector<bool> a(f.nvars, false);
    uint64_t total = 1ULL << f.nvars;
    for (uint64_t x = 0; x < total; ++x) {
        for (uint32_t i = 0; i < f.nvars; ++i) a[i] = (x >> i) & 1;
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

// DIMACS reader: "p cnf <nvars> <nclauses>" header, 0-terminated clauses,
// 'c' comment lines.
inline CnfFormula read_dimacs(std::istream& in) {
    CnfFormula f;
    std::string line;
    bool header_seen = false;
    int64_t expected_clauses = -1;
    Clause current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        if (line[0] == 'p') {
            std::istringstream ss(line);
            std::string p, fmt;
            int64_t nv = 0, nc = 0;
            ss >> p >> fmt >> nv >> nc;
            if (fmt != "cnf" || nv < 0 || nc < 0)
                throw std::domain_error("read_dimacs: bad problem line: " + line);
            f.nvars = static_cast<uint32_t>(nv);
            expected_clauses = nc;
            header_seen = true;
            continue;
        }
        if (!header_seen) throw std::domain_error("read_dimacs: clause before header");
        std::istringstream ss(line);
        int64_t x;
        while (ss >> x) {
            if (x == 0) {
                f.clauses.push_back(current);
                current.clear();
            } else {
                uint64_t v = static_cast<uint64_t>(x < 0 ? -x : x);
                if (v == 0 || v > f.nvars)
                    throw std::domain_error("read_dimacs: literal out of range: " + std::to_string(x));
                current.push_back(Lit{static_cast<uint32_t>(v - 1), x > 0});
            }
        }
    }
    if (!header_seen) throw std::domain_error("read_dimacs: missing header");
    if (!current.empty()) throw std::domain_error("read_dimacs: unterminated clause");
    if (expected_clauses >= 0 && static_cast<int64_t>(f.clauses.size()) != expected_clauses)
        throw std::domain_error("read_dimacs: clause count mismatch");
    f.validate();
    return f;
}

inline void write_dimacs(const CnfFormula& f, std::ostream& os) {
    os << "p cnf " << f.nvars << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (const Lit& l : c) os << (l.positive ? "" : "-") << (l.var + 1) << " ";
        os << "0\n";
    }
}

// Seeded random 3-CNF; deterministic in (nvars, m, seed).
inline CnfFormula random_cnf3(uint32_t nvars, uint32_t m, uint64_t seed) {
    if (nvars < 3) throw std::domain_error("random_cnf3: need at least 3 variables");
    CnfFormula f;
    f.nvars = nvars;
    uint64_t ctr = 0;
    for (uint32_t j = 0; j < m; ++j) {
        Clause c;
        while (c.size() < 3) {
            uint32_t v = static_cast<uint32_t>(hash_pair(seed, ctr++) % nvars);
            bool dup = false;
            for (const Lit& l : c) dup |= (l.var == v);
            if (dup) continue;
            bool pos = hash_pair(seed, ctr++) & 1;
            c.push_back(Lit{v, pos});
        }
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace spdp
