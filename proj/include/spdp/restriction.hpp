#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spdp/cnf.hpp"
#include "spdp/errors.hpp"
#include "spdp/util.hpp"

namespace spdp {

// Partial assignment in {0, 1, star}, deterministic in (seed, star_rate).
// Each variable's fate comes from a counter-mode hash: one draw decides
// star-vs-fixed against the star rate, an independent draw supplies the bit.
struct Restriction {
    static constexpr int8_t kStar = -1;

    std::vector<int8_t> assign;  // -1 star, 0, 1
    double star_rate = 0.0;
    uint64_t seed = 0;

    static Restriction generate(uint32_t nvars, double star_rate, uint64_t seed) {
        if (star_rate < 0.0 || star_rate > 1.0)
            throw std::domain_error("Restriction: star_rate must be in [0,1]");
        Restriction r;
        r.star_rate = star_rate;
        r.seed = seed;
        r.assign.resize(nvars);
        for (uint32_t v = 0; v < nvars; ++v) {
            uint64_t h = hash_pair(seed, 2 * static_cast<uint64_t>(v));
            if (unit_double(h) < star_rate) {
                r.assign[v] = kStar;
            } else {
                r.assign[v] = static_cast<int8_t>(hash_pair(seed, 2 * static_cast<uint64_t>(v) + 1) & 1);
            }
        }
        return r;
    }

    static Restriction all_star(uint32_t nvars) {
        Restriction r;
        r.star_rate = 1.0;
        r.assign.assign(nvars, kStar);
        return r;
    }

    bool is_star(uint32_t v) const { return assign[v] == kStar; }
    size_t star_count() const {
        size_t n = 0;
        for (int8_t a : assign) n += (a == kStar);
        return n;
    }

    bool operator==(const Restriction& o) const { return assign == o.assign; }
};

inline std::vector<Restriction> restriction_family(uint32_t nvars, double star_rate,
                                                   uint32_t n_seeds, uint64_t base_seed = 0) {
    std::vector<Restriction> out;
    out.reserve(n_seeds);
    for (uint32_t s = 0; s < n_seeds; ++s)
        out.push_back(Restriction::generate(nvars, star_rate, base_seed + s));
    return out;
}

// Formula under a restriction: satisfied clauses drop, false literals are
// removed. A fully falsified clause stays as an (allowed) empty clause.
inline CnfFormula apply_restriction(const CnfFormula& f, const Restriction& rho) {
    if (rho.assign.size() != f.nvars)
        throw std::domain_error("apply_restriction: variable count mismatch");
    CnfFormula out;
    out.nvars = f.nvars;
    out.allow_empty_clause = true;
    for (const auto& c : f.clauses) {
        Clause reduced;
        bool sat = false;
        for (const Lit& l : c) {
            if (rho.is_star(l.var)) {
                reduced.push_back(l);
            } else if ((rho.assign[l.var] == 1) == l.positive) {
                sat = true;
                break;
            }
        }
        if (!sat) out.clauses.push_back(std::move(reduced));
    }
    return out;
}

// Depth of the canonical decision tree: repeatedly take the first clause (in
// input order) not satisfied by the partial assignment and query its first
// unassigned literal. Returns nullopt if the depth exceeds d_max.
inline std::optional<uint32_t> canonical_dt_depth(const CnfFormula& psi, const Restriction& rho,
                                                  uint32_t d_max) {
    if (rho.assign.size() != psi.nvars)
        throw std::domain_error("canonical_dt_depth: variable count mismatch");

    std::vector<int8_t> a = rho.assign;
    // returns depth below this node, or nullopt on budget exhaustion
    std::function<std::optional<uint32_t>(uint32_t)> walk =
        [&](uint32_t budget) -> std::optional<uint32_t> {
        for (const auto& c : psi.clauses) {
            bool sat = false;
            std::optional<uint32_t> query;
            for (const Lit& l : c) {
                if (a[l.var] == Restriction::kStar) {
                    if (!query) query = l.var;
                } else if ((a[l.var] == 1) == l.positive) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            if (!query) return 0;  // clause falsified: leaf labeled 0
            if (budget == 0) return std::nullopt;
            uint32_t v = *query;
            uint32_t best = 0;
            for (int8_t bit : {int8_t(0), int8_t(1)}) {
                a[v] = bit;
                auto d = walk(budget - 1);
                a[v] = Restriction::kStar;
                if (!d) return std::nullopt;
                best = std::max(best, *d + 1);
            }
            return best;
        }
        return 0;  // every clause satisfied: leaf labeled 1
    };
    return walk(d_max);
}

// First restriction in the family under which every formula has canonical
// depth <= d; none if no seed works.
inline std::optional<Restriction> select_good_restriction(const std::vector<Restriction>& family,
                                                          const std::vector<CnfFormula>& psis,
                                                          uint32_t d) {
    for (const auto& rho : family) {
        bool ok = true;
        for (const auto& psi : psis) {
            auto depth = canonical_dt_depth(psi, rho, d);
            if (!depth || *depth > d) { ok = false; break; }
        }
        if (ok) return rho;
    }
    return std::nullopt;
}

// Number of interface profiles: weak compositions of R into m+1 parts.
inline uint64_t profile_count(uint64_t R, uint64_t m) { return binomial(R + m, m); }

}  // namespace spdp
