#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spdp {

// Power product of variables. Stored as (variable, exponent) pairs with
// strictly increasing variable indices and positive exponents.
//
// Ordering is graded lexicographic with the smallest variable index first:
// lower total degree sorts first; on ties the monomial whose earliest
// differing factor uses a smaller variable (or a higher power of it) sorts
// first. This fixes deterministic column bases everywhere.
class Monomial {
public:
    using Term = std::pair<uint32_t, uint32_t>;

    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial var(uint32_t index, uint32_t exp = 1) {
        Monomial m;
        if (exp > 0) m.terms_.emplace_back(index, exp);
        return m;
    }

    static Monomial from_vars(const std::vector<uint32_t>& sorted_vars) {
        Monomial m;
        m.terms_.reserve(sorted_vars.size());
        for (uint32_t v : sorted_vars) m.terms_.emplace_back(v, 1);
        return m;
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_one() const { return terms_.empty(); }

    uint32_t degree() const {
        uint32_t d = 0;
        for (const auto& [v, e] : terms_) d += e;
        return d;
    }

    bool is_squarefree() const {
        for (const auto& [v, e] : terms_)
            if (e != 1) return false;
        return true;
    }

    uint32_t exponent_of(uint32_t var) const {
        for (const auto& [v, e] : terms_)
            if (v == var) return e;
        return 0;
    }

    bool contains(uint32_t var) const { return exponent_of(var) > 0; }

    uint32_t max_var() const { return terms_.empty() ? 0 : terms_.back().first; }

    std::vector<uint32_t> support() const {
        std::vector<uint32_t> s;
        s.reserve(terms_.size());
        for (const auto& [v, e] : terms_) s.push_back(v);
        return s;
    }

    // Product; boolean_reduce collapses x^k to x for every variable.
    Monomial mul(const Monomial& o, bool boolean_reduce = false) const {
        Monomial out;
        out.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.terms_.push_back(o.terms_[j++]);
            } else {
                out.terms_.emplace_back(terms_[i].first, terms_[i].second + o.terms_[j].second);
                ++i; ++j;
            }
        }
        if (boolean_reduce)
            for (auto& [v, e] : out.terms_) e = 1;
        return out;
    }

    // Drop the given variable entirely (used by substitution).
    Monomial without(uint32_t var) const {
        Monomial out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            if (t.first != var) out.terms_.push_back(t);
        return out;
    }

    bool operator==(const Monomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Monomial& o) const { return terms_ != o.terms_; }

    bool operator<(const Monomial& o) const {
        uint32_t da = degree(), db = o.degree();
        if (da != db) return da < db;
        size_t i = 0;
        while (i < terms_.size() && i < o.terms_.size()) {
            if (terms_[i].first != o.terms_[i].first)
                return terms_[i].first < o.terms_[i].first;
            if (terms_[i].second != o.terms_[i].second)
                return terms_[i].second > o.terms_[i].second;
            ++i;
        }
        return terms_.size() > o.terms_.size();  // more mass on earlier vars sorts first
    }

    std::string str() const {
        if (terms_.empty()) return "1";
        std::string s;
        for (const auto& [v, e] : terms_) {
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(v);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Term> terms_;
};

}  // namespace spdp
