#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdp/field.hpp"
#include "spdp/monomial.hpp"

namespace spdp {

// Sparse polynomial over a prime field: monomial -> nonzero coefficient.
// Values are immutable in spirit; every operation returns a fresh polynomial.
class SparsePoly {
public:
    using TermMap = std::map<Monomial, uint64_t>;

    SparsePoly(FieldCtx ctx, uint32_t nvars) : ctx_(ctx), nvars_(nvars) {}

    static SparsePoly zero(FieldCtx ctx, uint32_t nvars) { return SparsePoly(ctx, nvars); }

    static SparsePoly constant(FieldCtx ctx, uint32_t nvars, int64_t c) {
        SparsePoly p(ctx, nvars);
        p.add_term(Monomial::one(), ctx.reduce(c));
        return p;
    }

    static SparsePoly variable(FieldCtx ctx, uint32_t nvars, uint32_t index) {
        SparsePoly p(ctx, nvars);
        p.add_term(Monomial::var(index), 1);
        return p;
    }

    const FieldCtx& ctx() const { return ctx_; }
    uint32_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Max total degree; 0 for the zero polynomial.
    uint32_t degree() const {
        uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    uint64_t coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    // Accumulate coef onto a monomial, keeping the no-zero-terms invariant.
    void add_term(const Monomial& m, uint64_t coef) {
        coef = ctx_.reduce_u(coef);
        if (coef == 0) return;
        if (m.max_var() >= nvars_ && !m.is_one())
            throw std::domain_error("SparsePoly: variable index " + std::to_string(m.max_var()) +
                                    " out of range (nvars=" + std::to_string(nvars_) + ")");
        auto [it, inserted] = terms_.emplace(m, coef);
        if (!inserted) {
            it->second = ctx_.add(it->second, coef);
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly operator+(const SparsePoly& o) const {
        check_compatible(o);
        SparsePoly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }

    SparsePoly operator-(const SparsePoly& o) const {
        check_compatible(o);
        SparsePoly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, ctx_.neg(c));
        return out;
    }

    SparsePoly negate() const {
        SparsePoly out(ctx_, nvars_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, ctx_.neg(c));
        return out;
    }

    SparsePoly scale(uint64_t k) const {
        k = ctx_.reduce_u(k);
        SparsePoly out(ctx_, nvars_);
        if (k == 0) return out;
        for (const auto& [m, c] : terms_) {
            uint64_t v = ctx_.mul(c, k);
            if (v != 0) out.terms_.emplace(m, v);
        }
        return out;
    }

    SparsePoly mul(const SparsePoly& o, bool boolean_reduce = false) const {
        check_compatible(o);
        SparsePoly out(ctx_, nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                out.add_term(ma.mul(mb, boolean_reduce), ctx_.mul(ca, cb));
        return out;
    }

    SparsePoly operator*(const SparsePoly& o) const { return mul(o, false); }

    // Mixed partial derivative with respect to a set of distinct variables.
    SparsePoly derive(const std::vector<uint32_t>& vars) const {
        for (uint32_t v : vars)
            if (v >= nvars_)
                throw std::domain_error("derive: variable index out of range");
        SparsePoly out(ctx_, nvars_);
        for (const auto& [m, c] : terms_) {
            uint64_t coef = c;
            Monomial cur = m;
            bool dead = false;
            for (uint32_t v : vars) {
                uint32_t e = cur.exponent_of(v);
                if (e == 0) { dead = true; break; }
                coef = ctx_.mul(coef, e % ctx_.modulus());
                if (coef == 0) { dead = true; break; }
                cur = step_down(cur, v);
            }
            if (!dead) out.add_term(cur, coef);
        }
        return out;
    }

    // Multiply by a monomial; boolean_reduce applies x^2 = x.
    SparsePoly shift(const Monomial& u, bool boolean_reduce = false) const {
        if (!u.is_one() && u.max_var() >= nvars_)
            throw std::domain_error("shift: variable index out of range");
        SparsePoly out(ctx_, nvars_);
        for (const auto& [m, c] : terms_) out.add_term(m.mul(u, boolean_reduce), c);
        return out;
    }

    // Partial assignment: variables present in `rho` are fixed to the given
    // field values, the rest stay free.
    SparsePoly restrict(const std::map<uint32_t, uint64_t>& rho) const {
        SparsePoly out(ctx_, nvars_);
        for (const auto& [m, c] : terms_) {
            uint64_t coef = c;
            Monomial cur = Monomial::one();
            for (const auto& [v, e] : m.terms()) {
                auto it = rho.find(v);
                if (it == rho.end()) {
                    cur = cur.mul(Monomial::var(v, e));
                } else {
                    coef = ctx_.mul(coef, ctx_.pow(ctx_.reduce_u(it->second), e));
                    if (coef == 0) break;
                }
            }
            if (coef != 0) out.add_term(cur, coef);
        }
        return out;
    }

    // Reindex variables via a map old -> new; identifications are allowed
    // (several old variables may share a new index).
    SparsePoly rename(const std::vector<uint32_t>& new_index, uint32_t new_nvars,
                      bool boolean_reduce = false) const {
        if (new_index.size() != nvars_)
            throw std::domain_error("rename: map size must equal nvars");
        SparsePoly out(ctx_, new_nvars);
        for (const auto& [m, c] : terms_) {
            Monomial cur = Monomial::one();
            for (const auto& [v, e] : m.terms())
                cur = cur.mul(Monomial::var(new_index[v], e), boolean_reduce);
            out.add_term(cur, c);
        }
        return out;
    }

    // Substitute each variable by a polynomial image.
    SparsePoly compose(const std::vector<SparsePoly>& images) const {
        if (images.size() != nvars_)
            throw std::domain_error("compose: need one image per variable");
        SparsePoly out(ctx_, images.empty() ? nvars_ : images[0].nvars());
        uint32_t out_nvars = out.nvars();
        for (const auto& [m, c] : terms_) {
            SparsePoly acc = SparsePoly::constant(ctx_, out_nvars, 1).scale(c);
            for (const auto& [v, e] : m.terms())
                for (uint32_t k = 0; k < e; ++k) acc = acc * images[v];
            out = out + acc;
        }
        return out;
    }

    uint64_t eval(std::span<const uint64_t> point) const {
        if (point.size() != nvars_)
            throw std::domain_error("eval: assignment length must equal nvars");
        uint64_t total = 0;
        for (const auto& [m, c] : terms_) {
            uint64_t v = c;
            for (const auto& [var, e] : m.terms()) {
                v = ctx_.mul(v, ctx_.pow(ctx_.reduce_u(point[var]), e));
                if (v == 0) break;
            }
            total = ctx_.add(total, v);
        }
        return total;
    }

    uint64_t eval(const std::vector<uint64_t>& point) const {
        return eval(std::span<const uint64_t>(point));
    }

    // Image under the quotient by <x_i^2 - x_i>.
    SparsePoly multilinear_reduce() const {
        SparsePoly out(ctx_, nvars_);
        for (const auto& [m, c] : terms_) out.add_term(m.mul(Monomial::one(), true), c);
        return out;
    }

    bool is_multilinear() const {
        for (const auto& [m, c] : terms_)
            if (!m.is_squarefree()) return false;
        return true;
    }

    std::set<uint32_t> support() const {
        std::set<uint32_t> s;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.terms()) s.insert(v);
        return s;
    }

    bool operator==(const SparsePoly& o) const {
        return ctx_ == o.ctx_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += std::to_string(c);
            if (!m.is_one()) s += "*" + m.str();
        }
        return s;
    }

private:
    void check_compatible(const SparsePoly& o) const {
        if (ctx_ != o.ctx_ || nvars_ != o.nvars_)
            throw std::logic_error("SparsePoly: mixed field or variable universe");
    }

    static Monomial step_down(const Monomial& m, uint32_t var) {
        uint32_t e = m.exponent_of(var);
        Monomial rest = m.without(var);
        if (e > 1) rest = rest.mul(Monomial::var(var, e - 1));
        return rest;
    }

    FieldCtx ctx_;
    uint32_t nvars_;
    TermMap terms_;
};

}  // namespace spdp
