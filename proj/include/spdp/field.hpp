#pragma once

#include <cstdint>
#include <stdexcept>

namespace spdp {

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

// Prime modulus plus the arithmetic over it. All element values are kept in
// canonical range [0, modulus).
class FieldCtx {
public:
    static constexpr uint64_t kDefaultPrime = 1000003;

    explicit FieldCtx(uint64_t modulus = kDefaultPrime) : p_(modulus) {
        if (!detail::is_prime_u64(modulus))
            throw std::domain_error("FieldCtx: modulus must be prime, got " + std::to_string(modulus));
        if (modulus >= (1ULL << 62))
            throw std::domain_error("FieldCtx: modulus must fit in 62 bits");
    }

    uint64_t modulus() const { return p_; }

    uint64_t reduce(int64_t v) const {
        int64_t m = static_cast<int64_t>(p_);
        int64_t r = v % m;
        if (r < 0) r += m;
        return static_cast<uint64_t>(r);
    }

    uint64_t reduce_u(uint64_t v) const { return v % p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }

    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    uint64_t mul(uint64_t a, uint64_t b) const { return detail::mulmod_u64(a, b, p_); }

    uint64_t pow(uint64_t base, uint64_t exp) const { return detail::powmod_u64(base, exp, p_); }

    // Extended Euclid; throws on zero.
    uint64_t inv(uint64_t a) const {
        if (a == 0) throw std::domain_error("FieldCtx: inverse of zero");
        int64_t t = 0, new_t = 1;
        int64_t r = static_cast<int64_t>(p_), new_r = static_cast<int64_t>(a);
        while (new_r != 0) {
            int64_t q = r / new_r;
            int64_t tmp = t - q * new_t;
            t = new_t; new_t = tmp;
            tmp = r - q * new_r;
            r = new_r; new_r = tmp;
        }
        return reduce(t);
    }

    bool operator==(const FieldCtx& o) const { return p_ == o.p_; }
    bool operator!=(const FieldCtx& o) const { return p_ != o.p_; }

private:
    uint64_t p_;
};

}  // namespace spdp
