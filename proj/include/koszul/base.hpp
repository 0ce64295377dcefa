#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace koszul {

using Rational = mpq_class;
using Integer = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DenominatorDivisibleByP : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };
struct ZeroForm : Error { using Error::Error; };
struct DuplicateHyperplane : Error { using Error::Error; };
struct NonSimpleGraph : Error { using Error::Error; };

struct AxiomViolation : Error {
    int axiom;
    AxiomViolation(int ax, const std::string& what) : Error(what), axiom(ax) {}
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    // deterministic Miller-Rabin for 64-bit range
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; a nonzero mod p, p prime
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw Error("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

/// Coefficient field: characteristic 0 (exact rationals) or a prime p.
class FieldSpec {
public:
    FieldSpec() : char_(0) {}
    explicit FieldSpec(std::uint64_t characteristic) : char_(characteristic) {
        if (char_ != 0 && !is_prime_u64(char_))
            throw PreconditionFailed("field characteristic must be 0 or prime, got " + std::to_string(char_));
        if (char_ > (1ull << 31))
            throw BudgetExceeded("prime characteristic too large (max 2^31)");
    }
    static FieldSpec rationals() { return FieldSpec(0); }
    static FieldSpec prime(std::uint64_t p) { return FieldSpec(p); }

    std::uint64_t characteristic() const { return char_; }
    bool is_rational() const { return char_ == 0; }

    /// Reduce a rational to its canonical representative in [0, p).
    std::uint64_t reduce(const Rational& x) const {
        if (char_ == 0) throw Error("reduce called on characteristic-0 field");
        mpz_class den = x.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(char_)))
            throw DenominatorDivisibleByP("rational denominator divisible by p=" + std::to_string(char_));
        mpz_class num = x.get_num();
        std::uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(char_));
        std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(char_));
        return mulmod_u64(n, invmod_u64(d, char_), char_);
    }

    bool operator==(const FieldSpec& o) const { return char_ == o.char_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
    std::uint64_t char_;
};

/// Column cap for elimination, from KOSZUL_BUDGET (default 50000).
inline std::size_t matrix_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("KOSZUL_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(50000);
    }();
    return budget;
}

inline void check_budget_cols(std::size_t cols, const char* where) {
    if (cols > matrix_budget())
        throw BudgetExceeded(std::string(where) + ": matrix has " + std::to_string(cols) +
                             " columns, budget " + std::to_string(matrix_budget()));
}

/// "a/b" in lowest terms, "a" when the denominator is 1.
inline std::string rational_to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw UsageError("empty rational literal");
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed rational literal: " + s);
    }
}

inline unsigned long long binomial_ull(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!b.fits_ulong_p()) throw BudgetExceeded("binomial overflows unsigned long");
    return b.get_ui();
}

inline Integer binomial_z(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

} // namespace koszul
