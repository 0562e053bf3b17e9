#ifndef PVC_COMMON_HPP
#define PVC_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvc {

// Exact arbitrary-precision rational. All LP/flow/matching arithmetic in the
// library goes through this type; there is no floating-point fallback.
// mpq_class keeps values canonical (lowest terms, positive denominator) as
// long as they are produced by arithmetic or canonicalized after raw input.
using Rational = mpq_class;

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class invariant_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure: a correctness-proof assertion did not hold.
// Always on, independent of NDEBUG.
class internal_error : public std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw invariant_error(what);
}

inline void check_internal(bool cond, const std::string& what) {
    if (!cond) throw internal_error(what);
}

// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) throw std::invalid_argument("bad rational literal: " + s);
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline Rational rat_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

inline Rational rat_ceil(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

inline long rat_ceil_long(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    require(q.fits_slong_p(), "ceiling does not fit in long");
    return q.get_si();
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

// Deterministic, platform-independent RNG (splitmix64). std::mt19937 with
// std::uniform_int_distribution is not portable across standard libraries,
// and byte-identical generator output is part of the CLI contract.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Rejection sampling keeps it unbiased.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

private:
    uint64_t state_;
};

}  // namespace pvc

#endif  // PVC_COMMON_HPP
