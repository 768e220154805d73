#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ffhyper/errors.hpp"
#include "ffhyper/rational.hpp"

namespace ffhyper {

namespace zpoly {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw capacity_error("cyclotomic: 64-bit coefficient overflow in multiply");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw capacity_error("cyclotomic: 64-bit coefficient overflow in add");
    return out;
}

/// Exact division of integer polynomials, divisor monic; throws if not exact.
inline std::vector<std::int64_t> div_exact(std::vector<std::int64_t> num,
                                           const std::vector<std::int64_t>& den) {
    std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<std::int64_t> quot(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
        std::int64_t c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] = checked_add(num[i - dd + j], -checked_mul(c, den[j]));
    }
    for (std::int64_t c : num)
        if (c != 0) throw internal_error("cyclotomic: division not exact");
    return quot;
}

} // namespace zpoly

/// The m-th cyclotomic polynomial, integer coefficients, constant term first,
/// computed by dividing x^d - 1 by the Phi of every proper divisor, walking
/// the divisors of m in increasing order.
inline std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t m) {
    if (m < 1 || m > (1u << 16))
        throw capacity_error("cyclotomic_polynomial: m out of range");
    std::vector<std::uint32_t> divisors;
    for (std::uint32_t d = 1; d <= m; ++d)
        if (m % d == 0) divisors.push_back(d);
    std::vector<std::vector<std::int64_t>> cache;
    cache.reserve(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        std::uint32_t d = divisors[i];
        std::vector<std::int64_t> f(d + 1, 0);
        f[0] = -1;
        f[d] = 1;
        for (std::size_t j = 0; j < i; ++j)
            if (d % divisors[j] == 0) f = zpoly::div_exact(std::move(f), cache[j]);
        cache.push_back(std::move(f));
    }
    return cache.back();
}

/// Exact element of Q(zeta_m): rational coefficient vector of length
/// deg(Phi_m), canonical modulo Phi_m. Equality of coefficient vectors is
/// equality of the complex values.
class CycloNum {
public:
    CycloNum() = default;
    explicit CycloNum(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    const std::vector<Rational>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) { return a.c_ == b.c_; }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    /// Serialization used in reports: "num/den" strings, lowest terms.
    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(c_.size());
        for (const auto& x : c_) out.push_back(x.to_string());
        return out;
    }

private:
    std::vector<Rational> c_;
};

/// Context for Q(zeta_m). Immutable after construction; all operations pure.
/// For small m a zeta-power table (x^e mod Phi_m) is precomputed; larger m
/// fall back to Horner reduction.
struct CycloCtx {
    std::uint32_t m = 0;
    std::vector<std::int64_t> phi; // Phi_m, constant first, monic
    std::uint32_t deg = 0;
    std::vector<std::vector<std::int64_t>> zeta_pow; // x^e mod Phi_m, e in [0, m)

    static constexpr std::uint32_t kEagerPowerTableLimit = 2048;

    explicit CycloCtx(std::uint32_t m_) : m(m_), phi(cyclotomic_polynomial(m_)) {
        deg = static_cast<std::uint32_t>(phi.size() - 1);
        if (m <= kEagerPowerTableLimit) {
            zeta_pow.assign(m, std::vector<std::int64_t>(deg, 0));
            std::vector<std::int64_t> cur(deg, 0);
            cur[0] = 1;
            for (std::uint32_t e = 0; e < m; ++e) {
                zeta_pow[e] = cur;
                shift_once(cur);
            }
        }
    }

    CycloNum zero() const { return CycloNum(std::vector<Rational>(deg)); }

    CycloNum from_rational(const Rational& v) const {
        std::vector<Rational> c(deg);
        c[0] = v;
        return CycloNum(std::move(c));
    }

    CycloNum one() const { return from_rational(Rational(1)); }

    /// Canonical representation of zeta_m^k (k taken mod m).
    CycloNum root_of_unity(std::int64_t k) const {
        std::int64_t e = k % m;
        if (e < 0) e += m;
        std::vector<std::int64_t> row = power_row(static_cast<std::uint32_t>(e));
        std::vector<Rational> c(deg);
        for (std::uint32_t i = 0; i < deg; ++i) c[i] = Rational(row[i]);
        return CycloNum(std::move(c));
    }

    CycloNum add(const CycloNum& a, const CycloNum& b) const {
        std::vector<Rational> c(deg);
        for (std::uint32_t i = 0; i < deg; ++i) c[i] = a[i] + b[i];
        return CycloNum(std::move(c));
    }

    CycloNum sub(const CycloNum& a, const CycloNum& b) const {
        std::vector<Rational> c(deg);
        for (std::uint32_t i = 0; i < deg; ++i) c[i] = a[i] - b[i];
        return CycloNum(std::move(c));
    }

    CycloNum neg(const CycloNum& a) const {
        std::vector<Rational> c(deg);
        for (std::uint32_t i = 0; i < deg; ++i) c[i] = -a[i];
        return CycloNum(std::move(c));
    }

    CycloNum scale(const CycloNum& a, const Rational& s) const {
        std::vector<Rational> c(deg);
        for (std::uint32_t i = 0; i < deg; ++i) c[i] = a[i] * s;
        return CycloNum(std::move(c));
    }

    CycloNum mul(const CycloNum& a, const CycloNum& b) const {
        std::vector<Rational> conv(2 * deg - 1);
        for (std::uint32_t i = 0; i < deg; ++i) {
            if (a[i].is_zero()) continue;
            for (std::uint32_t j = 0; j < deg; ++j) {
                if (b[j].is_zero()) continue;
                conv[i + j] += a[i] * b[j];
            }
        }
        // reduce modulo the monic Phi_m
        for (std::size_t i = conv.size(); i-- > deg;) {
            Rational t = conv[i];
            if (t.is_zero()) continue;
            conv[i] = Rational(0);
            for (std::uint32_t j = 0; j < deg; ++j)
                conv[i - deg + j] -= t * Rational(phi[j]);
        }
        conv.resize(deg);
        return CycloNum(std::move(conv));
    }

    /// a * zeta^e, exponent taken mod m.
    CycloNum mul_zeta(const CycloNum& a, std::int64_t e) const {
        std::int64_t k = e % m;
        if (k < 0) k += m;
        std::vector<Rational> out(deg);
        for (std::uint32_t j = 0; j < deg; ++j) {
            if (a[j].is_zero()) continue;
            std::vector<std::int64_t> row = power_row(static_cast<std::uint32_t>((j + k) % m));
            for (std::uint32_t i = 0; i < deg; ++i) {
                if (row[i] == 0) continue;
                out[i] += a[j] * Rational(row[i]);
            }
        }
        return CycloNum(std::move(out));
    }

    std::complex<double> embed(const CycloNum& a) const {
        std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / m);
        std::complex<double> acc(0.0, 0.0);
        for (std::uint32_t i = deg; i-- > 0;) acc = acc * z + a[i].to_double();
        return acc;
    }

    /// x^e mod Phi_m for e in [0, m).
    std::vector<std::int64_t> power_row(std::uint32_t e) const {
        if (!zeta_pow.empty()) return zeta_pow[e];
        std::vector<std::int64_t> cur(deg, 0);
        cur[0] = 1;
        for (std::uint32_t i = 0; i < e; ++i) shift_once(cur);
        return cur;
    }

private:
    // cur <- cur * x mod Phi_m
    void shift_once(std::vector<std::int64_t>& cur) const {
        std::int64_t top = cur[deg - 1];
        for (std::uint32_t i = deg; i-- > 1;) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::uint32_t j = 0; j < deg; ++j)
                cur[j] = zpoly::checked_add(cur[j], -zpoly::checked_mul(top, phi[j]));
    }
};

enum class CycloOp { add, sub, mul, scale_by_rational };

inline CycloNum cyclo_arith(const CycloCtx& ctx, CycloOp op, const CycloNum& a,
                            const CycloNum& b = CycloNum(), const Rational& s = Rational(0)) {
    switch (op) {
        case CycloOp::add: return ctx.add(a, b);
        case CycloOp::sub: return ctx.sub(a, b);
        case CycloOp::mul: return ctx.mul(a, b);
        case CycloOp::scale_by_rational: return ctx.scale(a, s);
    }
    throw internal_error("cyclo_arith: bad op");
}

inline std::complex<double> embed_complex(const CycloCtx& ctx, const CycloNum& a) {
    return ctx.embed(a);
}

/// Integer accumulator for sums of roots of unity: counts[e] copies of
/// zeta^e, finalized into a CycloNum with a rational scale and a global
/// exponent shift. This is the workhorse behind all exact point sums.
class ZetaSum {
public:
    explicit ZetaSum(const CycloCtx& ctx) : ctx_(&ctx), counts_(ctx.m, 0) {}

    void add(std::uint32_t e) {
        counts_[e] = zpoly::checked_add(counts_[e], 1);
    }

    void add_count(std::uint32_t e, std::int64_t k) {
        counts_[e] = zpoly::checked_add(counts_[e], k);
    }

    /// scale * zeta^shift * sum_e counts[e] zeta^e
    CycloNum finalize(const Rational& scale, std::uint32_t shift = 0) const {
        const CycloCtx& c = *ctx_;
        std::vector<std::int64_t> acc(c.deg, 0);
        if (!c.zeta_pow.empty()) {
            for (std::uint32_t e = 0; e < c.m; ++e) {
                std::int64_t k = counts_[e];
                if (k == 0) continue;
                const auto& row = c.zeta_pow[(e + shift) % c.m];
                for (std::uint32_t i = 0; i < c.deg; ++i)
                    if (row[i] != 0)
                        acc[i] = zpoly::checked_add(acc[i], zpoly::checked_mul(k, row[i]));
            }
        } else {
            for (std::uint32_t e = 0; e < c.m; ++e) {
                std::int64_t k = counts_[e];
                if (k == 0) continue;
                auto row = c.power_row((e + shift) % c.m);
                for (std::uint32_t i = 0; i < c.deg; ++i)
                    if (row[i] != 0)
                        acc[i] = zpoly::checked_add(acc[i], zpoly::checked_mul(k, row[i]));
            }
        }
        std::vector<Rational> out(c.deg);
        for (std::uint32_t i = 0; i < c.deg; ++i) out[i] = Rational(acc[i]) * scale;
        return CycloNum(std::move(out));
    }

private:
    const CycloCtx* ctx_;
    std::vector<std::int64_t> counts_;
};

} // namespace ffhyper
