#pragma once

#include <cstdint>
#include <vector>

#include "ffhyper/errors.hpp"

namespace ffhyper {

/// Field elements are dense indices into the canonical enumeration.
/// The index is the base-p value of the coefficient sequence with the
/// constant term as the most significant digit, so index order equals
/// lexicographic order on (c_0, ..., c_{r-1}). Index 0 is the zero element.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldSize = 1u << 16;

namespace fpoly {

// dense polynomials over F_p, constant term first, used only at construction
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    // mod is monic of degree d
    std::size_t d = mod.size() - 1;
    for (std::size_t i = c.size(); i-- > d;) {
        std::uint64_t t = c[i];
        if (t == 0) continue;
        c[i] = 0;
        for (std::size_t j = 0; j < d; ++j)
            c[i - d + j] = (c[i - d + j] + t * (p - mod[j])) % p;
    }
    Poly out(d, 0);
    for (std::size_t i = 0; i < d && i < c.size(); ++i)
        out[i] = static_cast<std::uint32_t>(c[i]);
    trim(out);
    return out;
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e > 0) {
        if (e & 1u) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

inline Poly pow_mod(Poly base, unsigned long long e, const Poly& mod, std::uint32_t p) {
    Poly result{1};
    while (e > 0) {
        if (e & 1ull) result = mul_mod(result, base, mod, p);
        base = mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        std::uint32_t inv_lead = inv_mod_p(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = static_cast<std::uint64_t>(a.back()) * inv_lead % p;
            std::size_t off = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[off + j] = static_cast<std::uint32_t>((a[off + j] + f * (p - b[j])) % p);
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

inline std::vector<std::uint32_t> prime_factors_of(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Irreducibility of a monic degree-r polynomial over F_p:
/// x^{p^r} == x (mod f) and gcd(x^{p^{r/l}} - x, f) = 1 for prime l | r.
inline bool irreducible(const Poly& f, std::uint32_t p, std::uint32_t r) {
    Poly x{0, 1};
    Poly xred = mul_mod(x, Poly{1}, f, p); // x reduced mod f (differs for r = 1)
    unsigned long long pr = 1;
    for (std::uint32_t i = 0; i < r; ++i) pr *= p;
    Poly xpr = pow_mod(xred, pr, f, p);
    if (xpr != xred) return false;
    for (std::uint32_t l : prime_factors_of(r)) {
        unsigned long long e = 1;
        for (std::uint32_t i = 0; i < r / l; ++i) e *= p;
        Poly g = pow_mod(xred, e, f, p);
        // g - x mod f
        Poly diff = g;
        if (diff.size() < xred.size()) diff.resize(xred.size(), 0);
        for (std::size_t i = 0; i < xred.size(); ++i)
            diff[i] = (diff[i] + p - xred[i]) % p;
        trim(diff);
        Poly d = gcd(diff, f, p);
        if (d.size() != 1) return false;
    }
    return true;
}

} // namespace fpoly

/// Immutable description of F_{p^r}, p an odd prime, q = p^r <= 2^16.
/// Construction is deterministic: the modulus is the lexicographically
/// smallest monic irreducible polynomial of degree r (coefficients compared
/// constant term first) and the generator is the smallest element index of
/// multiplicative order q-1. Safe to share across threads once built.
struct FieldCtx {
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus; // r+1 coefficients, constant first, monic
    Elem generator = 0;
    std::vector<Elem> exp;              // exp[k] = g^k, k in [0, q-1)
    std::vector<std::uint32_t> dlog_t;  // dlog_t[e] for e != 0; dlog_t[0] unused

    std::uint32_t order() const { return q - 1; }

    std::vector<std::uint32_t> coeffs(Elem a) const {
        std::vector<std::uint32_t> c(r);
        for (std::uint32_t i = r; i-- > 0;) {
            c[i] = a % p; // least significant digit is c_{r-1}
            a /= p;
        }
        return c;
    }

    Elem from_coeffs(const std::vector<std::uint32_t>& c) const {
        Elem a = 0;
        for (std::uint32_t i = 0; i < r; ++i) a = a * p + c[i] % p;
        return a;
    }

    Elem add(Elem a, Elem b) const {
        Elem out = 0, scale = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            out += (a % p + b % p) % p * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        return out;
    }

    Elem neg(Elem a) const {
        Elem out = 0, scale = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            out += (p - a % p) % p * scale;
            scale *= p;
            a /= p;
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem one() const { return exp[0]; }

    /// The element representing the integer scalar v (v mod p times 1).
    Elem scalar(std::int64_t v) const {
        std::int64_t m = v % p;
        if (m < 0) m += p;
        Elem pw = 1;
        for (std::uint32_t i = 0; i + 1 < r; ++i) pw *= p;
        return static_cast<Elem>(m) * pw;
    }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp[(dlog_t[a] + dlog_t[b]) % order()];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("field inverse of zero");
        return exp[(order() - dlog_t[a]) % order()];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    std::uint32_t dlog(Elem a) const {
        if (a == 0) throw std::domain_error("discrete log of zero");
        return dlog_t[a];
    }

    bool contains(Elem a) const { return a < q; }
};

enum class FieldOp { add, sub, mul, inv, neg };

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline FieldCtx build_field(std::uint32_t p, std::uint32_t r) {
    if (p == 2 || !is_prime_u32(p))
        throw std::domain_error("build_field: p must be an odd prime");
    if (r < 1) throw std::domain_error("build_field: extension degree must be >= 1");
    std::uint64_t q64 = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q64 *= p;
        if (q64 > kMaxFieldSize)
            throw capacity_error("build_field: q = p^r exceeds the 2^16 table limit");
    }
    FieldCtx f;
    f.p = p;
    f.r = r;
    f.q = static_cast<std::uint32_t>(q64);

    // lexicographically smallest monic irreducible modulus
    bool found = false;
    for (std::uint32_t idx = 0; idx < f.q && !found; ++idx) {
        std::vector<std::uint32_t> lower(r);
        std::uint32_t v = idx;
        for (std::uint32_t i = r; i-- > 0;) {
            lower[i] = v % p; // idx digits, constant term most significant
            v /= p;
        }
        fpoly::Poly cand(r + 1);
        for (std::uint32_t i = 0; i < r; ++i) cand[i] = lower[i];
        cand[r] = 1;
        if (fpoly::irreducible(cand, p, r)) {
            f.modulus.assign(cand.begin(), cand.end());
            found = true;
        }
    }
    if (!found) throw internal_error("build_field: no irreducible modulus found");

    fpoly::Poly mod(f.modulus.begin(), f.modulus.end());
    auto elem_to_poly = [&](Elem a) {
        auto c = f.coeffs(a);
        fpoly::Poly pl(c.begin(), c.end());
        fpoly::trim(pl);
        return pl;
    };
    auto poly_to_elem = [&](const fpoly::Poly& pl) {
        std::vector<std::uint32_t> c(r, 0);
        for (std::size_t i = 0; i < pl.size(); ++i) c[i] = pl[i];
        return f.from_coeffs(c);
    };

    std::vector<std::uint32_t> prime_factors = fpoly::prime_factors_of(f.q - 1);

    // smallest element of full multiplicative order
    Elem gen = 0;
    for (Elem cand = 1; cand < f.q; ++cand) {
        fpoly::Poly cp = elem_to_poly(cand);
        bool full = true;
        for (std::uint32_t l : prime_factors) {
            fpoly::Poly pw = fpoly::pow_mod(cp, (f.q - 1) / l, mod, p);
            if (pw == fpoly::Poly{1}) {
                full = false;
                break;
            }
        }
        if (full) {
            gen = cand;
            break;
        }
    }
    if (gen == 0) throw internal_error("build_field: no generator found");
    f.generator = gen;

    f.exp.assign(f.q - 1, 0);
    f.dlog_t.assign(f.q, 0);
    fpoly::Poly acc{1};
    fpoly::Poly gp = elem_to_poly(gen);
    for (std::uint32_t k = 0; k < f.q - 1; ++k) {
        Elem e = poly_to_elem(acc);
        f.exp[k] = e;
        f.dlog_t[e] = k;
        acc = fpoly::mul_mod(acc, gp, mod, p);
    }
    if (acc != fpoly::Poly{1})
        throw internal_error("build_field: generator order check failed");
    return f;
}

inline Elem field_ops(const FieldCtx& f, FieldOp op, Elem a, Elem b = 0) {
    if (!f.contains(a) || (op != FieldOp::inv && op != FieldOp::neg && !f.contains(b)))
        throw std::domain_error("field_ops: element out of range");
    switch (op) {
        case FieldOp::add: return f.add(a, b);
        case FieldOp::sub: return f.sub(a, b);
        case FieldOp::mul: return f.mul(a, b);
        case FieldOp::inv: return f.inv(a);
        case FieldOp::neg: return f.neg(a);
    }
    throw internal_error("field_ops: bad op");
}

} // namespace ffhyper
