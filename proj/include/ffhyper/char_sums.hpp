#pragma once

#include <cstdint>
#include <vector>

#include "ffhyper/characters.hpp"
#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/errors.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper {

namespace zc {

/// Integer-coefficient cyclotomic value (length deg(Phi_m)). Jacobi sums and
/// their products live here; the rational scale is applied once at the end.
using ZVec = std::vector<std::int64_t>;

inline ZVec zero(const CycloCtx& c) { return ZVec(c.deg, 0); }

inline ZVec one(const CycloCtx& c) {
    ZVec v(c.deg, 0);
    v[0] = 1;
    return v;
}

inline void add_into(ZVec& a, const ZVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = zpoly::checked_add(a[i], b[i]);
}

inline void add_scaled_into(ZVec& a, const ZVec& b, std::int64_t k) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = zpoly::checked_add(a[i], zpoly::checked_mul(k, b[i]));
}

inline ZVec mul(const CycloCtx& c, const ZVec& a, const ZVec& b) {
    std::vector<std::int64_t> conv(2 * c.deg - 1, 0);
    for (std::uint32_t i = 0; i < c.deg; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < c.deg; ++j) {
            if (b[j] == 0) continue;
            conv[i + j] = zpoly::checked_add(conv[i + j], zpoly::checked_mul(a[i], b[j]));
        }
    }
    for (std::size_t i = conv.size(); i-- > c.deg;) {
        std::int64_t t = conv[i];
        if (t == 0) continue;
        conv[i] = 0;
        for (std::uint32_t j = 0; j < c.deg; ++j)
            conv[i - c.deg + j] =
                zpoly::checked_add(conv[i - c.deg + j], -zpoly::checked_mul(t, c.phi[j]));
    }
    conv.resize(c.deg);
    return conv;
}

inline ZVec mul_zeta(const CycloCtx& c, const ZVec& a, std::uint32_t e) {
    e %= c.m;
    if (e == 0) return a;
    ZVec out(c.deg, 0);
    for (std::uint32_t j = 0; j < c.deg; ++j) {
        if (a[j] == 0) continue;
        auto row = c.power_row((j + e) % c.m);
        add_scaled_into(out, row, a[j]);
    }
    return out;
}

inline CycloNum to_cyclo(const CycloCtx& c, const ZVec& a, const Rational& scale) {
    std::vector<Rational> out(c.deg);
    for (std::uint32_t i = 0; i < c.deg; ++i) out[i] = Rational(a[i]) * scale;
    return CycloNum(std::move(out));
}

// allocation-free kernels over raw coefficient slices of length deg; conv is
// caller-provided scratch of length 2*deg-1

inline void mul_into(const CycloCtx& c, std::int64_t* dst, const std::int64_t* a,
                     const std::int64_t* b, std::int64_t* conv) {
    const std::uint32_t deg = c.deg;
    for (std::uint32_t i = 0; i < 2 * deg - 1; ++i) conv[i] = 0;
    for (std::uint32_t i = 0; i < deg; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < deg; ++j) {
            if (b[j] == 0) continue;
            conv[i + j] = zpoly::checked_add(conv[i + j], zpoly::checked_mul(a[i], b[j]));
        }
    }
    for (std::uint32_t i = 2 * deg - 1; i-- > deg;) {
        std::int64_t t = conv[i];
        if (t == 0) continue;
        for (std::uint32_t j = 0; j < deg; ++j)
            conv[i - deg + j] =
                zpoly::checked_add(conv[i - deg + j], -zpoly::checked_mul(t, c.phi[j]));
    }
    for (std::uint32_t i = 0; i < deg; ++i) dst[i] = conv[i];
}

/// Fully unrolled fixed-degree multiply for the evaluator hot loops.
template <unsigned DEG>
inline void mul_into_fixed(const std::int64_t* phi, std::int64_t* dst, const std::int64_t* a,
                           const std::int64_t* b) {
    std::int64_t conv[2 * DEG - 1] = {};
    for (unsigned i = 0; i < DEG; ++i)
        for (unsigned j = 0; j < DEG; ++j)
            conv[i + j] = zpoly::checked_add(conv[i + j], zpoly::checked_mul(a[i], b[j]));
    for (unsigned i = 2 * DEG - 2; i >= DEG; --i) {
        std::int64_t t = conv[i];
        if (t != 0)
            for (unsigned j = 0; j < DEG; ++j)
                conv[i - DEG + j] =
                    zpoly::checked_add(conv[i - DEG + j], -zpoly::checked_mul(t, phi[j]));
        if (i == DEG) break;
    }
    for (unsigned i = 0; i < DEG; ++i) dst[i] = conv[i];
}

/// dst += a * b, reduced; same shape as mul_into_fixed with a fused final add.
template <unsigned DEG>
inline void mul_acc_fixed(const std::int64_t* phi, std::int64_t* dst, const std::int64_t* a,
                          const std::int64_t* b) {
    std::int64_t conv[2 * DEG - 1] = {};
    for (unsigned i = 0; i < DEG; ++i)
        for (unsigned j = 0; j < DEG; ++j)
            conv[i + j] = zpoly::checked_add(conv[i + j], zpoly::checked_mul(a[i], b[j]));
    for (unsigned i = 2 * DEG - 2; i >= DEG; --i) {
        std::int64_t t = conv[i];
        if (t != 0)
            for (unsigned j = 0; j < DEG; ++j)
                conv[i - DEG + j] =
                    zpoly::checked_add(conv[i - DEG + j], -zpoly::checked_mul(t, phi[j]));
        if (i == DEG) break;
    }
    for (unsigned i = 0; i < DEG; ++i) dst[i] = zpoly::checked_add(dst[i], conv[i]);
}

using MulFixedFn = void (*)(const std::int64_t*, std::int64_t*, const std::int64_t*,
                            const std::int64_t*);

/// Degree-dispatched kernels; null when no fixed instantiation exists.
inline MulFixedFn mul_fixed_for(std::uint32_t deg) {
    switch (deg) {
        case 1: return &mul_into_fixed<1>;
        case 2: return &mul_into_fixed<2>;
        case 3: return &mul_into_fixed<3>;
        case 4: return &mul_into_fixed<4>;
        case 6: return &mul_into_fixed<6>;
        case 8: return &mul_into_fixed<8>;
        case 16: return &mul_into_fixed<16>;
        default: return nullptr;
    }
}

inline MulFixedFn mul_acc_fixed_for(std::uint32_t deg) {
    switch (deg) {
        case 1: return &mul_acc_fixed<1>;
        case 2: return &mul_acc_fixed<2>;
        case 3: return &mul_acc_fixed<3>;
        case 4: return &mul_acc_fixed<4>;
        case 6: return &mul_acc_fixed<6>;
        case 8: return &mul_acc_fixed<8>;
        case 16: return &mul_acc_fixed<16>;
        default: return nullptr;
    }
}

inline void add_scaled_slice(const CycloCtx& c, std::int64_t* dst, const std::int64_t* src,
                             std::int64_t k) {
    for (std::uint32_t i = 0; i < c.deg; ++i)
        dst[i] = zpoly::checked_add(dst[i], zpoly::checked_mul(k, src[i]));
}

} // namespace zc

/// J(A, B) = sum_x A(x) B(1-x), as an integer cyclotomic value.
inline zc::ZVec jacobi_z(const CycloCtx& cyclo, const Character& a, const Character& b) {
    require_same_field(a, b);
    const FieldCtx& f = *a.field;
    ZetaSum acc(cyclo);
    for (Elem x = 1; x < f.q; ++x) {
        Elem y = f.sub(f.one(), x);
        if (y == 0) continue;
        std::uint64_t e = (static_cast<std::uint64_t>(a.j) * f.dlog_t[x] +
                           static_cast<std::uint64_t>(b.j) * f.dlog_t[y]) %
                          f.order();
        acc.add(static_cast<std::uint32_t>(e));
    }
    CycloNum n = acc.finalize(Rational(1));
    zc::ZVec out(cyclo.deg);
    for (std::uint32_t i = 0; i < cyclo.deg; ++i) out[i] = n[i].num();
    return out;
}

inline CycloNum jacobi(const CycloCtx& cyclo, const Character& a, const Character& b) {
    return zc::to_cyclo(cyclo, jacobi_z(cyclo, a, b), Rational(1));
}

/// Multiple-Jacobi sum J(l_1, ..., l_k) over c_1 + ... + c_k = 1, computed in
/// the free-sum form: sum over c_2..c_k of l_1(1+c_2+...+c_k) l_2(-c_2)...l_k(-c_k).
inline CycloNum multi_jacobi(const CycloCtx& cyclo, const std::vector<Character>& lams) {
    if (lams.empty()) throw std::domain_error("multi_jacobi: need k >= 1 characters");
    const FieldCtx& f = *lams[0].field;
    for (const auto& l : lams) require_same_field(l, f);
    const std::size_t k = lams.size();
    if (k == 1) return cyclo.one(); // single constrained term l(1) = 1

    ZetaSum acc(cyclo);
    std::vector<Elem> c(k - 1, 0);
    // odometer over (c_2, ..., c_k)
    while (true) {
        Elem s = f.one();
        for (Elem ci : c) s = f.add(s, ci);
        if (s != 0) {
            std::uint64_t e = static_cast<std::uint64_t>(lams[0].j) * f.dlog_t[s] % f.order();
            bool dead = false;
            for (std::size_t i = 0; i < k - 1; ++i) {
                Elem mc = f.neg(c[i]);
                if (mc == 0) { dead = true; break; }
                e = (e + static_cast<std::uint64_t>(lams[i + 1].j) * f.dlog_t[mc]) % f.order();
            }
            if (!dead) acc.add(static_cast<std::uint32_t>(e));
        }
        std::size_t pos = 0;
        while (pos < k - 1 && ++c[pos] == f.q) c[pos++] = 0;
        if (pos == k - 1) break;
    }
    return acc.finalize(Rational(1));
}

/// Greene binomial coefficient: binom(A, B) = B(-1)/q * J(A, Bbar).
inline CycloNum binom(const CycloCtx& cyclo, const Character& a, const Character& b) {
    require_same_field(a, b);
    zc::ZVec j = jacobi_z(cyclo, a, char_inv(b));
    CycloNum n = zc::to_cyclo(cyclo, j, Rational(1, a.field->q));
    return cyclo.mul_zeta(n, chi_exp_minus_one(b));
}

/// Multinomial coefficient: (B_1...B_n)(-1)/q^n * J(A, Bbar_1, ..., Bbar_n).
inline CycloNum multinom(const CycloCtx& cyclo, const Character& a,
                         const std::vector<Character>& bs) {
    if (bs.empty()) throw std::domain_error("multinom: need n >= 1 characters");
    std::vector<Character> lams;
    lams.reserve(bs.size() + 1);
    lams.push_back(a);
    std::uint32_t shift = 0;
    std::int64_t qn = 1;
    for (const auto& b : bs) {
        require_same_field(a, b);
        lams.push_back(char_inv(b));
        shift = (shift + chi_exp_minus_one(b)) % cyclo.m;
        qn = zpoly::checked_mul(qn, a.field->q);
    }
    CycloNum j = multi_jacobi(cyclo, lams);
    return cyclo.mul_zeta(cyclo.scale(j, Rational(1, qn)), shift);
}

/// Dense (q-1) x (q-1) table of binomial coefficients binom(chi_i, chi_j),
/// plus the underlying integer Jacobi sums J(chi_i, chi_j) that the
/// character-sum evaluators consume. Immutable after build.
struct BinomialTable {
    const FieldCtx* field = nullptr;
    const CycloCtx* cyclo = nullptr;
    std::uint32_t m = 0;
    std::vector<zc::ZVec> jz;        // row-major, J(chi_i, chi_j)
    std::vector<CycloNum> binom_tab; // row-major, binom(chi_i, chi_j)

    const zc::ZVec& j_at(std::uint32_t i, std::uint32_t j) const {
        return jz[static_cast<std::size_t>(i) * m + j];
    }
    const CycloNum& at(std::uint32_t i, std::uint32_t j) const {
        return binom_tab[static_cast<std::size_t>(i) * m + j];
    }
    const CycloNum& at(const Character& a, const Character& b) const { return at(a.j, b.j); }
};

inline BinomialTable build_binom_table(const FieldCtx& f, const CycloCtx& cyclo,
                                       std::uint64_t budget_bytes = (1ull << 28)) {
    std::uint32_t m = f.order();
    std::uint64_t need = static_cast<std::uint64_t>(m) * m * cyclo.deg * 24;
    if (need > budget_bytes)
        throw capacity_error("build_binom_table: table would exceed the memory budget");
    BinomialTable t;
    t.field = &f;
    t.cyclo = &cyclo;
    t.m = m;
    t.jz.reserve(static_cast<std::size_t>(m) * m);
    t.binom_tab.reserve(static_cast<std::size_t>(m) * m);
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < m; ++j) {
            Character a{&f, i}, b{&f, j};
            t.jz.push_back(jacobi_z(cyclo, a, b));
            // binom(chi_i, chi_j) = chi_j(-1)/q * J(chi_i, chi_jbar)
            zc::ZVec jb = jacobi_z(cyclo, a, char_inv(b));
            CycloNum num = zc::to_cyclo(cyclo, jb, Rational(1, f.q));
            t.binom_tab.push_back(cyclo.mul_zeta(num, chi_exp_minus_one(b)));
        }
    }
    return t;
}

/// J(l_1, ..., l_k) by the forward recursion
///   J(l_1..l_j) = J(l_1..l_{j-1}) * J(l_1...l_{j-1} product, l_j)
///               + l_{j-1}(-1) (q-1) [l_1...l_{j-1} = eps] J(l_1..l_{j-2}),
/// which repairs the naive telescoping product on character tuples whose
/// prefix product degenerates to the trivial character.
inline zc::ZVec multi_jacobi_recursive(const CycloCtx& cyclo, const BinomialTable& table,
                                       const std::vector<Character>& lams) {
    if (lams.empty()) throw std::domain_error("multi_jacobi_recursive: need k >= 1");
    const FieldCtx& f = *lams[0].field;
    zc::ZVec prev = zc::zero(cyclo); // J over zero characters: unused sentinel
    zc::ZVec cur = zc::one(cyclo);   // J(l_1) = l_1(1) = 1
    std::uint32_t lam_prod = lams[0].j;
    for (std::size_t j = 1; j < lams.size(); ++j) {
        zc::ZVec next = zc::mul(cyclo, cur, table.j_at(lam_prod, lams[j].j));
        if (j >= 2 && lam_prod == 0) {
            // correction: l_{j-1}(-1) (q-1) J(l_1..l_{j-2})
            std::uint32_t sgn = chi_exp_minus_one(lams[j - 1]);
            zc::ZVec corr = zc::mul_zeta(cyclo, prev, sgn);
            zc::add_scaled_into(next, corr, static_cast<std::int64_t>(f.q) - 1);
        }
        prev = std::move(cur);
        cur = std::move(next);
        lam_prod = (lam_prod + lams[j].j) % f.order();
    }
    return cur;
}

} // namespace ffhyper
