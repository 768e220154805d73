#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ffhyper/characters.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper::mirror {

/// Double-precision mirror of the exact evaluators. Deliberately written as
/// plain complex loops over the defining sums, independent of the cyclotomic
/// machinery, so exact/float agreement is a genuine cross-check.
using C = std::complex<double>;

inline C root(const FieldCtx& f, std::uint64_t e) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e % f.order()) /
                               static_cast<double>(f.order()));
}

inline C chi(const FieldCtx& f, std::uint32_t j, Elem x) {
    if (x == 0) return C(0.0, 0.0);
    return root(f, static_cast<std::uint64_t>(j) * f.dlog_t[x]);
}

inline C chi(const Character& ch, Elem x) { return chi(*ch.field, ch.j, x); }

inline C jacobi(const FieldCtx& f, std::uint32_t a, std::uint32_t b) {
    C acc(0.0, 0.0);
    for (Elem x = 1; x < f.q; ++x) {
        Elem y = f.sub(f.one(), x);
        if (y == 0) continue;
        acc += root(f, static_cast<std::uint64_t>(a) * f.dlog_t[x] +
                           static_cast<std::uint64_t>(b) * f.dlog_t[y]);
    }
    return acc;
}

inline C binom(const FieldCtx& f, std::uint32_t a, std::uint32_t b) {
    std::uint32_t bbar = (f.order() - b) % f.order();
    return chi(f, b, f.scalar(-1)) / static_cast<double>(f.q) * jacobi(f, a, bbar);
}

/// sum over tuples of prod_i [eps(x_i) B_iC_i(-1)/q B_i(t_i)(B_ibar C_i)(1-t_i)]
/// times Abar(c - sum x_i t_i).
inline C series_shifted(const FieldCtx& f, const Character& A,
                        const std::vector<Character>& Bs, const std::vector<Character>& Cs,
                        const std::vector<Elem>& xs, Elem c) {
    const std::size_t n = Bs.size();
    for (Elem x : xs)
        if (x == 0) return C(0.0, 0.0);
    C pref(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        pref *= chi(char_mul(Bs[i], Cs[i]), f.scalar(-1)) / static_cast<double>(f.q);
    std::uint32_t abar = (f.order() - A.j) % f.order();

    C acc(0.0, 0.0);
    std::vector<Elem> t(n, 0);
    while (true) {
        C term(1.0, 0.0);
        Elem s = 0;
        bool dead = false;
        for (std::size_t i = 0; i < n; ++i) {
            Elem omt = f.sub(f.one(), t[i]);
            if (t[i] == 0 || omt == 0) { dead = true; break; }
            term *= chi(Bs[i], t[i]) * chi(char_mul(char_inv(Bs[i]), Cs[i]), omt);
            s = f.add(s, f.mul(xs[i], t[i]));
        }
        if (!dead) {
            Elem u = f.sub(c, s);
            if (u != 0) acc += term * chi(f, abar, u);
        }
        if (n == 0) break;
        std::size_t pos = 0;
        while (pos < n && ++t[pos] == f.q) t[pos++] = 0;
        if (pos == n) break;
    }
    return pref * acc;
}

inline C lauricella(const FieldCtx& f, const Character& A, const std::vector<Character>& Bs,
                    const std::vector<Character>& Cs, const std::vector<Elem>& xs) {
    return series_shifted(f, A, Bs, Cs, xs, f.one());
}

inline C slice_sum(const FieldCtx& f, const std::vector<Character>& Bs,
                   const std::vector<Character>& Cs, const std::vector<Elem>& xs,
                   Elem target) {
    const std::size_t n = Bs.size();
    for (Elem x : xs)
        if (x == 0) return C(0.0, 0.0);
    C pref(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        pref *= chi(char_mul(Bs[i], Cs[i]), f.scalar(-1)) / static_cast<double>(f.q);

    C acc(0.0, 0.0);
    std::vector<Elem> t(n, 0);
    while (true) {
        C term(1.0, 0.0);
        Elem s = 0;
        bool dead = false;
        for (std::size_t i = 0; i < n; ++i) {
            Elem omt = f.sub(f.one(), t[i]);
            if (t[i] == 0 || omt == 0) { dead = true; break; }
            term *= chi(Bs[i], t[i]) * chi(char_mul(char_inv(Bs[i]), Cs[i]), omt);
            s = f.add(s, f.mul(xs[i], t[i]));
        }
        if (!dead && s == target) acc += term;
        if (n == 0) break;
        std::size_t pos = 0;
        while (pos < n && ++t[pos] == f.q) t[pos++] = 0;
        if (pos == n) break;
    }
    return pref * acc;
}

} // namespace ffhyper::mirror
