#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffhyper/char_sums.hpp"
#include "ffhyper/characters.hpp"
#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/hypergeometric.hpp"
#include "ffhyper/mirror.hpp"

namespace ffhyper {

enum class IdentityId {
    reduction_split,
    reduction_cov1,
    reduction_cov2,
    eps_reduction,
    equal_reduction,
    genfunc_forward,
    genfunc_reversed,
    genfunc_local,
    route_equivalence,
};

inline const char* to_string(IdentityId id) {
    switch (id) {
        case IdentityId::reduction_split: return "reduction_split";
        case IdentityId::reduction_cov1: return "reduction_cov1";
        case IdentityId::reduction_cov2: return "reduction_cov2";
        case IdentityId::eps_reduction: return "eps_reduction";
        case IdentityId::equal_reduction: return "equal_reduction";
        case IdentityId::genfunc_forward: return "genfunc_forward";
        case IdentityId::genfunc_reversed: return "genfunc_reversed";
        case IdentityId::genfunc_local: return "genfunc_local";
        case IdentityId::route_equivalence: return "route_equivalence";
    }
    return "?";
}

inline std::optional<IdentityId> parse_identity(const std::string& s) {
    for (IdentityId id :
         {IdentityId::reduction_split, IdentityId::reduction_cov1, IdentityId::reduction_cov2,
          IdentityId::eps_reduction, IdentityId::equal_reduction, IdentityId::genfunc_forward,
          IdentityId::genfunc_reversed, IdentityId::genfunc_local,
          IdentityId::route_equivalence})
        if (s == to_string(id)) return id;
    return std::nullopt;
}

/// Outcome of one identity check: both sides, exact verdict, float-mirror
/// values and the exact/float consistency gap (q^n-rescaled).
struct VerificationReport {
    IdentityId identity{};
    std::uint32_t q = 0;
    std::uint32_t n = 0;
    std::uint32_t A = 0;
    std::vector<std::uint32_t> Bs, Cs;
    std::vector<Elem> xs;
    std::optional<std::uint32_t> k, l;
    std::optional<Elem> t;
    CycloNum lhs, rhs;
    bool equal = false;
    std::complex<double> lhs_mirror{}, rhs_mirror{};
    double mirror_gap = 0.0;
    double exact_float_gap = 0.0;
    std::int64_t elapsed_us = 0;
};

/// Immutable evaluation bundle shared by all verifiers.
struct VerifyContext {
    const FieldCtx& field;
    const CycloCtx& cyclo;
    const BinomialTable* table = nullptr;
};

namespace valg {

/// Exact algebra: CycloNum values, direct-route series.
struct Exact {
    const CycloCtx& cy;
    const FieldCtx& f;
    const BinomialTable* tb;
    using V = CycloNum;

    V zero() const { return cy.zero(); }
    V one() const { return cy.one(); }
    V chiv(const Character& ch, Elem x) const {
        std::int64_t e = chi_exp(ch, x);
        return e < 0 ? cy.zero() : cy.root_of_unity(e);
    }
    V binomv(const Character& a, const Character& b) const {
        if (tb) return tb->at(a.j, b.j);
        return binom(cy, a, b);
    }
    V series(const Character& A, const std::vector<Character>& Bs,
             const std::vector<Character>& Cs, const std::vector<Elem>& xs) const {
        return series_shifted(cy, f, A, Bs, Cs, xs, f.one());
    }
    V shifted(const Character& A, const std::vector<Character>& Bs,
              const std::vector<Character>& Cs, const std::vector<Elem>& xs, Elem c) const {
        return series_shifted(cy, f, A, Bs, Cs, xs, c);
    }
    V slice(const std::vector<Character>& Bs, const std::vector<Character>& Cs,
            const std::vector<Elem>& xs, Elem target) const {
        return series_slice_sum(cy, f, Bs, Cs, xs, target);
    }
    V mul(const V& a, const V& b) const { return cy.mul(a, b); }
    V add(const V& a, const V& b) const { return cy.add(a, b); }
    V sub(const V& a, const V& b) const { return cy.sub(a, b); }
    V scale(const V& a, const Rational& r) const { return cy.scale(a, r); }
};

/// Float mirror algebra over the same formulas.
struct Mirror {
    const FieldCtx& f;
    using V = std::complex<double>;

    V zero() const { return {0.0, 0.0}; }
    V one() const { return {1.0, 0.0}; }
    V chiv(const Character& ch, Elem x) const { return mirror::chi(ch, x); }
    V binomv(const Character& a, const Character& b) const { return mirror::binom(f, a.j, b.j); }
    V series(const Character& A, const std::vector<Character>& Bs,
             const std::vector<Character>& Cs, const std::vector<Elem>& xs) const {
        return mirror::lauricella(f, A, Bs, Cs, xs);
    }
    V shifted(const Character& A, const std::vector<Character>& Bs,
              const std::vector<Character>& Cs, const std::vector<Elem>& xs, Elem c) const {
        return mirror::series_shifted(f, A, Bs, Cs, xs, c);
    }
    V slice(const std::vector<Character>& Bs, const std::vector<Character>& Cs,
            const std::vector<Elem>& xs, Elem target) const {
        return mirror::slice_sum(f, Bs, Cs, xs, target);
    }
    V mul(const V& a, const V& b) const { return a * b; }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V scale(const V& a, const Rational& r) const { return a * r.to_double(); }
};

} // namespace valg

namespace detail {

template <class T>
std::vector<T> drop_index(const std::vector<T>& v, std::uint32_t k) {
    std::vector<T> out;
    out.reserve(v.size() - 1);
    for (std::uint32_t i = 0; i < v.size(); ++i)
        if (i != k) out.push_back(v[i]);
    return out;
}

template <class Alg>
struct Sides {
    typename Alg::V lhs, rhs;
};

/// P-term shared by the first two reduction theorems: the x_k t_k = 1 slice
/// collapses to an (n-1)-variable series with slot l replaced by
/// (B_lbar C_l ; C_l) at argument 1 and the other arguments -x_i/x_l.
template <class Alg>
typename Alg::V reduction_p_term(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                 std::uint32_t k, std::uint32_t l) {
    Character bk = p.Bs[k], ck = p.Cs[k], cl = p.Cs[l];
    Elem xk = p.xs[k], xl = p.xs[l];
    auto Bs2 = drop_index(p.Bs, k);
    auto Cs2 = drop_index(p.Cs, k);
    std::vector<Elem> xs2;
    std::uint32_t lpos = 0;
    for (std::uint32_t i = 0, o = 0; i < p.n(); ++i) {
        if (i == k) continue;
        if (i == l) {
            lpos = o;
            xs2.push_back(f.one());
        } else {
            xs2.push_back(f.mul(f.neg(p.xs[i]), f.inv(xl)));
        }
        ++o;
    }
    Bs2[lpos] = char_mul(char_inv(p.Bs[l]), cl);

    auto v = a.chiv(char_mul(bk, ck), f.scalar(-1));
    v = a.mul(v, a.chiv(char_mul(char_inv(bk), ck), f.sub(xk, f.one())));
    v = a.mul(v, a.chiv(char_inv(ck), xk));
    v = a.mul(v, a.chiv(char_inv(p.A), f.neg(xl)));
    v = a.mul(v, a.chiv(cl, f.scalar(-1)));
    v = a.mul(v, a.series(p.A, Bs2, Cs2, xs2));
    return a.scale(v, Rational(1, f.q));
}

template <class Alg>
Sides<Alg> sides_reduction_split(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                 std::uint32_t k, std::uint32_t l) {
    Sides<Alg> s{a.series(p.A, p.Bs, p.Cs, p.xs), a.zero()};
    typename Alg::V rhs = reduction_p_term(a, f, p, k, l);
    if (p.xs[k] != 0) { // eps(x_k) guard on the Q term
        Character bk = p.Bs[k], ck = p.Cs[k];
        Character bbc = char_mul(char_inv(bk), ck);
        auto Bs2 = drop_index(p.Bs, k);
        auto Cs2 = drop_index(p.Cs, k);
        Elem xk = p.xs[k];
        typename Alg::V q_term = a.zero();
        for (Elem tk = 0; tk < f.q; ++tk) {
            if (xk != 0 && f.mul(xk, tk) == f.one()) continue; // t_k != x_k^{-1}
            Elem den = f.sub(f.one(), f.mul(xk, tk));
            auto w = a.chiv(bk, tk);
            w = a.mul(w, a.chiv(bbc, f.sub(f.one(), tk)));
            w = a.mul(w, a.chiv(char_inv(p.A), den));
            std::vector<Elem> xs2;
            for (std::uint32_t i = 0; i < p.n(); ++i)
                if (i != k) xs2.push_back(f.div(p.xs[i], den));
            q_term = a.add(q_term, a.mul(w, a.series(p.A, Bs2, Cs2, xs2)));
        }
        q_term = a.mul(q_term, a.chiv(char_mul(bk, ck), f.scalar(-1)));
        rhs = a.add(rhs, a.scale(q_term, Rational(1, f.q)));
    }
    s.rhs = rhs;
    return s;
}

template <class Alg>
Sides<Alg> sides_reduction_cov1(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                std::uint32_t k, std::uint32_t l) {
    Sides<Alg> s{a.series(p.A, p.Bs, p.Cs, p.xs), a.zero()};
    typename Alg::V rhs = reduction_p_term(a, f, p, k, l);
    Character bk = p.Bs[k], ck = p.Cs[k];
    Character acbar = char_mul(p.A, char_inv(ck));
    Character bbc = char_mul(char_inv(bk), ck);
    auto Bs2 = drop_index(p.Bs, k);
    auto Cs2 = drop_index(p.Cs, k);
    Elem xk = p.xs[k];
    typename Alg::V q_term = a.zero();
    for (Elem tk = 0; tk < f.q; ++tk) {
        auto w = a.chiv(acbar, tk);
        w = a.mul(w, a.chiv(bk, f.sub(tk, f.one())));
        w = a.mul(w, a.chiv(bbc, f.add(f.sub(f.one(), tk), f.mul(xk, tk))));
        std::vector<Elem> xs2;
        for (std::uint32_t i = 0; i < p.n(); ++i)
            if (i != k) xs2.push_back(f.mul(p.xs[i], tk));
        q_term = a.add(q_term, a.mul(w, a.series(p.A, Bs2, Cs2, xs2)));
    }
    q_term = a.mul(q_term, a.chiv(char_mul(bk, ck), f.scalar(-1)));
    q_term = a.mul(q_term, a.chiv(char_inv(ck), xk));
    s.rhs = a.add(rhs, a.scale(q_term, Rational(1, f.q)));
    return s;
}

template <class Alg>
Sides<Alg> sides_reduction_cov2(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                std::uint32_t k, std::uint32_t l, Elem t) {
    // lhs arguments: slot k carries 1 - t/x_k, the others x_i t
    std::vector<Elem> zs(p.n());
    for (std::uint32_t i = 0; i < p.n(); ++i)
        zs[i] = (i == k) ? f.sub(f.one(), f.div(t, p.xs[k])) : f.mul(p.xs[i], t);
    Sides<Alg> s{a.series(p.A, p.Bs, p.Cs, zs), a.zero()};

    Character bk = p.Bs[k], ck = p.Cs[k], cl = p.Cs[l];
    Elem xk = p.xs[k], xl = p.xs[l];

    // P term with the derived prefactor (A bar C_l)(-1)/q * Abar(x_l t) *
    // B_k(x_k) * C_kbar(x_k - t) * (B_kbar C_k)(t), arguments -x_i/x_l, 1 at l
    auto Bs2 = drop_index(p.Bs, k);
    auto Cs2 = drop_index(p.Cs, k);
    std::vector<Elem> xs2;
    std::uint32_t lpos = 0;
    for (std::uint32_t i = 0, o = 0; i < p.n(); ++i) {
        if (i == k) continue;
        if (i == l) {
            lpos = o;
            xs2.push_back(f.one());
        } else {
            xs2.push_back(f.mul(f.neg(p.xs[i]), f.inv(xl)));
        }
        ++o;
    }
    Bs2[lpos] = char_mul(char_inv(p.Bs[l]), cl);
    auto pterm = a.chiv(char_mul(char_inv(p.A), cl), f.scalar(-1));
    pterm = a.mul(pterm, a.chiv(char_inv(p.A), f.mul(xl, t)));
    pterm = a.mul(pterm, a.chiv(bk, xk));
    pterm = a.mul(pterm, a.chiv(char_inv(ck), f.sub(xk, t)));
    pterm = a.mul(pterm, a.chiv(char_mul(char_inv(bk), ck), t));
    pterm = a.mul(pterm, a.series(p.A, Bs2, Cs2, xs2));
    typename Alg::V rhs = a.scale(pterm, Rational(1, f.q));

    Character acbar = char_mul(p.A, char_inv(ck));
    Character bbc = char_mul(char_inv(bk), ck);
    auto Bs3 = drop_index(p.Bs, k);
    auto Cs3 = drop_index(p.Cs, k);
    typename Alg::V q_term = a.zero();
    for (Elem tk = 0; tk < f.q; ++tk) {
        auto w = a.chiv(acbar, tk);
        w = a.mul(w, a.chiv(bk, f.sub(tk, t)));
        w = a.mul(w, a.chiv(bbc, f.sub(xk, tk)));
        std::vector<Elem> xs3;
        for (std::uint32_t i = 0; i < p.n(); ++i)
            if (i != k) xs3.push_back(f.mul(p.xs[i], tk));
        q_term = a.add(q_term, a.mul(w, a.series(p.A, Bs3, Cs3, xs3)));
    }
    q_term = a.mul(q_term, a.chiv(char_mul(bk, ck), f.scalar(-1)));
    q_term = a.mul(q_term, a.chiv(char_inv(ck), f.sub(xk, t)));
    q_term = a.mul(q_term, a.chiv(bk, xk));
    q_term = a.mul(q_term, a.chiv(char_mul(char_inv(p.A), bbc), t));
    s.rhs = a.add(rhs, a.scale(q_term, Rational(1, f.q)));
    return s;
}

/// eps-slot reduction (B_k = eps, x_k != 1). The first term carries the
/// binom(C_k, A) Jacobi prefactor; a slice term activates when C_k = A.
template <class Alg>
Sides<Alg> sides_eps_reduction(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                               std::uint32_t k) {
    Sides<Alg> s{a.series(p.A, p.Bs, p.Cs, p.xs), a.zero()};
    Elem xk = p.xs[k];
    if (xk == 0) return s; // eps(x_k): both sides vanish
    Character ck = p.Cs[k];
    auto Bs2 = drop_index(p.Bs, k);
    auto Cs2 = drop_index(p.Cs, k);
    auto xs_plain = drop_index(p.xs, k);
    Elem omx = f.sub(f.one(), xk);
    std::vector<Elem> xs_scaled;
    for (Elem x : xs_plain) xs_scaled.push_back(f.div(x, omx));

    auto t1 = a.chiv(p.A, f.scalar(-1));
    t1 = a.mul(t1, a.binomv(ck, p.A));
    t1 = a.mul(t1, a.chiv(char_inv(ck), xk));
    t1 = a.mul(t1, a.chiv(char_mul(ck, char_inv(p.A)), omx));
    t1 = a.mul(t1, a.series(char_mul(p.A, char_inv(ck)), Bs2, Cs2, xs_scaled));
    typename Alg::V rhs = t1;

    if (ck.j == p.A.j) {
        auto t2 = a.chiv(ck, f.scalar(-1));
        t2 = a.mul(t2, a.chiv(char_inv(ck), xk));
        t2 = a.mul(t2, a.slice(Bs2, Cs2, xs_plain, omx));
        rhs = a.add(rhs, a.scale(t2, Rational(f.q - 1, f.q)));
    }

    auto t3 = a.chiv(ck, f.scalar(-1));
    t3 = a.mul(t3, a.series(p.A, Bs2, Cs2, xs_plain));
    s.rhs = a.sub(rhs, a.scale(t3, Rational(1, f.q)));
    return s;
}

/// equal-slot reduction (C_k = B_k, x_k notin {0,1}).
template <class Alg>
Sides<Alg> sides_equal_reduction(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                 std::uint32_t k) {
    Sides<Alg> s{a.series(p.A, p.Bs, p.Cs, p.xs), a.zero()};
    Character bk = p.Bs[k];
    Elem xk = p.xs[k];
    auto Bs2 = drop_index(p.Bs, k);
    auto Cs2 = drop_index(p.Cs, k);
    auto xs_plain = drop_index(p.xs, k);
    Elem omx = f.sub(f.one(), xk);
    std::vector<Elem> xs_scaled;
    for (Elem x : xs_plain) xs_scaled.push_back(f.div(x, omx));

    auto t1 = a.chiv(char_inv(bk), xk);
    t1 = a.mul(t1, a.chiv(p.A, f.scalar(-1)));
    t1 = a.mul(t1, a.binomv(bk, p.A));
    t1 = a.mul(t1, a.series(char_mul(p.A, char_inv(bk)), Bs2, Cs2, xs_plain));
    typename Alg::V rhs = t1;

    if (bk.j == p.A.j) {
        auto t2 = a.chiv(char_inv(p.A), f.scalar(-1));
        t2 = a.mul(t2, a.chiv(char_inv(bk), xk));
        t2 = a.mul(t2, a.slice(Bs2, Cs2, xs_plain, f.one()));
        rhs = a.add(rhs, a.scale(t2, Rational(f.q - 1, f.q)));
    }

    auto t3 = a.chiv(char_inv(p.A), omx);
    t3 = a.mul(t3, a.series(p.A, Bs2, Cs2, xs_scaled));
    s.rhs = a.sub(rhs, a.scale(t3, Rational(1, f.q)));
    return s;
}

template <class Alg>
Sides<Alg> sides_genfunc_forward(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                 Elem t) {
    const std::uint32_t m = f.order();
    typename Alg::V lhs = a.zero();
    for (std::uint32_t th = 0; th < m; ++th) {
        Character theta{&f, th};
        auto term = a.binomv(char_mul(p.A, theta), theta);
        term = a.mul(term, a.series(char_mul(p.A, theta), p.Bs, p.Cs, p.xs));
        term = a.mul(term, a.chiv(theta, t));
        lhs = a.add(lhs, term);
    }
    lhs = a.scale(lhs, Rational(f.q, m));

    Elem omt = f.sub(f.one(), t);
    std::vector<Elem> xs2;
    for (Elem x : p.xs) xs2.push_back(f.div(x, omt));
    auto main = a.mul(a.chiv(char_inv(p.A), omt), a.series(p.A, p.Bs, p.Cs, xs2));
    auto corr = a.mul(a.chiv(char_inv(p.A), f.neg(t)),
                      a.slice(p.Bs, p.Cs, p.xs, f.one()));
    return {lhs, a.sub(main, corr)};
}

template <class Alg>
Sides<Alg> sides_genfunc_reversed(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                                  Elem t) {
    const std::uint32_t m = f.order();
    typename Alg::V lhs = a.zero();
    for (std::uint32_t th = 0; th < m; ++th) {
        Character theta{&f, th};
        auto term = a.binomv(char_mul(p.A, theta), theta);
        term = a.mul(term, a.series(char_inv(theta), p.Bs, p.Cs, p.xs));
        term = a.mul(term, a.chiv(theta, t));
        lhs = a.add(lhs, term);
    }
    lhs = a.scale(lhs, Rational(f.q, m));

    Elem omt = f.sub(f.one(), t);
    std::vector<Elem> xs2;
    for (Elem x : p.xs) xs2.push_back(f.div(f.neg(f.mul(x, t)), omt));
    auto main = a.mul(a.chiv(char_inv(p.A), omt), a.series(p.A, p.Bs, p.Cs, xs2));
    auto corr = a.slice(p.Bs, p.Cs, p.xs, f.one());
    return {lhs, a.sub(main, corr)};
}

template <class Alg>
Sides<Alg> sides_genfunc_local(const Alg& a, const FieldCtx& f, const SeriesParams& p,
                               std::uint32_t k, Elem t) {
    const std::uint32_t m = f.order();
    Character bk = p.Bs[k], ck = p.Cs[k];
    typename Alg::V lhs = a.zero();
    for (std::uint32_t th = 0; th < m; ++th) {
        Character theta{&f, th};
        auto Bs2 = p.Bs;
        Bs2[k] = char_mul(bk, theta);
        auto term = a.binomv(char_mul(char_mul(bk, char_inv(ck)), theta), theta);
        term = a.mul(term, a.series(p.A, Bs2, p.Cs, p.xs));
        term = a.mul(term, a.chiv(theta, t));
        lhs = a.add(lhs, term);
    }
    lhs = a.scale(lhs, Rational(f.q, m));

    Elem omt = f.sub(f.one(), t);
    std::vector<Elem> xs2 = p.xs;
    xs2[k] = f.div(p.xs[k], omt);
    typename Alg::V inner = a.series(p.A, p.Bs, p.Cs, xs2);
    if (p.xs[k] != 0) {
        // the tau = 1 - t term of slot k, excluded from the theta-sum side
        auto excl = a.chiv(char_mul(bk, ck), f.scalar(-1));
        excl = a.mul(excl, a.chiv(bk, omt));
        excl = a.mul(excl, a.chiv(char_mul(char_inv(bk), ck), t));
        excl = a.mul(excl, a.shifted(p.A, drop_index(p.Bs, k), drop_index(p.Cs, k),
                                     drop_index(p.xs, k), f.sub(f.one(), p.xs[k])));
        inner = a.sub(inner, a.scale(excl, Rational(1, f.q)));
    }
    return {lhs, a.mul(a.chiv(char_inv(bk), omt), inner)};
}

} // namespace detail

namespace detail {

inline void fill_params(VerificationReport& r, const SeriesParams& p) {
    r.q = p.field().q;
    r.n = p.n();
    r.A = p.A.j;
    for (const auto& b : p.Bs) r.Bs.push_back(b.j);
    for (const auto& c : p.Cs) r.Cs.push_back(c.j);
    r.xs = p.xs;
}

template <class ExactFn, class MirrorFn>
VerificationReport run_check(IdentityId id, const VerifyContext& v, const SeriesParams& p,
                             ExactFn&& exact_fn, MirrorFn&& mirror_fn) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    r.identity = id;
    fill_params(r, p);

    valg::Exact ex{v.cyclo, v.field, v.table};
    auto sides = exact_fn(ex);
    r.lhs = sides.lhs;
    r.rhs = sides.rhs;
    r.equal = (sides.lhs == sides.rhs);

    valg::Mirror mi{v.field};
    auto msides = mirror_fn(mi);
    r.lhs_mirror = msides.lhs;
    r.rhs_mirror = msides.rhs;

    double qn = 1.0;
    for (std::uint32_t i = 0; i < r.n; ++i) qn *= v.field.q;
    r.mirror_gap = std::abs(msides.lhs - msides.rhs) * qn;
    double g1 = std::abs(v.cyclo.embed(r.lhs) - msides.lhs) * qn;
    double g2 = std::abs(v.cyclo.embed(r.rhs) - msides.rhs) * qn;
    r.exact_float_gap = g1 > g2 ? g1 : g2;

    r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
}

inline void require_reduction_pre(const SeriesParams& p, std::uint32_t k, std::uint32_t l) {
    p.validate();
    if (p.n() < 2) throw std::domain_error("reduction requires n >= 2");
    if (k >= p.n() || l >= p.n()) throw std::domain_error("slot index out of range");
    if (k == l) throw std::domain_error("reduction requires k != l");
    if (p.xs[l] == 0) throw std::domain_error("reduction requires x_l != 0");
}

} // namespace detail

inline VerificationReport verify_reduction_split(const VerifyContext& v, const SeriesParams& p,
                                                 std::uint32_t k, std::uint32_t l) {
    detail::require_reduction_pre(p, k, l);
    auto r = detail::run_check(
        IdentityId::reduction_split, v, p,
        [&](valg::Exact& a) { return detail::sides_reduction_split(a, v.field, p, k, l); },
        [&](valg::Mirror& a) { return detail::sides_reduction_split(a, v.field, p, k, l); });
    r.k = k;
    r.l = l;
    return r;
}

inline VerificationReport verify_reduction_cov1(const VerifyContext& v, const SeriesParams& p,
                                                std::uint32_t k, std::uint32_t l) {
    detail::require_reduction_pre(p, k, l);
    auto r = detail::run_check(
        IdentityId::reduction_cov1, v, p,
        [&](valg::Exact& a) { return detail::sides_reduction_cov1(a, v.field, p, k, l); },
        [&](valg::Mirror& a) { return detail::sides_reduction_cov1(a, v.field, p, k, l); });
    r.k = k;
    r.l = l;
    return r;
}

inline VerificationReport verify_reduction_cov2(const VerifyContext& v, const SeriesParams& p,
                                                std::uint32_t k, std::uint32_t l, Elem t) {
    detail::require_reduction_pre(p, k, l);
    if (p.xs[k] == 0)
        throw std::domain_error("cov2 requires x_k != 0 (slot argument 1 - t/x_k)");
    if (!p.field().contains(t)) throw std::domain_error("cov2: t out of field range");
    auto r = detail::run_check(
        IdentityId::reduction_cov2, v, p,
        [&](valg::Exact& a) { return detail::sides_reduction_cov2(a, v.field, p, k, l, t); },
        [&](valg::Mirror& a) { return detail::sides_reduction_cov2(a, v.field, p, k, l, t); });
    r.k = k;
    r.l = l;
    r.t = t;
    return r;
}

inline VerificationReport verify_eps_reduction(const VerifyContext& v, const SeriesParams& p,
                                               std::uint32_t k) {
    p.validate();
    if (p.n() < 2) throw std::domain_error("eps reduction requires n >= 2");
    if (k >= p.n()) throw std::domain_error("slot index out of range");
    if (!p.Bs[k].is_trivial()) throw std::domain_error("eps reduction requires B_k = eps");
    if (p.xs[k] == p.field().one()) throw std::domain_error("eps reduction requires x_k != 1");
    auto r = detail::run_check(
        IdentityId::eps_reduction, v, p,
        [&](valg::Exact& a) { return detail::sides_eps_reduction(a, v.field, p, k); },
        [&](valg::Mirror& a) { return detail::sides_eps_reduction(a, v.field, p, k); });
    r.k = k;
    return r;
}

inline VerificationReport verify_equal_reduction(const VerifyContext& v, const SeriesParams& p,
                                                 std::uint32_t k) {
    p.validate();
    if (p.n() < 2) throw std::domain_error("equal reduction requires n >= 2");
    if (k >= p.n()) throw std::domain_error("slot index out of range");
    if (p.Cs[k].j != p.Bs[k].j)
        throw std::domain_error("equal reduction requires C_k = B_k");
    if (p.xs[k] == 0 || p.xs[k] == p.field().one())
        throw std::domain_error("equal reduction requires x_k notin {0,1}");
    auto r = detail::run_check(
        IdentityId::equal_reduction, v, p,
        [&](valg::Exact& a) { return detail::sides_equal_reduction(a, v.field, p, k); },
        [&](valg::Mirror& a) { return detail::sides_equal_reduction(a, v.field, p, k); });
    r.k = k;
    return r;
}

namespace detail {
inline void require_t_pre(const SeriesParams& p, Elem t) {
    p.validate();
    if (!p.field().contains(t) || t == 0 || t == p.field().one())
        throw std::domain_error("generating identity requires t in F_q^x \\ {1}");
}
} // namespace detail

inline VerificationReport verify_genfunc_forward(const VerifyContext& v, const SeriesParams& p,
                                                 Elem t) {
    detail::require_t_pre(p, t);
    auto r = detail::run_check(
        IdentityId::genfunc_forward, v, p,
        [&](valg::Exact& a) { return detail::sides_genfunc_forward(a, v.field, p, t); },
        [&](valg::Mirror& a) { return detail::sides_genfunc_forward(a, v.field, p, t); });
    r.t = t;
    return r;
}

inline VerificationReport verify_genfunc_reversed(const VerifyContext& v, const SeriesParams& p,
                                                  Elem t) {
    detail::require_t_pre(p, t);
    auto r = detail::run_check(
        IdentityId::genfunc_reversed, v, p,
        [&](valg::Exact& a) { return detail::sides_genfunc_reversed(a, v.field, p, t); },
        [&](valg::Mirror& a) { return detail::sides_genfunc_reversed(a, v.field, p, t); });
    r.t = t;
    return r;
}

inline VerificationReport verify_genfunc_local(const VerifyContext& v, const SeriesParams& p,
                                               std::uint32_t k, Elem t) {
    detail::require_t_pre(p, t);
    if (k >= p.n()) throw std::domain_error("slot index out of range");
    auto r = detail::run_check(
        IdentityId::genfunc_local, v, p,
        [&](valg::Exact& a) { return detail::sides_genfunc_local(a, v.field, p, k, t); },
        [&](valg::Mirror& a) { return detail::sides_genfunc_local(a, v.field, p, k, t); });
    r.k = k;
    r.t = t;
    return r;
}

/// Cross-route check: Definition point sum vs character-sum expansion.
inline VerificationReport verify_route_equivalence(const VerifyContext& v,
                                                   const SeriesParams& p) {
    p.validate();
    if (v.table == nullptr)
        throw std::domain_error("route_equivalence requires a binomial table");
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    r.identity = IdentityId::route_equivalence;
    detail::fill_params(r, p);
    r.lhs = lauricella_direct(v.cyclo, p);
    r.rhs = lauricella_charsum(v.cyclo, *v.table, p);
    r.equal = (r.lhs == r.rhs);
    r.lhs_mirror = mirror::lauricella(v.field, p.A, p.Bs, p.Cs, p.xs);
    r.rhs_mirror = r.lhs_mirror;
    double qn = 1.0;
    for (std::uint32_t i = 0; i < r.n; ++i) qn *= v.field.q;
    r.mirror_gap = 0.0;
    double g1 = std::abs(v.cyclo.embed(r.lhs) - r.lhs_mirror) * qn;
    double g2 = std::abs(v.cyclo.embed(r.rhs) - r.rhs_mirror) * qn;
    r.exact_float_gap = g1 > g2 ? g1 : g2;
    r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
}

} // namespace ffhyper
