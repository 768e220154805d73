#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffhyper/char_sums.hpp"
#include "ffhyper/characters.hpp"
#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/errors.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper {

/// Parameter pack (A; B_1..B_n; C_1..C_n; x_1..x_n) for F_A^(n).
struct SeriesParams {
    Character A;
    std::vector<Character> Bs;
    std::vector<Character> Cs;
    std::vector<Elem> xs;

    std::uint32_t n() const { return static_cast<std::uint32_t>(Bs.size()); }
    const FieldCtx& field() const { return *A.field; }

    void validate() const {
        if (Bs.empty() || Bs.size() != Cs.size() || Bs.size() != xs.size())
            throw std::domain_error("SeriesParams: B, C, x must have equal length n >= 1");
        for (const auto& b : Bs) require_same_field(b, *A.field);
        for (const auto& c : Cs) require_same_field(c, *A.field);
        for (Elem x : xs)
            if (!A.field->contains(x))
                throw std::domain_error("SeriesParams: argument out of field range");
    }
};

enum class Route { direct, charsum };

namespace detail {

/// Per-slot weight w_i(t) = B_i(t) * (B_ibar C_i)(1 - t): live t values with
/// their zeta exponents, plus the matching products x_i * t.
struct SlotTable {
    std::vector<std::uint32_t> wexp;
    std::vector<Elem> xt;
};

inline SlotTable build_slot(const FieldCtx& f, const Character& B, const Character& C,
                            Elem x) {
    SlotTable s;
    Character bc = char_mul(char_inv(B), C);
    for (Elem t = 1; t < f.q; ++t) {
        Elem omt = f.sub(f.one(), t);
        if (omt == 0) continue;
        std::uint64_t e = (static_cast<std::uint64_t>(B.j) * f.dlog_t[t] +
                           static_cast<std::uint64_t>(bc.j) * f.dlog_t[omt]) %
                          f.order();
        s.wexp.push_back(static_cast<std::uint32_t>(e));
        s.xt.push_back(f.mul(x, t));
    }
    return s;
}

struct PointSumSpec {
    const Character* A = nullptr; // null: slice mode (indicator instead of Abar factor)
    Elem constant = 0;            // c in Abar(c - sum x_i t_i), or the slice target
};

/// Shared exact kernel: sum over tuples of prod w_i(t_i) times either
/// Abar(c - sum x_i t_i) or the indicator [sum x_i t_i == target], with the
/// global normalization prod eps(x_i) (B_iC_i)(-1) / q^n.
inline CycloNum point_sum(const CycloCtx& cyclo, const FieldCtx& f,
                          const std::vector<Character>& Bs, const std::vector<Character>& Cs,
                          const std::vector<Elem>& xs, const PointSumSpec& spec) {
    const std::size_t n = Bs.size();
    std::uint32_t shift = 0;
    std::int64_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (xs[i] == 0) return cyclo.zero(); // eps(x_i) factor
        shift = (shift + chi_exp_minus_one(char_mul(Bs[i], Cs[i]))) % cyclo.m;
        qn = zpoly::checked_mul(qn, f.q);
    }
    std::vector<SlotTable> slots;
    slots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) slots.push_back(build_slot(f, Bs[i], Cs[i], xs[i]));

    const std::uint32_t abar_j = spec.A ? char_inv(*spec.A).j : 0;
    ZetaSum acc(cyclo);
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::uint64_t> eacc(n + 1, 0);
    std::vector<Elem> sacc(n + 1, 0);
    const std::size_t live = n == 0 ? 0 : slots[0].wexp.size();
    if (n > 0 && live == 0) return cyclo.zero();

    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            eacc[i + 1] = (eacc[i] + slots[i].wexp[idx[i]]) % f.order();
            sacc[i + 1] = f.add(sacc[i], slots[i].xt[idx[i]]);
        }
        if (spec.A) {
            Elem u = f.sub(spec.constant, sacc[n]);
            if (u != 0) {
                std::uint64_t e =
                    (eacc[n] + static_cast<std::uint64_t>(abar_j) * f.dlog_t[u]) % f.order();
                acc.add(static_cast<std::uint32_t>(e));
            }
        } else if (sacc[n] == spec.constant) {
            acc.add(static_cast<std::uint32_t>(eacc[n]));
        }
        if (n == 0) break;
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == slots[pos].wexp.size()) idx[pos++] = 0;
        if (pos == n) break;
    }
    return acc.finalize(Rational(1, qn), shift);
}

} // namespace detail

/// Definition route: the n-fold point sum
///   sum_t prod_i [eps(x_i) B_iC_i(-1)/q B_i(t_i) (B_ibar C_i)(1-t_i)] Abar(1 - sum x_i t_i).
inline CycloNum lauricella_direct(const CycloCtx& cyclo, const SeriesParams& p) {
    p.validate();
    detail::PointSumSpec spec;
    spec.A = &p.A;
    spec.constant = p.field().one();
    return detail::point_sum(cyclo, p.field(), p.Bs, p.Cs, p.xs, spec);
}

/// Same weighted sum with the top factor Abar(c - sum x_i t_i); n = 0 is the
/// empty product (value Abar(c)). Used by the reduction/generating verifiers.
inline CycloNum series_shifted(const CycloCtx& cyclo, const FieldCtx& f, const Character& A,
                               const std::vector<Character>& Bs,
                               const std::vector<Character>& Cs, const std::vector<Elem>& xs,
                               Elem c) {
    detail::PointSumSpec spec;
    spec.A = &A;
    spec.constant = c;
    return detail::point_sum(cyclo, f, Bs, Cs, xs, spec);
}

/// sum over tuples with sum x_i t_i == target of the normalized slot weights.
inline CycloNum series_slice_sum(const CycloCtx& cyclo, const FieldCtx& f,
                                 const std::vector<Character>& Bs,
                                 const std::vector<Character>& Cs,
                                 const std::vector<Elem>& xs, Elem target) {
    detail::PointSumSpec spec;
    spec.A = nullptr;
    spec.constant = target;
    return detail::point_sum(cyclo, f, Bs, Cs, xs, spec);
}

/// Character-sum route:
///   F = 1/((q-1)^n q^n) sum over character tuples of
///       J(Abar, chibar_1, ..., chibar_n) prod_i J(B_i chi_i, (C_i chi_i)bar)
///       (C_i chi_i)(-1) chi_i(x_i),
/// the multiple-Jacobi factor evaluated by the collision-corrected forward
/// recursion with prefix state shared along the lexicographic walk: O((q-1)^n)
/// table lookups with O(n) state. The innermost level is collapsed through
/// the precomputed row V(L) = sum_chi J(L, chibar) u_n(chi), and all
/// arithmetic runs in flat preallocated integer slices.
template <unsigned DEG_C>
CycloNum lauricella_charsum_core(const CycloCtx& cyclo, const BinomialTable& table,
                                 const SeriesParams& p) {
    const FieldCtx& f = p.field();
    const std::uint32_t m = f.order();
    const std::uint32_t n = p.n();
    const std::uint32_t deg = DEG_C != 0 ? DEG_C : cyclo.deg;
    std::int64_t scale_den = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (p.xs[i] == 0) return cyclo.zero();
        scale_den = zpoly::checked_mul(scale_den, static_cast<std::int64_t>(m) * f.q);
    }

    thread_local std::vector<std::int64_t> conv_tl, u_tl, V_tl, Usum_tl, tmp_tl, ws_tl;
    conv_tl.assign(2 * deg - 1, 0);
    std::vector<std::int64_t>& conv = conv_tl;
    const std::int64_t* phi = cyclo.phi.data();
    auto mul3 = [&](std::int64_t* dst, const std::int64_t* a, const std::int64_t* b) {
        if constexpr (DEG_C != 0)
            zc::mul_into_fixed<DEG_C>(phi, dst, a, b);
        else
            zc::mul_into(cyclo, dst, a, b, conv.data());
    };
    auto mulacc = [&](std::int64_t* dst, const std::int64_t* a, const std::int64_t* b) {
        if constexpr (DEG_C != 0) {
            zc::mul_acc_fixed<DEG_C>(phi, dst, a, b);
        } else {
            zc::mul_into(cyclo, tmp_tl.data(), a, b, conv.data());
            for (std::uint32_t i = 0; i < deg; ++i)
                dst[i] = zpoly::checked_add(dst[i], tmp_tl[i]);
        }
    };
    auto rotate_into = [&](std::int64_t* dst, const std::int64_t* src, std::uint32_t e) {
        for (std::uint32_t i = 0; i < deg; ++i) dst[i] = 0;
        for (std::uint32_t j = 0; j < deg; ++j) {
            if (src[j] == 0) continue;
            std::uint32_t idx = (j + e) % m;
            if (!cyclo.zeta_pow.empty()) {
                zc::add_scaled_slice(cyclo, dst, cyclo.zeta_pow[idx].data(), src[j]);
            } else {
                auto row = cyclo.power_row(idx);
                zc::add_scaled_slice(cyclo, dst, row.data(), src[j]);
            }
        }
    };

    // u[i*m + c] = (C_i chi_c)(-1) J(B_i chi_c, (C_i chi_c)bar) zeta^{c dlog x_i}
    u_tl.assign(static_cast<std::size_t>(n) * m * deg, 0);
    std::vector<std::int64_t>& u = u_tl;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t xlog = f.dlog_t[p.xs[i]];
        for (std::uint32_t c = 0; c < m; ++c) {
            std::uint32_t bi = (p.Bs[i].j + c) % m;
            std::uint32_t ci = (p.Cs[i].j + c) % m;
            std::uint32_t sh = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(ci) * (m / 2) +
                 static_cast<std::uint64_t>(c) * xlog) %
                m);
            rotate_into(&u[(static_cast<std::size_t>(i) * m + c) * deg],
                        table.j_at(bi, (m - ci) % m).data(), sh);
        }
    }
    const std::int64_t* u_last = &u[static_cast<std::size_t>(n - 1) * m * deg];

    // innermost-level collapse: V(L) = sum_c J(L, cbar) u_n(c), Usum = sum_c u_n(c)
    V_tl.assign(static_cast<std::size_t>(m) * deg, 0);
    Usum_tl.assign(deg, 0);
    tmp_tl.assign(deg, 0);
    std::vector<std::int64_t>& V = V_tl;
    std::vector<std::int64_t>& Usum = Usum_tl;
    for (std::uint32_t c = 0; c < m; ++c) {
        const std::int64_t* uc = u_last + static_cast<std::size_t>(c) * deg;
        for (std::uint32_t i = 0; i < deg; ++i)
            Usum[i] = zpoly::checked_add(Usum[i], uc[i]);
        for (std::uint32_t lam = 0; lam < m; ++lam)
            mulacc(&V[static_cast<std::size_t>(lam) * deg],
                   table.j_at(lam, (m - c) % m).data(), uc);
    }

    // per-depth state: cur[d] = J of the first d+1 lambdas (pointer; depth 1
    // borrows the table row directly since A_1 = 1), uprod[d] = prod of u
    ws_tl.assign(static_cast<std::size_t>(2 * n + 6) * deg, 0);
    std::vector<std::int64_t>& ws = ws_tl;
    auto slice = [&](std::uint32_t i) { return ws.data() + static_cast<std::size_t>(i) * deg; };
    std::vector<const std::int64_t*> cur(n + 1);
    std::vector<const std::int64_t*> uprod(n);
    std::int64_t* one_slice = slice(2 * n + 2);
    one_slice[0] = 1;
    cur[0] = one_slice;
    std::int64_t* acc = slice(2 * n + 3);
    std::int64_t* leaf = slice(2 * n + 4);
    std::int64_t* corr = slice(2 * n + 5);
    std::vector<std::uint32_t> chosen(n, 0);
    const std::int64_t qm1 = static_cast<std::int64_t>(f.q) - 1;
    const std::uint32_t abar = (m - p.A.j) % m;

    // walk depth j = number of outer characters already chosen (0..n-1)
    auto walk = [&](auto&& self, std::uint32_t j, std::uint32_t lam) -> void {
        if (j == n - 1) {
            // sum over the last character: A_n V(lam) + collision term
            mul3(leaf, cur[j], &V[static_cast<std::size_t>(lam) * deg]);
            if (n >= 2 && lam == 0) {
                // collision: lam_n(-1) (q-1) A_{n-1} Usum
                std::uint32_t sgn = static_cast<std::uint32_t>(
                    static_cast<std::uint64_t>(chosen[n - 2]) * (m / 2) % m);
                rotate_into(corr, cur[j - 1], sgn);
                mul3(corr, corr, Usum.data());
                for (std::uint32_t i = 0; i < deg; ++i)
                    leaf[i] = zpoly::checked_add(leaf[i], zpoly::checked_mul(qm1, corr[i]));
            }
            if (j == 0) {
                for (std::uint32_t i = 0; i < deg; ++i)
                    acc[i] = zpoly::checked_add(acc[i], leaf[i]);
            } else {
                mulacc(acc, leaf, uprod[j - 1]);
            }
            return;
        }
        std::int64_t* corr_local = nullptr;
        std::vector<std::int64_t> corr_store;
        if (j >= 1 && lam == 0) {
            corr_store.resize(deg);
            std::uint32_t sgn = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(chosen[j - 1]) * (m / 2) % m);
            rotate_into(corr_store.data(), cur[j - 1], sgn);
            for (auto& v : corr_store) v = zpoly::checked_mul(qm1, v);
            corr_local = corr_store.data();
        }
        std::int64_t* ncur = slice(j + 1);
        std::int64_t* nuprod = slice(n + 1 + j);
        for (std::uint32_t c = 0; c < m; ++c) {
            const std::int64_t* jrow = table.j_at(lam, (m - c) % m).data();
            const std::int64_t* uc = &u[(static_cast<std::size_t>(j) * m + c) * deg];
            if (j == 0 && corr_local == nullptr) {
                cur[1] = jrow; // A_2 = 1 * J(lam_1, lam_2)
                uprod[0] = uc;
            } else {
                mul3(ncur, cur[j], jrow);
                if (corr_local)
                    for (std::uint32_t i = 0; i < deg; ++i)
                        ncur[i] = zpoly::checked_add(ncur[i], corr_local[i]);
                cur[j + 1] = ncur;
                mul3(nuprod, uprod[j - 1], uc);
                uprod[j] = nuprod;
            }
            chosen[j] = c;
            self(self, j + 1, (lam + m - c) % m);
        }
    };
    walk(walk, 0, abar);
    std::vector<Rational> out(deg);
    for (std::uint32_t i = 0; i < deg; ++i) out[i] = Rational(acc[i]) * Rational(1, scale_den);
    return CycloNum(std::move(out));
}

inline CycloNum lauricella_charsum(const CycloCtx& cyclo, const BinomialTable& table,
                                   const SeriesParams& p) {
    p.validate();
    switch (cyclo.deg) {
        case 1: return lauricella_charsum_core<1>(cyclo, table, p);
        case 2: return lauricella_charsum_core<2>(cyclo, table, p);
        case 3: return lauricella_charsum_core<3>(cyclo, table, p);
        case 4: return lauricella_charsum_core<4>(cyclo, table, p);
        case 6: return lauricella_charsum_core<6>(cyclo, table, p);
        case 8: return lauricella_charsum_core<8>(cyclo, table, p);
        case 16: return lauricella_charsum_core<16>(cyclo, table, p);
        default: return lauricella_charsum_core<0>(cyclo, table, p);
    }
}

inline CycloNum lauricella_fa(const CycloCtx& cyclo, const SeriesParams& p, Route route,
                              const BinomialTable* table = nullptr) {
    if (route == Route::direct) return lauricella_direct(cyclo, p);
    if (table != nullptr) return lauricella_charsum(cyclo, *table, p);
    BinomialTable local = build_binom_table(p.field(), cyclo);
    return lauricella_charsum(cyclo, local, p);
}

/// Default route policy: the table route once a table exists and the tuple
/// walk is no bigger than the point sum; the definition sum otherwise.
inline Route pick_route(std::uint32_t n, bool has_table) {
    return (has_table && n >= 2) ? Route::charsum : Route::direct;
}

/// Greene's 2F1. The direct route is its own defining y-sum (independent of
/// the n-variable kernel); the charsum route is the single-character
/// binomial expansion.
inline CycloNum gauss_2f1(const CycloCtx& cyclo, const Character& A, const Character& B,
                          const Character& C, Elem x, Route route,
                          const BinomialTable* table = nullptr) {
    require_same_field(A, B);
    require_same_field(A, C);
    const FieldCtx& f = *A.field;
    if (!f.contains(x)) throw std::domain_error("gauss_2f1: argument out of range");
    if (x == 0) return cyclo.zero();
    const std::uint32_t m = f.order();
    if (route == Route::direct) {
        Character bc = char_mul(char_inv(B), C);
        Character abar = char_inv(A);
        ZetaSum acc(cyclo);
        for (Elem y = 1; y < f.q; ++y) {
            Elem omy = f.sub(f.one(), y);
            Elem oxy = f.sub(f.one(), f.mul(x, y));
            if (omy == 0 || oxy == 0) continue;
            std::uint64_t e = (static_cast<std::uint64_t>(B.j) * f.dlog_t[y] +
                               static_cast<std::uint64_t>(bc.j) * f.dlog_t[omy] +
                               static_cast<std::uint64_t>(abar.j) * f.dlog_t[oxy]) %
                              m;
            acc.add(static_cast<std::uint32_t>(e));
        }
        return acc.finalize(Rational(1, f.q), chi_exp_minus_one(char_mul(B, C)));
    }
    // charsum: q/(q-1) sum_chi binom(A chi, chi) binom(B chi, C chi) chi(x)
    auto binom_of = [&](std::uint32_t i, std::uint32_t j) {
        if (table) return table->at(i, j);
        return binom(cyclo, Character{&f, i}, Character{&f, j});
    };
    CycloNum acc = cyclo.zero();
    std::uint32_t xlog = f.dlog_t[x];
    for (std::uint32_t c = 0; c < m; ++c) {
        CycloNum term = cyclo.mul(binom_of((A.j + c) % m, c), binom_of((B.j + c) % m, (C.j + c) % m));
        term = cyclo.mul_zeta(term, static_cast<std::uint64_t>(c) * xlog % m);
        acc = cyclo.add(acc, term);
    }
    return cyclo.scale(acc, Rational(f.q, m));
}

/// Greene's n+1Fn character sum:
///   q/(q-1) sum_chi binom(A_0 chi, chi) prod_i binom(A_i chi, B_i chi) chi(x).
inline CycloNum hyper_np1_fn(const CycloCtx& cyclo, const Character& A0,
                             const std::vector<Character>& As,
                             const std::vector<Character>& Bs, Elem x,
                             const BinomialTable* table = nullptr) {
    if (As.size() != Bs.size() || As.empty())
        throw std::domain_error("hyper_np1_fn: need n >= 1 upper/lower pairs");
    const FieldCtx& f = *A0.field;
    for (const auto& a : As) require_same_field(a, f);
    for (const auto& b : Bs) require_same_field(b, f);
    if (!f.contains(x)) throw std::domain_error("hyper_np1_fn: argument out of range");
    if (x == 0) return cyclo.zero();
    const std::uint32_t m = f.order();
    auto binom_of = [&](std::uint32_t i, std::uint32_t j) {
        if (table) return table->at(i, j);
        return binom(cyclo, Character{&f, i}, Character{&f, j});
    };
    CycloNum acc = cyclo.zero();
    std::uint32_t xlog = f.dlog_t[x];
    for (std::uint32_t c = 0; c < m; ++c) {
        CycloNum term = binom_of((A0.j + c) % m, c);
        for (std::size_t i = 0; i < As.size(); ++i)
            term = cyclo.mul(term, binom_of((As[i].j + c) % m, (Bs[i].j + c) % m));
        term = cyclo.mul_zeta(term, static_cast<std::uint64_t>(c) * xlog % m);
        acc = cyclo.add(acc, term);
    }
    return cyclo.scale(acc, Rational(f.q, m));
}

/// Finite-field Appell F2 (n = 2 instance of the Lauricella series).
inline CycloNum appell_f2(const CycloCtx& cyclo, const Character& A, const Character& B1,
                          const Character& B2, const Character& C1, const Character& C2,
                          Elem x1, Elem x2, Route route, const BinomialTable* table = nullptr) {
    SeriesParams p{A, {B1, B2}, {C1, C2}, {x1, x2}};
    return lauricella_fa(cyclo, p, route, table);
}

/// Simultaneous permutation of (B, C, x); the series value is invariant.
inline SeriesParams permute(const SeriesParams& p, const std::vector<std::uint32_t>& sigma) {
    const std::uint32_t n = p.n();
    if (sigma.size() != n) throw std::domain_error("permute: permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (std::uint32_t v : sigma) {
        if (v >= n || seen[v]) throw std::domain_error("permute: not a bijection on 1..n");
        seen[v] = true;
    }
    SeriesParams out = p;
    for (std::uint32_t i = 0; i < n; ++i) {
        out.Bs[i] = p.Bs[sigma[i]];
        out.Cs[i] = p.Cs[sigma[i]];
        out.xs[i] = p.xs[sigma[i]];
    }
    return out;
}

} // namespace ffhyper
