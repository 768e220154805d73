#include <doctest.h>

#include <complex>

#include "ffhyper/hypergeometric.hpp"
#include "ffhyper/mirror.hpp"

using namespace ffhyper;

namespace {

struct Ctx {
    FieldCtx f;
    CycloCtx c;
    BinomialTable tab;
    explicit Ctx(std::uint32_t p, std::uint32_t r)
        : f(build_field(p, r)), c(f.order()), tab(build_binom_table(f, c)) {}
    Character chi(std::uint32_t j) const { return Character{&f, j}; }
};

SeriesParams params(const Ctx& t, std::uint32_t A, std::vector<std::uint32_t> Bs,
                    std::vector<std::uint32_t> Cs, std::vector<Elem> xs) {
    SeriesParams p;
    p.A = t.chi(A);
    for (auto b : Bs) p.Bs.push_back(t.chi(b));
    for (auto c : Cs) p.Cs.push_back(t.chi(c));
    p.xs = std::move(xs);
    return p;
}

// He-style Appell F2 point sum, written out literally (no q^2 normalization):
// eps(x1 x2) B1B2C1C2(-1) sum_{t1,t2} B1(t1)B2(t2)(B1bar C1)(1-t1)(B2bar C2)(1-t2)
//                                      Abar(1 - x1 t1 - x2 t2)
CycloNum appell_f2_he_style(const Ctx& t, const SeriesParams& p) {
    const FieldCtx& f = t.f;
    if (f.mul(p.xs[0], p.xs[1]) == 0) return t.c.zero();
    CycloNum acc = t.c.zero();
    for (Elem t1 = 0; t1 < f.q; ++t1) {
        for (Elem t2 = 0; t2 < f.q; ++t2) {
            CycloNum term = chi_eval(t.c, p.Bs[0], t1);
            term = t.c.mul(term, chi_eval(t.c, p.Bs[1], t2));
            term = t.c.mul(term, chi_eval(t.c, char_mul(char_inv(p.Bs[0]), p.Cs[0]),
                                          f.sub(f.one(), t1)));
            term = t.c.mul(term, chi_eval(t.c, char_mul(char_inv(p.Bs[1]), p.Cs[1]),
                                          f.sub(f.one(), t2)));
            Elem u = f.sub(f.one(), f.add(f.mul(p.xs[0], t1), f.mul(p.xs[1], t2)));
            term = t.c.mul(term, chi_eval(t.c, char_inv(p.A), u));
            acc = t.c.add(acc, term);
        }
    }
    Character sign = char_mul(char_mul(p.Bs[0], p.Bs[1]), char_mul(p.Cs[0], p.Cs[1]));
    return t.c.mul(acc, chi_eval(t.c, sign, f.scalar(-1)));
}

std::uint64_t rng_state = 20240801;
std::uint32_t rnd(std::uint32_t n) {
    rng_state = rng_state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<std::uint32_t>(rng_state >> 35) % n;
}

} // namespace

TEST_SUITE_BEGIN("hypergeometric");

TEST_CASE("2F1: frozen value, zero argument, route agreement exhaustive at q=5") {
    Ctx t(5, 1);
    // frozen (exact Z[i] oracle): 2F1(chi1, chi2; chi3 | 3) = -1/5 + zeta/5
    std::vector<Rational> expect = {Rational(-1, 5), Rational(1, 5)};
    CHECK(gauss_2f1(t.c, t.chi(1), t.chi(2), t.chi(3), 3, Route::direct) == CycloNum(expect));

    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b)
            for (std::uint32_t cc = 0; cc < 4; ++cc) {
                CHECK(gauss_2f1(t.c, t.chi(a), t.chi(b), t.chi(cc), 0, Route::direct) ==
                      t.c.zero());
                for (Elem x = 0; x < 5; ++x)
                    CHECK(gauss_2f1(t.c, t.chi(a), t.chi(b), t.chi(cc), x, Route::direct) ==
                          gauss_2f1(t.c, t.chi(a), t.chi(b), t.chi(cc), x, Route::charsum,
                                    &t.tab));
            }
}

TEST_CASE("2F1 equals the n=1 Lauricella series on random q=7 parameters") {
    Ctx t(7, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint32_t a = rnd(6), b = rnd(6), cc = rnd(6);
        Elem x = rnd(7);
        SeriesParams p = params(t, a, {b}, {cc}, {x});
        CycloNum f1 = lauricella_fa(t.c, p, Route::direct);
        CHECK(f1 == gauss_2f1(t.c, t.chi(a), t.chi(b), t.chi(cc), x, Route::direct));
        CHECK(f1 == lauricella_fa(t.c, p, Route::charsum, &t.tab));
    }
}

TEST_CASE("n+1Fn: n=1 is the 2F1 charsum; x=0 vanishes; n=2 independent recompute") {
    Ctx t(5, 1);
    for (int trial = 0; trial < 15; ++trial) {
        std::uint32_t a0 = rnd(4), a1 = rnd(4), b1 = rnd(4);
        Elem x = rnd(5);
        CHECK(hyper_np1_fn(t.c, t.chi(a0), {t.chi(a1)}, {t.chi(b1)}, x, &t.tab) ==
              gauss_2f1(t.c, t.chi(a0), t.chi(a1), t.chi(b1), x, Route::charsum, &t.tab));
    }
    CHECK(hyper_np1_fn(t.c, t.chi(1), {t.chi(2), t.chi(3)}, {t.chi(1), t.chi(2)}, 0) ==
          t.c.zero());

    // all-eps n=2 value vs a from-scratch loop over the character group
    Elem x = 3;
    CycloNum got = hyper_np1_fn(t.c, t.chi(0), {t.chi(0), t.chi(0)}, {t.chi(0), t.chi(0)}, x);
    CycloNum acc = t.c.zero();
    for (std::uint32_t cj = 0; cj < 4; ++cj) {
        Character chi = t.chi(cj);
        CycloNum term = binom(t.c, chi, chi);
        term = t.c.mul(term, binom(t.c, chi, chi));
        term = t.c.mul(term, binom(t.c, chi, chi));
        term = t.c.mul(term, chi_eval(t.c, chi, x));
        acc = t.c.add(acc, term);
    }
    CHECK(got == t.c.scale(acc, Rational(5, 4)));
}

TEST_CASE("route equivalence exhaustive at q=3, n=2 (all parameters and arguments)") {
    Ctx t(3, 1);
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b1 = 0; b1 < 2; ++b1)
            for (std::uint32_t b2 = 0; b2 < 2; ++b2)
                for (std::uint32_t c1 = 0; c1 < 2; ++c1)
                    for (std::uint32_t c2 = 0; c2 < 2; ++c2)
                        for (Elem x1 = 0; x1 < 3; ++x1)
                            for (Elem x2 = 0; x2 < 3; ++x2) {
                                SeriesParams p = params(t, a, {b1, b2}, {c1, c2}, {x1, x2});
                                CHECK(lauricella_direct(t.c, p) ==
                                      lauricella_charsum(t.c, t.tab, p));
                            }
}

TEST_CASE("route equivalence sampled at q=9 (extension field) and q=7, n=3") {
    Ctx t9(3, 2);
    for (int trial = 0; trial < 25; ++trial) {
        SeriesParams p = params(t9, rnd(8), {rnd(8), rnd(8)}, {rnd(8), rnd(8)},
                                {rnd(9), rnd(9)});
        CHECK(lauricella_direct(t9.c, p) == lauricella_charsum(t9.c, t9.tab, p));
    }
    Ctx t7(7, 1);
    for (int trial = 0; trial < 10; ++trial) {
        SeriesParams p = params(t7, rnd(6), {rnd(6), rnd(6), rnd(6)},
                                {rnd(6), rnd(6), rnd(6)}, {rnd(7), rnd(7), rnd(7)});
        CHECK(lauricella_direct(t7.c, p) == lauricella_charsum(t7.c, t7.tab, p));
    }
}

TEST_CASE("vanishing whenever any argument is zero, both routes (q=3,5 exhaustive)") {
    for (std::uint32_t q : {3u, 5u}) {
        Ctx t(q, 1);
        std::uint32_t m = q - 1;
        for (int trial = 0; trial < 20; ++trial) {
            std::uint32_t slot = rnd(2);
            std::vector<Elem> xs = {rnd(q), rnd(q)};
            xs[slot] = 0;
            SeriesParams p = params(t, rnd(m), {rnd(m), rnd(m)}, {rnd(m), rnd(m)}, xs);
            CHECK(lauricella_direct(t.c, p) == t.c.zero());
            CHECK(lauricella_charsum(t.c, t.tab, p) == t.c.zero());
        }
    }
}

TEST_CASE("n=2 matches the He-style Appell F2 point sum up to the q^2 normalization") {
    Ctx t(5, 1);
    for (int trial = 0; trial < 20; ++trial) {
        SeriesParams p = params(t, rnd(4), {rnd(4), rnd(4)}, {rnd(4), rnd(4)},
                                {rnd(5), rnd(5)});
        CycloNum fa = lauricella_fa(t.c, p, Route::direct);
        CHECK(t.c.scale(fa, Rational(25)) == appell_f2_he_style(t, p));
        CHECK(appell_f2(t.c, p.A, p.Bs[0], p.Bs[1], p.Cs[0], p.Cs[1], p.xs[0], p.xs[1],
                        Route::direct) == fa);
    }
}

TEST_CASE("permutation invariance") {
    Ctx t(5, 1);
    SeriesParams p = params(t, 1, {0, 1, 2}, {3, 1, 0}, {1, 2, 4});
    // identity permutation
    SeriesParams ident = permute(p, {0, 1, 2});
    CHECK(ident.xs == p.xs);
    CHECK(lauricella_direct(t.c, ident) == lauricella_direct(t.c, p));
    // random permutations preserve the value
    std::vector<std::vector<std::uint32_t>> sigmas = {{2, 0, 1}, {1, 0, 2}, {2, 1, 0}};
    CycloNum base = lauricella_direct(t.c, p);
    for (const auto& s : sigmas) CHECK(lauricella_direct(t.c, permute(p, s)) == base);
    // the n=2 swap is the F2 symmetry
    SeriesParams p2 = params(t, 2, {1, 3}, {2, 0}, {3, 4});
    CHECK(lauricella_direct(t.c, permute(p2, {1, 0})) == lauricella_direct(t.c, p2));
    CHECK_THROWS_AS(permute(p, {0, 0, 1}), std::domain_error);
    CHECK_THROWS_AS(permute(p, {0, 1}), std::domain_error);
}

TEST_CASE("shifted series: n=0 base case and slice sums") {
    Ctx t(5, 1);
    // empty product: value is Abar(c)
    CHECK(series_shifted(t.c, t.f, t.chi(1), {}, {}, {}, 1) == t.c.one());
    CHECK(series_shifted(t.c, t.f, t.chi(1), {}, {}, {}, 0) == t.c.zero());
    CHECK(series_shifted(t.c, t.f, t.chi(0), {}, {}, {}, 3) == t.c.one());
    // slice sums agree with a naive filter loop
    std::vector<Character> Bs = {t.chi(1), t.chi(2)};
    std::vector<Character> Cs = {t.chi(3), t.chi(1)};
    std::vector<Elem> xs = {2, 3};
    for (Elem target = 0; target < 5; ++target) {
        CycloNum naive = t.c.zero();
        for (Elem t1 = 0; t1 < 5; ++t1)
            for (Elem t2 = 0; t2 < 5; ++t2) {
                if (t.f.add(t.f.mul(xs[0], t1), t.f.mul(xs[1], t2)) != target) continue;
                CycloNum term = chi_eval(t.c, Bs[0], t1);
                term = t.c.mul(term, chi_eval(t.c, char_mul(char_inv(Bs[0]), Cs[0]),
                                              t.f.sub(t.f.one(), t1)));
                term = t.c.mul(term, chi_eval(t.c, Bs[1], t2));
                term = t.c.mul(term, chi_eval(t.c, char_mul(char_inv(Bs[1]), Cs[1]),
                                              t.f.sub(t.f.one(), t2)));
                term = t.c.mul(term, chi_eval(t.c, char_mul(Bs[0], Cs[0]), t.f.scalar(-1)));
                term = t.c.mul(term, chi_eval(t.c, char_mul(Bs[1], Cs[1]), t.f.scalar(-1)));
                naive = t.c.add(naive, term);
            }
        naive = t.c.scale(naive, Rational(1, 25));
        CHECK(series_slice_sum(t.c, t.f, Bs, Cs, xs, target) == naive);
    }
}

TEST_CASE("exact values embed onto the float mirror (q^n-rescaled, 1e-6)") {
    for (auto [p, r] : {std::pair{5u, 1u}, {3u, 2u}, {11u, 1u}}) {
        Ctx t(p, r);
        std::uint32_t m = t.f.order();
        for (int trial = 0; trial < 15; ++trial) {
            SeriesParams pr = params(t, rnd(m), {rnd(m), rnd(m)}, {rnd(m), rnd(m)},
                                     {rnd(t.f.q), rnd(t.f.q)});
            CycloNum exact = lauricella_direct(t.c, pr);
            std::complex<double> mir = mirror::lauricella(t.f, pr.A, pr.Bs, pr.Cs, pr.xs);
            double qn = static_cast<double>(t.f.q) * t.f.q;
            CHECK(std::abs(t.c.embed(exact) - mir) * qn < 1e-6);
        }
    }
}

TEST_CASE("parameter validation") {
    Ctx t(5, 1);
    SeriesParams bad = params(t, 1, {1, 2}, {1}, {2, 3});
    CHECK_THROWS_AS(lauricella_direct(t.c, bad), std::domain_error);
    SeriesParams bad2 = params(t, 1, {1}, {1}, {7});
    CHECK_THROWS_AS(lauricella_direct(t.c, bad2), std::domain_error);
}

TEST_SUITE_END();
