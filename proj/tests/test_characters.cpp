#include <doctest.h>

#include "ffhyper/char_sums.hpp"
#include "ffhyper/characters.hpp"

using namespace ffhyper;

TEST_SUITE_BEGIN("characters");

TEST_CASE("chi(0) = 0 for every character, including eps") {
    FieldCtx f = build_field(5, 1);
    CycloCtx c(f.order());
    for (const Character& ch : char_group(f)) CHECK(chi_eval(c, ch, 0) == c.zero());
}

TEST_CASE("q=5 spot values: chi_1(2) = zeta_4, Legendre at chi_2") {
    FieldCtx f = build_field(5, 1);
    CycloCtx c(4);
    Character chi1{&f, 1}, chi2{&f, 2};
    CHECK(chi_eval(c, chi1, 2) == c.root_of_unity(1));
    // Euler criterion oracle: 2^((5-1)/2) = 4 = -1 mod 5, so (2|5) = -1
    CHECK((2 * 2) % 5 == 4);
    CHECK(chi_eval(c, chi2, 2) == c.from_rational(Rational(-1)));
    for (Elem x = 1; x < 5; ++x) {
        Elem sq = static_cast<Elem>(x * x % 5);
        CHECK(chi_eval(c, chi2, sq) == c.one()); // squares have Legendre value 1
    }
}

TEST_CASE("char_group size and the trivial character") {
    FieldCtx f3 = build_field(3, 1);
    CHECK(char_group(f3).size() == 2);
    FieldCtx f9 = build_field(3, 2);
    auto grp = char_group(f9);
    CHECK(grp.size() == 8);
    CycloCtx c(8);
    for (Elem x = 1; x < 9; ++x) CHECK(chi_eval(c, grp[0], x) == c.one());
}

TEST_CASE("group law and inverses") {
    FieldCtx f = build_field(5, 1);
    Character chi1{&f, 1}, chi2{&f, 2}, chi3{&f, 3}, eps{&f, 0};
    CHECK(char_mul(chi1, chi3) == eps);
    CHECK(char_inv(eps) == eps);
    CHECK(char_mul(chi2, chi3) == chi1); // (2+3) mod 4
    CHECK(char_inv(chi1) == chi3);
}

TEST_CASE("cross-field operations are rejected") {
    FieldCtx f5 = build_field(5, 1);
    FieldCtx f7 = build_field(7, 1);
    Character a{&f5, 1}, b{&f7, 1};
    CHECK_THROWS_AS(char_mul(a, b), std::domain_error);
    CycloCtx c(4);
    CHECK_THROWS_AS(chi_eval(c, a, 6), std::domain_error);
}

TEST_CASE("delta indicator") {
    FieldCtx f = build_field(5, 1);
    CHECK(delta(0) == Rational(1));
    CHECK(delta(1) == Rational(0));
    CHECK(delta(f.generator) == Rational(0));
}

TEST_CASE("orthogonality: sum over F_q^x is 0 for chi != eps, q-1 for eps") {
    for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}}) {
        FieldCtx f = build_field(p, r);
        CycloCtx c(f.order());
        for (const Character& ch : char_group(f)) {
            CycloNum s = c.zero();
            for (Elem x = 1; x < f.q; ++x) s = c.add(s, chi_eval(c, ch, x));
            if (ch.is_trivial())
                CHECK(s == c.from_rational(Rational(f.q - 1)));
            else
                CHECK(s == c.zero());
        }
    }
}

TEST_CASE("multiplicativity chi(xy) = chi(x)chi(y), exhaustive for q <= 9") {
    for (auto [p, r] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
        FieldCtx f = build_field(p, r);
        CycloCtx c(f.order());
        for (const Character& ch : char_group(f))
            for (Elem x = 1; x < f.q; ++x)
                for (Elem y = 1; y < f.q; ++y)
                    CHECK(chi_eval(c, ch, f.mul(x, y)) ==
                          c.mul(chi_eval(c, ch, x), chi_eval(c, ch, y)));
    }
}

TEST_CASE("expansion identity: Abar(1-x) = delta(x) + q/(q-1) sum binom(A chi, chi) chi(x)") {
    for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}}) {
        FieldCtx f = build_field(p, r);
        CycloCtx c(f.order());
        const std::uint32_t m = f.order();
        for (std::uint32_t aj = 0; aj < m; ++aj) {
            Character A{&f, aj};
            for (Elem x = 0; x < f.q; ++x) {
                CycloNum lhs = chi_eval(c, char_inv(A), f.sub(f.one(), x));
                CycloNum rhs = c.from_rational(delta(x));
                CycloNum s = c.zero();
                for (std::uint32_t cj = 0; cj < m; ++cj) {
                    Character chi{&f, cj};
                    s = c.add(s, c.mul(binom(c, char_mul(A, chi), chi), chi_eval(c, chi, x)));
                }
                rhs = c.add(rhs, c.scale(s, Rational(f.q, m)));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("character name parsing") {
    FieldCtx f = build_field(5, 1);
    CHECK(parse_character(f, "chi0").is_trivial());
    CHECK(parse_character(f, "chi3").j == 3);
    CHECK_THROWS_AS(parse_character(f, "chi4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_character(f, "xi1"), std::invalid_argument);
}

TEST_SUITE_END();
