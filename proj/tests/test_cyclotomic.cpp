#include <doctest.h>

#include <complex>

#include "ffhyper/cyclotomic.hpp"

using namespace ffhyper;

namespace {

// brute-force oracle: multiply out prod over proper divisors and divide x^m-1
std::vector<std::int64_t> phi_by_division(std::uint32_t m) {
    std::vector<std::int64_t> f(m + 1, 0);
    f[0] = -1;
    f[m] = 1;
    for (std::uint32_t d = 1; d < m; ++d)
        if (m % d == 0) f = zpoly::div_exact(std::move(f), cyclotomic_polynomial(d));
    return f;
}

CycloNum cn(const CycloCtx& c, std::initializer_list<Rational> coeffs) {
    std::vector<Rational> v(coeffs);
    v.resize(c.deg, Rational(0));
    return CycloNum(std::move(v));
}

} // namespace

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("cyclotomic polynomials: small oracle-checked values") {
    CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});        // x - 1
    CHECK(cyclotomic_polynomial(2) == std::vector<std::int64_t>{1, 1});         // x + 1
    CHECK(cyclotomic_polynomial(4) == phi_by_division(4));                      // x^2 + 1
    CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});     // x^2 - x + 1
    CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
    // degree = Euler totient
    auto totient = [](std::uint32_t n) {
        std::uint32_t t = n;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                while (n % d == 0) n /= d;
                t -= t / d;
            }
        if (n > 1) t -= t / n;
        return t;
    };
    for (std::uint32_t m : {8u, 9u, 10u, 15u, 30u, 105u})
        CHECK(cyclotomic_polynomial(m).size() == totient(m) + 1);
}

TEST_CASE("zeta powers and canonical form") {
    CycloCtx c4(4);
    CHECK(c4.deg == 2);
    CHECK(c4.root_of_unity(0) == c4.one());
    CHECK(c4.root_of_unity(2) == cn(c4, {Rational(-1)}));            // zeta_4^2 = -1
    CHECK(c4.mul(c4.root_of_unity(1), c4.root_of_unity(1)) ==
          cn(c4, {Rational(-1)}));                                    // zeta * zeta
    CHECK(c4.add(c4.add(c4.root_of_unity(1), c4.one()),
                 c4.neg(c4.add(c4.root_of_unity(1), c4.one()))) == c4.zero());

    CycloCtx c6(6);
    CHECK(c6.root_of_unity(3) == cn(c6, {Rational(-1)}));            // zeta_6^3 = -1

    // zeta^m = 1 and 1 + zeta + ... + zeta^{m-1} = 0 for a few m > 1
    for (std::uint32_t m : {4u, 6u, 10u, 12u}) {
        CycloCtx c(m);
        CHECK(c.root_of_unity(m) == c.one());
        CycloNum s = c.zero();
        for (std::uint32_t k = 0; k < m; ++k) s = c.add(s, c.root_of_unity(k));
        CHECK(s == c.zero());
    }
}

TEST_CASE("ring axioms on pseudo-random values hold exactly") {
    CycloCtx c(12);
    std::uint64_t st = 99;
    auto rnd = [&]() {
        st = st * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::int64_t>((st >> 33) % 2001) - 1000;
    };
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rational> av(c.deg), bv(c.deg), cv(c.deg);
        for (std::uint32_t i = 0; i < c.deg; ++i) {
            av[i] = Rational(rnd(), 1 + (rnd() & 7) * (rnd() & 7 ? 1 : 0) + 1);
            bv[i] = Rational(rnd());
            cv[i] = Rational(rnd(), 3);
        }
        CycloNum a{av}, b{bv}, d{cv};
        CHECK(c.mul(a, c.mul(b, d)) == c.mul(c.mul(a, b), d));
        CHECK(c.mul(a, c.add(b, d)) == c.add(c.mul(a, b), c.mul(a, d)));
        CHECK(c.mul(a, b) == c.mul(b, a));
        CHECK(c.scale(a, Rational(1)) == a);
    }
}

TEST_CASE("complex embedding") {
    CycloCtx c4(4);
    auto i = c4.embed(c4.root_of_unity(1));
    CHECK(std::abs(i - std::complex<double>(0, 1)) < 1e-12);

    CycloCtx c1(1);
    CHECK(std::abs(c1.embed(c1.from_rational(Rational(3, 2))) -
                   std::complex<double>(1.5, 0)) < 1e-12);

    CycloCtx c8(8);
    auto z = c8.embed(c8.root_of_unity(1));
    double s2 = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(z - std::complex<double>(s2, s2)) < 1e-12);
}

TEST_CASE("embedding is a ring homomorphism within 1e-10") {
    CycloCtx c(10);
    std::uint64_t st = 7;
    auto rnd = [&]() {
        st = st * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::int64_t>((st >> 33) % 2001) - 1000;
    };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> av(c.deg), bv(c.deg);
        for (std::uint32_t i = 0; i < c.deg; ++i) {
            av[i] = Rational(rnd());
            bv[i] = Rational(rnd());
        }
        CycloNum a{av}, b{bv};
        CHECK(std::abs(c.embed(c.mul(a, b)) - c.embed(a) * c.embed(b)) < 1e-10 * 1e6);
        CHECK(std::abs(c.embed(c.add(a, b)) - (c.embed(a) + c.embed(b))) < 1e-10 * 1e4);
    }
}

TEST_CASE("ZetaSum matches naive accumulation") {
    CycloCtx c(12);
    ZetaSum s(c);
    CycloNum naive = c.zero();
    std::uint64_t st = 3;
    for (int i = 0; i < 200; ++i) {
        st = st * 2862933555777941757ull + 3037000493ull;
        std::uint32_t e = static_cast<std::uint32_t>(st >> 40) % 12;
        s.add(e);
        naive = c.add(naive, c.root_of_unity(e));
    }
    CHECK(s.finalize(Rational(1)) == naive);
    CHECK(s.finalize(Rational(1, 7), 5) ==
          c.scale(c.mul_zeta(naive, 5), Rational(1, 7)));
}

TEST_CASE("first coefficient outside {-1,0,1}: Phi_105 has a -2") {
    auto phi = cyclotomic_polynomial(105);
    CHECK(phi.size() == 49); // totient(105) = 48
    CHECK(phi[7] == -2);     // the classical smallest example
    CHECK(phi[0] == 1);
    CHECK(phi[48] == 1);
}

TEST_CASE("large m falls back to the lazy power-row path") {
    CycloCtx c(2310); // above the eager table limit
    CHECK(c.zeta_pow.empty());
    CHECK(c.deg == 480); // totient(2310)
    CHECK(c.root_of_unity(2310) == c.one());
    CycloNum a = c.root_of_unity(1234), b = c.root_of_unity(987);
    CHECK(c.mul(a, b) == c.root_of_unity(2221));
    CHECK(c.mul_zeta(a, 987) == c.root_of_unity(2221));
    CHECK(std::abs(c.embed(c.root_of_unity(1)) -
                   std::polar(1.0, 2.0 * 3.14159265358979323846 / 2310)) < 1e-9);
}

TEST_CASE("scale_by_rational identity and serialization") {
    CycloCtx c(4);
    CycloNum v = cn(c, {Rational(3, 5), Rational(-1, 5)});
    CHECK(cyclo_arith(c, CycloOp::scale_by_rational, v, CycloNum(), Rational(1)) == v);
    auto strs = v.to_strings();
    CHECK(strs == std::vector<std::string>{"3/5", "-1/5"});
}

TEST_SUITE_END();
