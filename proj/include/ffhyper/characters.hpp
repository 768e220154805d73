#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper {

/// Multiplicative character chi_j of F_q^x, extended by chi(0) = 0 for every
/// character including the trivial one. chi_j(g^k) = zeta_{q-1}^{jk} relative
/// to the field's canonical generator; index 0 is epsilon.
struct Character {
    const FieldCtx* field = nullptr;
    std::uint32_t j = 0;

    std::uint32_t order_mod() const { return field->order(); }

    friend bool operator==(const Character& a, const Character& b) {
        return a.j == b.j && a.field->p == b.field->p && a.field->r == b.field->r;
    }
    friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }

    bool is_trivial() const { return j == 0; }

    std::string name() const { return "chi" + std::to_string(j); }
};

inline void require_same_field(const Character& a, const Character& b) {
    if (a.field->p != b.field->p || a.field->r != b.field->r)
        throw std::domain_error("characters belong to different fields");
}

inline void require_same_field(const Character& a, const FieldCtx& f) {
    if (a.field->p != f.p || a.field->r != f.r)
        throw std::domain_error("character does not belong to this field");
}

inline std::vector<Character> char_group(const FieldCtx& f) {
    std::vector<Character> out;
    out.reserve(f.order());
    for (std::uint32_t j = 0; j < f.order(); ++j) out.push_back(Character{&f, j});
    return out;
}

inline Character char_mul(const Character& a, const Character& b) {
    require_same_field(a, b);
    return Character{a.field, (a.j + b.j) % a.order_mod()};
}

inline Character char_inv(const Character& a) {
    return Character{a.field, (a.order_mod() - a.j) % a.order_mod()};
}

inline Character char_pow_product(const Character& a, std::initializer_list<Character> more) {
    Character out = a;
    for (const Character& c : more) out = char_mul(out, c);
    return out;
}

/// Exponent view of chi(x): the k with chi(x) = zeta_{q-1}^k, or -1 for x = 0.
/// This is the fast path every evaluator loops over.
inline std::int64_t chi_exp(const Character& chi, Elem x) {
    if (x == 0) return -1;
    const FieldCtx& f = *chi.field;
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(chi.j) * f.dlog_t[x] %
                                     f.order());
}

/// chi(-1) as an exponent: 0 or m/2 (m = q-1 is even for odd q).
inline std::uint32_t chi_exp_minus_one(const Character& chi) {
    const FieldCtx& f = *chi.field;
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(chi.j) * (f.order() / 2) % f.order());
}

inline CycloNum chi_eval(const CycloCtx& cyclo, const Character& chi, Elem x) {
    if (!chi.field->contains(x))
        throw std::domain_error("chi_eval: element out of range for this field");
    std::int64_t e = chi_exp(chi, x);
    if (e < 0) return cyclo.zero();
    return cyclo.root_of_unity(e);
}

/// delta(x): 1 at x = 0, else 0. Distinct from epsilon, which vanishes at 0.
inline Rational delta(Elem x) { return Rational(x == 0 ? 1 : 0); }

/// Parses "chi<j>" (the CLI/report syntax).
inline Character parse_character(const FieldCtx& f, const std::string& s) {
    if (s.size() < 4 || s.compare(0, 3, "chi") != 0)
        throw std::invalid_argument("character syntax is chi<j>: " + s);
    unsigned long j = std::stoul(s.substr(3));
    if (j >= f.order())
        throw std::invalid_argument("character index out of range: " + s);
    return Character{&f, static_cast<std::uint32_t>(j)};
}

} // namespace ffhyper
