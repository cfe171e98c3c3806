#pragma once

#include "chain.hpp"

#include <algorithm>
#include <compare>

namespace hochcalc {

/// Elementary cochain: a single sparse entry, args (reduced basis indices)
/// mapping to one basis element of A. These are a basis of the cochain space,
/// so formal sums over tuples of them have exact, canonical zero tests.
struct ELetter {
    std::vector<int> args;
    int val = 0;
    auto operator<=>(const ELetter&) const = default;
};

template <class K>
long eletter_mapdeg(const AlgebraSpec<K>& A, const ELetter& L) {
    long d = A.deg_basis(L.val);
    for (int a : L.args) d -= A.deg_basis(a);
    return A.mod2 ? (((d % 2) + 2) % 2) : d;
}

template <class K>
long eletter_bar(const AlgebraSpec<K>& A, const ELetter& L) {
    // |D| = mapdeg + arity − 1
    return eletter_mapdeg(A, L) + static_cast<long>(L.args.size()) - 1;
}

template <class K>
Cochain<K> eletter_cochain(const AlgebraSpec<K>& A, const ELetter& L) {
    Cochain<K> D;
    D.A = &A;
    D.arity = static_cast<int>(L.args.size());
    D.mapdeg = eletter_mapdeg(A, L);
    D.add_value(L.args, A.basis_vec(L.val));
    return D;
}

using ETuple = std::vector<ELetter>;

/// Formal combination of tuples of elementary cochains: a chain over the cup
/// algebra of cochains. Slots >= 1 are reduced modulo multiples of the unit
/// cochain (the unit component of an arity-0 letter is dropped on insertion).
template <class K>
struct CochainTensor {
    const AlgebraSpec<K>* A = nullptr;
    std::map<ETuple, K> terms;

    bool is_zero() const { return terms.empty(); }

    void add(const ETuple& t, const K& c) {
        if (c.is_zero()) return;
        auto it = terms.find(t);
        if (it == terms.end()) {
            terms.emplace(t, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool operator==(const CochainTensor& o) const { return terms == o.terms; }
};

/// Expands a tuple of general cochains into elementary tuples. Slot-0 values
/// expand over the raw basis; arity-0 letters in later slots expand in the
/// unit-adapted basis so degenerate pieces vanish structurally.
template <class K>
void add_tuple(CochainTensor<K>& out, const std::vector<Cochain<K>>& tup, const K& coeff) {
    const AlgebraSpec<K>& A = *out.A;
    if (coeff.is_zero()) return;
    ETuple key(tup.size());
    std::function<void(std::size_t, const K&)> rec = [&](std::size_t i, const K& c) {
        if (i == tup.size()) {
            out.add(key, c);
            return;
        }
        const Cochain<K>& D = (i >= 1) ? split_unit_cochain(tup[i]).second : tup[i];
        for (auto& [args, v] : D.vals) {
            key[i].args = args;
            for (auto& [b, x] : v) {
                key[i].val = b;
                rec(i + 1, c * x);
            }
        }
    };
    rec(0, coeff);
}

template <class K>
CochainTensor<K> tensor_of(const AlgebraSpec<K>& A, const std::vector<Cochain<K>>& tup, const K& c) {
    CochainTensor<K> x;
    x.A = &A;
    add_tuple(x, tup, c);
    return x;
}

template <class K>
CochainTensor<K> tensor_add(const CochainTensor<K>& a, const CochainTensor<K>& b) {
    CochainTensor<K> out = a;
    if (!out.A) out.A = b.A;
    for (auto& [t, c] : b.terms) out.add(t, c);
    return out;
}

template <class K>
CochainTensor<K> tensor_scale(const CochainTensor<K>& a, const K& s) {
    CochainTensor<K> out;
    out.A = a.A;
    if (s.is_zero()) return out;
    for (auto& [t, c] : a.terms) out.terms.emplace(t, c * s);
    return out;
}

template <class K>
CochainTensor<K> tensor_sub(const CochainTensor<K>& a, const CochainTensor<K>& b) {
    return tensor_add(a, tensor_scale(b, -b.A->field.one()));
}

/// Replace slot j of a tuple by a general cochain, re-expanding to elementary
/// letters, with the stated coefficient.
template <class K>
void add_with_slot(CochainTensor<K>& out, const ETuple& t, std::size_t j, const Cochain<K>& D,
                   const K& coeff) {
    const AlgebraSpec<K>& A = *out.A;
    const Cochain<K>& E = (j >= 1) ? split_unit_cochain(D).second : D;
    ETuple key = t;
    for (auto& [args, v] : E.vals) {
        key[j].args = args;
        for (auto& [b, x] : v) {
            key[j].val = b;
            out.add(key, coeff * x);
        }
    }
}

/// Merge slots j, j+1 (cyclically j = last merges into slot 0) through the
/// cup product, re-expanded.
template <class K>
void add_with_merge(CochainTensor<K>& out, const ETuple& t, std::size_t j, const Cochain<K>& merged,
                    const K& coeff) {
    ETuple key;
    std::size_t target = (j + 1 < t.size()) ? j : 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i == j || i == (j + 1) % t.size()) continue;
        key.push_back(t[i]);
    }
    key.insert(key.begin() + (target == 0 ? 0 : target), ELetter{});
    const AlgebraSpec<K>& A = *out.A;
    const Cochain<K>& E = (target >= 1) ? split_unit_cochain(merged).second : merged;
    (void)A;
    for (auto& [args, v] : E.vals) {
        key[target].args = args;
        for (auto& [b, x] : v) {
            key[target].val = b;
            out.add(key, coeff * x);
        }
    }
}

namespace detail {
template <class K>
long etwsum(const AlgebraSpec<K>& A, const ETuple& t, int lo, int hi) {
    long s = 0;
    for (int i = lo; i <= hi && i < static_cast<int>(t.size()); ++i)
        if (i >= 0) s += eletter_bar(A, t[i]);
    return ((s % 2) + 2) % 2;
}
} // namespace detail

/// Hochschild boundary of the cup algebra on tuples: adjacent letters merge
/// through ⌣, with the same word-rule signs as on ordinary chains.
template <class K>
CochainTensor<K> boundary_b_ee(const CochainTensor<K>& x) {
    const AlgebraSpec<K>& A = *x.A;
    CochainTensor<K> out;
    out.A = x.A;
    for (auto& [t, coeff] : x.terms) {
        const int m = static_cast<int>(t.size()) - 1;
        if (m == 0) continue;
        for (int j = 0; j < m; ++j) {
            Cochain<K> merged = cup(eletter_cochain(A, t[j]), eletter_cochain(A, t[j + 1]));
            long ex = signs::b_merge(detail::etwsum(A, t, 0, j));
            add_with_merge(out, t, j, merged, coeff * sign_of(ex, A.field));
        }
        {
            Cochain<K> merged = cup(eletter_cochain(A, t[m]), eletter_cochain(A, t[0]));
            long ex = signs::b_wrap(eletter_bar(A, t[m]), detail::etwsum(A, t, 0, m - 1));
            add_with_merge(out, t, m, merged, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Termwise δ on tuples with Koszul passage signs.
template <class K>
CochainTensor<K> delta_ee(const CochainTensor<K>& x) {
    const AlgebraSpec<K>& A = *x.A;
    CochainTensor<K> out;
    out.A = x.A;
    for (auto& [t, coeff] : x.terms) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            Cochain<K> dj = delta(eletter_cochain(A, t[j]));
            long ex = signs::ext_diff(detail::etwsum(A, t, 0, static_cast<int>(j) - 1));
            add_with_slot(out, t, j, dj, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Connes operator on tuples: rotations prefixed with the unit cochain.
template <class K>
CochainTensor<K> connes_B_ee(const CochainTensor<K>& x) {
    const AlgebraSpec<K>& A = *x.A;
    CochainTensor<K> out;
    out.A = x.A;
    Cochain<K> one = unit_cochain(A);
    for (auto& [t, coeff] : x.terms) {
        const int m = static_cast<int>(t.size()) - 1;
        for (int j = 0; j <= m; ++j) {
            std::vector<Cochain<K>> nt;
            nt.push_back(one);
            for (int i = j; i <= m; ++i) nt.push_back(eletter_cochain(A, t[i]));
            for (int i = 0; i < j; ++i) nt.push_back(eletter_cochain(A, t[i]));
            long ex = signs::B_rot(detail::etwsum(A, t, j, m), detail::etwsum(A, t, 0, j - 1));
            add_tuple(out, nt, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Total differential b + δ on tuples (the non-periodic complex of the
/// cochain algebra).
template <class K>
CochainTensor<K> total_diff_ee(const CochainTensor<K>& x) {
    return tensor_add(boundary_b_ee(x), delta_ee(x));
}

/// Adjoint action of a cochain on a tuple: Σ ±(D_0,..,[D,D_j],..,D_m).
template <class K>
CochainTensor<K> ad_action(const Cochain<K>& D, const CochainTensor<K>& x) {
    const AlgebraSpec<K>& A = *x.A;
    CochainTensor<K> out;
    out.A = x.A;
    for (auto& [t, coeff] : x.terms) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            Cochain<K> br = bracket(D, eletter_cochain(A, t[j]));
            long ex = D.bar() * detail::etwsum(A, t, 0, static_cast<int>(j) - 1);
            add_with_slot(out, t, j, br, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Tuple degree Σ deg D_i + m of one elementary tuple.
template <class K>
long etuple_deg(const AlgebraSpec<K>& A, const ETuple& t) {
    long d = static_cast<long>(t.size()) - 1;
    for (auto& L : t) d += eletter_mapdeg(A, L) + static_cast<long>(L.args.size());
    return d;
}

} // namespace hochcalc
