#pragma once

#include "bullet.hpp"
#include "prng.hpp"

namespace hochcalc {

template <class K>
std::vector<int> basis_of_deg(const AlgebraSpec<K>& A, long d) {
    std::vector<int> out;
    for (int i = 0; i < A.dim(); ++i)
        if (A.norm_deg(A.deg_basis(i)) == A.norm_deg(d)) out.push_back(i);
    return out;
}

template <class K>
Vec<K> random_element(const AlgebraSpec<K>& A, SplitMix64& rng, long bound = 2) {
    Vec<K> v;
    for (int i = 0; i < A.dim(); ++i) vec_add(v, i, A.field.of_long(rng.coeff(bound)));
    return v;
}

template <class K>
Vec<K> random_element_of_deg(const AlgebraSpec<K>& A, SplitMix64& rng, long d, long bound = 2) {
    Vec<K> v;
    for (int i : basis_of_deg(A, d)) vec_add(v, i, A.field.of_long(rng.coeff(bound)));
    return v;
}

/// Homogeneous random cochain. For graded algebras the map degree is drawn
/// from the degrees that admit at least one nonzero entry.
template <class K>
Cochain<K> random_cochain(const AlgebraSpec<K>& A, SplitMix64& rng, int arity) {
    Cochain<K> D;
    D.A = &A;
    D.arity = arity;
    D.mapdeg = 0;
    if (A.graded()) {
        std::vector<long> degs;
        for (int i = 0; i < A.dim(); ++i) degs.push_back(A.deg_basis(i));
        long lo = *std::min_element(degs.begin(), degs.end());
        long hi = *std::max_element(degs.begin(), degs.end());
        std::vector<long> feasible;
        for (long md = lo - arity * hi; md <= hi - arity * lo; ++md) {
            bool ok = false;
            for_each_tuple(A, arity, [&](const std::vector<int>& t) {
                if (ok) return;
                long want = md;
                for (int k : t) want += A.deg_basis(k);
                if (!basis_of_deg(A, want).empty()) ok = true;
            });
            if (ok) feasible.push_back(md);
        }
        if (!feasible.empty()) D.mapdeg = feasible[rng.below(feasible.size())];
        if (A.mod2) D.mapdeg = ((D.mapdeg % 2) + 2) % 2;
    }
    for_each_tuple(A, arity, [&](const std::vector<int>& t) {
        if (rng.below(2) == 0) return;  // keep it sparse
        long want = D.mapdeg;
        for (int k : t) want += A.deg_basis(k);
        Vec<K> v = random_element_of_deg(A, rng, want);
        D.add_value(t, v);
    });
    return D;
}

template <class K>
Chain<K> random_chain(const AlgebraSpec<K>& A, SplitMix64& rng, int len, int nterms = 2) {
    Chain<K> c;
    c.A = &A;
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> key(len + 1);
        key[0] = static_cast<int>(rng.below(A.dim()));
        for (int i = 1; i <= len; ++i)
            key[i] = A.reduced[rng.below(A.reduced.size())];
        c.add(key, A.field.of_long(rng.coeff(2)));
    }
    return c;
}

template <class K>
CochainTensor<K> random_tensor(const AlgebraSpec<K>& A, SplitMix64& rng, int max_m,
                               int max_arity, int nterms = 1) {
    CochainTensor<K> x;
    x.A = &A;
    for (int t = 0; t < nterms; ++t) {
        int m = static_cast<int>(rng.below(max_m + 1));
        std::vector<Cochain<K>> tup;
        for (int p = 0; p <= m; ++p)
            tup.push_back(random_cochain(A, rng, static_cast<int>(rng.below(max_arity + 1))));
        add_tuple(x, tup, A.field.of_long(1 + rng.coeff(1)));
    }
    return x;
}

} // namespace hochcalc
