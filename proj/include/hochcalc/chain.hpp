#pragma once

#include "cochain.hpp"

#include <vector>

namespace hochcalc {

/// Hochschild chain: formal combination of basis tensors (a_0, ..., a_n).
/// Slot 0 ranges over the full basis, slots >= 1 over the reduced complement,
/// so degenerate tensors are identically zero by storage. Mixed lengths are
/// allowed in one chain; operators act termwise.
template <class K>
struct Chain {
    const AlgebraSpec<K>* A = nullptr;
    std::map<std::vector<int>, K> terms;

    bool is_zero() const { return terms.empty(); }

    void add(const std::vector<int>& key, const K& c) {
        if (c.is_zero()) return;
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool operator==(const Chain& o) const { return terms == o.terms; }
};

template <class K>
Chain<K> chain_scale(const Chain<K>& c, const K& s) {
    Chain<K> out;
    out.A = c.A;
    if (s.is_zero()) return out;
    for (auto& [k, v] : c.terms) out.terms.emplace(k, s * v);
    return out;
}

template <class K>
Chain<K> chain_add(const Chain<K>& a, const Chain<K>& b) {
    Chain<K> out = a;
    if (!out.A) out.A = b.A;
    for (auto& [k, v] : b.terms) out.add(k, v);
    return out;
}

template <class K>
Chain<K> chain_sub(const Chain<K>& a, const Chain<K>& b) {
    Chain<K> out = a;
    if (!out.A) out.A = b.A;
    for (auto& [k, v] : b.terms) out.add(k, -v);
    return out;
}

/// Expands a tensor of elements into basis tensors: slot 0 over the full
/// basis, later slots reduced (unit components vanish).
template <class K>
void add_tensor(Chain<K>& out, const std::vector<Vec<K>>& slots, const K& coeff) {
    const AlgebraSpec<K>& A = *out.A;
    if (coeff.is_zero()) return;
    std::vector<int> key(slots.size());
    std::vector<Vec<K>> parts(slots.size());
    parts[0] = slots[0];
    for (std::size_t i = 1; i < slots.size(); ++i) parts[i] = A.split_unit(slots[i]).second;
    std::function<void(std::size_t, const K&)> rec = [&](std::size_t i, const K& c) {
        if (i == slots.size()) {
            out.add(key, c);
            return;
        }
        for (auto& [k, x] : parts[i]) {
            key[i] = k;
            rec(i + 1, c * x);
        }
    };
    rec(0, coeff);
}

template <class K>
Chain<K> chain_of(const AlgebraSpec<K>& A, const std::vector<Vec<K>>& slots, const K& coeff) {
    Chain<K> c;
    c.A = &A;
    add_tensor(c, slots, coeff);
    return c;
}

/// deg(a_0,...,a_n) = Σ deg a_i + n of one basis tensor.
template <class K>
long tensor_deg(const AlgebraSpec<K>& A, const std::vector<int>& key) {
    long d = static_cast<long>(key.size()) - 1;
    for (int k : key) d += A.deg_basis(k);
    return d;
}

namespace signs {

/// Partial weight sums over a tensor key: S(lo..hi) = Σ |a_i| mod 2.
template <class K>
long wsum(const AlgebraSpec<K>& A, const std::vector<int>& key, int lo, int hi) {
    long s = 0;
    for (int i = lo; i <= hi && i < static_cast<int>(key.size()); ++i)
        if (i >= 0) s += wt(A, key[i]);
    return ((s % 2) + 2) % 2;
}

inline long b_merge(long wsum_through_j) { return wsum_through_j + 1; }
inline long b_wrap(long w_last, long wsum_before_last) {
    return w_last * (wsum_before_last + 1) + 1;
}
inline long ext_diff(long wsum_before_j) { return wsum_before_j; }
inline long B_rot(long wsum_suffix, long wsum_prefix) { return wsum_suffix * wsum_prefix; }

} // namespace signs

/// Hochschild boundary. Signs come from the odd-separator word rule; the
/// merge through position j carries (−1)^{Σ_{i≤j}|a_i|+1} and the wraparound
/// (−1)^{|a_n|(Σ_{i<n}|a_i|+1)+1}.
template <class K>
Chain<K> boundary_b(const Chain<K>& c) {
    const AlgebraSpec<K>& A = *c.A;
    Chain<K> out;
    out.A = c.A;
    for (auto& [key, coeff] : c.terms) {
        const int n = static_cast<int>(key.size()) - 1;
        if (n == 0) continue;
        for (int j = 0; j < n; ++j) {
            Vec<K> prod = A.mul_basis(key[j], key[j + 1]);
            if (prod.empty()) continue;
            std::vector<Vec<K>> slots;
            for (int i = 0; i < j; ++i) slots.push_back(A.basis_vec(key[i]));
            slots.push_back(prod);
            for (int i = j + 2; i <= n; ++i) slots.push_back(A.basis_vec(key[i]));
            add_tensor(out, slots, coeff * sign_of(signs::b_merge(signs::wsum(A, key, 0, j)), A.field));
        }
        {
            Vec<K> prod = A.mul_basis(key[n], key[0]);
            if (prod.empty()) continue;
            std::vector<Vec<K>> slots;
            slots.push_back(prod);
            for (int i = 1; i < n; ++i) slots.push_back(A.basis_vec(key[i]));
            long ex = signs::b_wrap(wt(A, key[n]), signs::wsum(A, key, 0, n - 1));
            add_tensor(out, slots, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Extension of the algebra differential to chains, termwise with the
/// Koszul passage sign (−1)^{Σ_{i<j}|a_i|}.
template <class K>
Chain<K> extend_differential(const Chain<K>& c) {
    const AlgebraSpec<K>& A = *c.A;
    if (!A.differential) throw std::runtime_error("extend_differential: algebra has no differential");
    Chain<K> out;
    out.A = c.A;
    for (auto& [key, coeff] : c.terms) {
        const int n = static_cast<int>(key.size()) - 1;
        for (int j = 0; j <= n; ++j) {
            Vec<K> dj = A.apply_differential(A.basis_vec(key[j]));
            if (dj.empty()) continue;
            std::vector<Vec<K>> slots;
            for (int i = 0; i <= n; ++i)
                slots.push_back(i == j ? dj : A.basis_vec(key[i]));
            add_tensor(out, slots, coeff * sign_of(signs::ext_diff(signs::wsum(A, key, 0, j - 1)), A.field));
        }
    }
    return out;
}

/// Connes operator B: (−1)^{(η_{n+1}−η_j)η_j} (1, a_j, ..., a_n, a_0, ..., a_{j−1}).
template <class K>
Chain<K> connes_B(const Chain<K>& c) {
    const AlgebraSpec<K>& A = *c.A;
    Chain<K> out;
    out.A = c.A;
    for (auto& [key, coeff] : c.terms) {
        const int n = static_cast<int>(key.size()) - 1;
        for (int j = 0; j <= n; ++j) {
            std::vector<Vec<K>> slots;
            slots.push_back(A.unit_vec());
            for (int i = j; i <= n; ++i) slots.push_back(A.basis_vec(key[i]));
            for (int i = 0; i < j; ++i) slots.push_back(A.basis_vec(key[i]));
            long ex = signs::B_rot(signs::wsum(A, key, j, n), signs::wsum(A, key, 0, j - 1));
            add_tensor(out, slots, coeff * sign_of(ex, A.field));
        }
    }
    return out;
}

/// Total boundary b + ∂ for differential graded coefficients.
template <class K>
Chain<K> total_boundary(const Chain<K>& c) {
    Chain<K> out = boundary_b(c);
    if (c.A->differential) out = chain_add(out, extend_differential(c));
    return out;
}

} // namespace hochcalc
