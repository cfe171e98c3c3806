#pragma once

#include "bullet.hpp"

#include <climits>

namespace hochcalc {

/// Window-truncated model of the periodic cyclic complex: components by
/// tensor length. `finite` means absent components are exactly zero (the
/// direct-sum subcomplex); otherwise components above `trust` are unknown
/// and identities are only asserted below it. `window` caps what a
/// non-finite chain stores.
template <class K>
struct PeriodicChain {
    const AlgebraSpec<K>* A = nullptr;
    int parity = 0;
    int window = 6;
    int trust = 6;
    bool finite = false;
    std::map<int, Chain<K>> comp;

    static constexpr int kExact = INT_MAX / 4;

    bool is_zero() const {
        for (auto& [n, c] : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    void put(int n, Chain<K> c) {
        if (c.is_zero()) comp.erase(n);
        else comp[n] = std::move(c);
    }

    Chain<K> at(int n) const {
        auto it = comp.find(n);
        if (it != comp.end()) return it->second;
        Chain<K> z;
        z.A = A;
        return z;
    }

    int safe_to() const { return finite ? kExact : std::min(window, trust); }
};

template <class K>
PeriodicChain<K> pc_from_chain(const AlgebraSpec<K>& A, const Chain<K>& c, int window) {
    PeriodicChain<K> out;
    out.A = &A;
    out.window = window;
    out.trust = PeriodicChain<K>::kExact;
    out.finite = true;
    for (auto& [key, v] : c.terms) {
        int n = static_cast<int>(key.size()) - 1;
        if (out.comp.find(n) == out.comp.end()) out.comp[n].A = &A;
        out.comp[n].add(key, v);
    }
    if (!out.comp.empty()) out.parity = out.comp.begin()->first % 2;
    return out;
}

template <class K>
PeriodicChain<K> pc_add(const PeriodicChain<K>& a, const PeriodicChain<K>& b) {
    PeriodicChain<K> out = a;
    out.finite = a.finite && b.finite;
    out.trust = std::min(a.trust, b.trust);
    out.window = std::min(a.window, b.window);
    for (auto& [n, c] : b.comp) out.put(n, chain_add(out.at(n), c));
    return out;
}

template <class K>
PeriodicChain<K> pc_scale(const PeriodicChain<K>& a, const K& s) {
    PeriodicChain<K> out = a;
    out.comp.clear();
    for (auto& [n, c] : a.comp) out.put(n, chain_scale(c, s));
    return out;
}

template <class K>
PeriodicChain<K> pc_sub(const PeriodicChain<K>& a, const PeriodicChain<K>& b) {
    return pc_add(a, pc_scale(b, -b.A->field.one()));
}

/// Exact equality on the common safe range.
template <class K>
bool pc_equal_safe(const PeriodicChain<K>& a, const PeriodicChain<K>& b) {
    int upto = std::min(a.safe_to(), b.safe_to());
    for (int n = 0; n <= upto && n <= std::max(a.comp.empty() ? 0 : a.comp.rbegin()->first,
                                               b.comp.empty() ? 0 : b.comp.rbegin()->first); ++n)
        if (!(a.at(n) == b.at(n))) return false;
    return true;
}

template <class K>
PeriodicChain<K> pc_map(const PeriodicChain<K>& a, int delta_min,
                        const std::function<Chain<K>(const Chain<K>&)>& f) {
    PeriodicChain<K> out;
    out.A = a.A;
    out.window = a.window;
    out.finite = a.finite;
    out.trust = a.finite ? PeriodicChain<K>::kExact
                         : std::min<long long>(PeriodicChain<K>::kExact,
                                               static_cast<long long>(a.trust) + delta_min);
    out.parity = (a.parity + ((delta_min % 2) + 2)) % 2;
    int limit = a.finite ? (a.comp.empty() ? -1 : a.comp.rbegin()->first)
                         : std::min(a.window, a.trust);
    for (auto& [n, c] : a.comp) {
        if (n > limit) continue;
        Chain<K> r = f(c);
        for (auto& [key, v] : r.terms) {
            int len = static_cast<int>(key.size()) - 1;
            if (!out.finite && len > out.window) continue;
            if (out.comp.find(len) == out.comp.end()) out.comp[len].A = a.A;
            out.comp[len].add(key, v);
        }
    }
    for (auto it = out.comp.begin(); it != out.comp.end();) {
        if (it->second.is_zero()) it = out.comp.erase(it);
        else ++it;
    }
    return out;
}

template <class K>
PeriodicChain<K> b_per(const PeriodicChain<K>& a) {
    return pc_map<K>(a, -1, [](const Chain<K>& c) { return boundary_b(c); });
}

template <class K>
PeriodicChain<K> B_per(const PeriodicChain<K>& a) {
    return pc_map<K>(a, +1, [](const Chain<K>& c) { return connes_B(c); });
}

template <class K>
PeriodicChain<K> Bb_per(const PeriodicChain<K>& a) {
    return pc_add(b_per(a), B_per(a));
}

/// Length displacement bounds of a tuple family: part one and two move
/// length by m − Σd, the rotation part by m − Σd + 2.
template <class K>
int tuple_delta_min(const AlgebraSpec<K>& A, const CochainTensor<K>& x) {
    (void)A;
    int dmin = 0;
    bool first = true;
    for (auto& [t, c] : x.terms) {
        int sd = 0;
        for (auto& L : t) sd += static_cast<int>(L.args.size());
        int d = static_cast<int>(t.size()) - 1 - sd;
        if (first || d < dmin) dmin = d;
        first = false;
    }
    return dmin;
}

/// The rotation part of the pairing alone, per stored component.
template <class K>
PeriodicChain<K> bullet3_per(const PeriodicChain<K>& a, const CochainTensor<K>& x,
                             const BulletOpts& opts = default_bullet_opts()) {
    return pc_map<K>(a, tuple_delta_min(*a.A, x),
                     [&](const Chain<K>& c) { return bullet3(c, x, opts); });
}

/// Full periodic pairing: value insertions, wraparound, and rotations.
template <class K>
PeriodicChain<K> bullet_per(const PeriodicChain<K>& a, const CochainTensor<K>& x,
                            const BulletOpts& opts = default_bullet_opts()) {
    return pc_map<K>(a, tuple_delta_min(*a.A, x), [&](const Chain<K>& c) {
        return chain_add(bullet12(c, x, opts), bullet3(c, x, opts));
    });
}

/// Contraction I_D(a) = (−1)^{deg D · deg a} a • (D) in the periodic complex.
template <class K>
PeriodicChain<K> contraction_I(const Cochain<K>& D, const PeriodicChain<K>& a,
                               const BulletOpts& opts = default_bullet_opts()) {
    const AlgebraSpec<K>& A = *a.A;
    CochainTensor<K> x = tensor_of(A, {D}, A.field.one());
    return pc_map<K>(a, tuple_delta_min(A, x), [&](const Chain<K>& c) {
        Chain<K> out;
        out.A = &A;
        for (auto& [key, v] : c.terms) {
            Chain<K> single;
            single.A = &A;
            single.add(key, v * sign_of(tensor_deg(A, key) * D.deg(), A.field));
            out = chain_add(out, chain_add(bullet12(single, x, opts), bullet3(single, x, opts)));
        }
        return out;
    });
}

/// Lie derivative L_D(a) = (−1)^{|D| deg a} a • (1, D) in the periodic complex.
template <class K>
PeriodicChain<K> lie_per(const Cochain<K>& D, const PeriodicChain<K>& a,
                         const BulletOpts& opts = default_bullet_opts()) {
    const AlgebraSpec<K>& A = *a.A;
    CochainTensor<K> x = tensor_of(A, {unit_cochain(A), D}, A.field.one());
    return pc_map<K>(a, tuple_delta_min(A, x), [&](const Chain<K>& c) {
        Chain<K> out;
        out.A = &A;
        for (auto& [key, v] : c.terms) {
            Chain<K> single;
            single.A = &A;
            single.add(key, v * sign_of(tensor_deg(A, key) * D.bar(), A.field));
            out = chain_add(out, chain_add(bullet12(single, x, opts), bullet3(single, x, opts)));
        }
        return out;
    });
}

/// A chain viewed as a tensor of zero-cochains over the cup algebra.
template <class K>
CochainTensor<K> chain_as_tensor(const Chain<K>& c) {
    const AlgebraSpec<K>& A = *c.A;
    CochainTensor<K> out;
    out.A = &A;
    for (auto& [key, v] : c.terms) {
        ETuple t(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            t[i].args = {};
            t[i].val = key[i];
        }
        out.add(t, v);
    }
    return out;
}

/// Hood–Jones product on the periodic complex of a commutative algebra:
/// the pairing against the right factor viewed as zero-cochain tuples.
template <class K>
PeriodicChain<K> star_hood_jones(const PeriodicChain<K>& a, const PeriodicChain<K>& b,
                                 bool* commutative_ok = nullptr,
                                 const BulletOpts& opts = default_bullet_opts()) {
    const AlgebraSpec<K>& A = *a.A;
    if (commutative_ok) {
        *commutative_ok = true;
        for (int i = 0; i < A.dim() && *commutative_ok; ++i)
            for (int j = 0; j < A.dim(); ++j)
                if (!(A.mul_basis(i, j) == A.mul_basis(j, i))) {
                    *commutative_ok = false;
                    break;
                }
    }
    PeriodicChain<K> out;
    out.A = a.A;
    out.window = std::min(a.window, b.window);
    out.finite = a.finite && b.finite;
    out.parity = (a.parity + b.parity) % 2;
    out.trust = 0;
    bool first = true;
    int blimit = b.finite ? (b.comp.empty() ? -1 : b.comp.rbegin()->first)
                          : std::min(b.window, b.trust);
    for (auto& [m, cb] : b.comp) {
        if (m > blimit) continue;
        CochainTensor<K> x = chain_as_tensor(cb);
        if (x.is_zero()) continue;
        PeriodicChain<K> piece = bullet_per(a, x, opts);
        out = first ? piece : pc_add(out, piece);
        first = false;
    }
    if (first) {
        out.trust = PeriodicChain<K>::kExact;
        out.finite = a.finite && b.finite;
    }
    if (!b.finite) out.trust = std::min(out.trust, std::min(b.window, b.trust));
    out.window = std::min(a.window, b.window);
    return out;
}

// ---------------------------------------------------------------------------
// Reduced cyclic complex
// ---------------------------------------------------------------------------

/// Element of Ā^{⊗(n+1)}/Im(1−τ) in τ-orbit-minimal normal form. Keys hold
/// reduced basis indices in every slot, including slot 0.
template <class K>
struct ReducedCyclicChain {
    const AlgebraSpec<K>* A = nullptr;
    std::map<std::vector<int>, K> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const ReducedCyclicChain& o) const { return terms == o.terms; }
};

/// Signed cyclic rotation: τ(a_0,...,a_n) = ±(a_n, a_0, ..., a_{n−1}) with
/// the Koszul sign of moving a_n past the rest.
template <class K>
std::pair<std::vector<int>, int> tau_once(const AlgebraSpec<K>& A, const std::vector<int>& t) {
    const int n = static_cast<int>(t.size()) - 1;
    std::vector<int> r(t.size());
    r[0] = t[n];
    for (int i = 0; i < n; ++i) r[i + 1] = t[i];
    long ex = wt(A, t[n]) * signs::wsum(A, t, 0, n - 1);
    return {r, sign_int(ex)};
}

template <class K>
void add_reduced_orbit(ReducedCyclicChain<K>& out, const std::vector<int>& t, const K& coeff) {
    const AlgebraSpec<K>& A = *out.A;
    if (coeff.is_zero()) return;
    std::vector<int> best = t;
    int best_sign = 1;
    std::vector<int> cur = t;
    int sign = 1;
    bool kill = false;
    for (std::size_t k = 0; k < t.size(); ++k) {  // full cycle, catching t ≡ −t
        auto [next, s] = tau_once(A, cur);
        cur = next;
        sign *= s;
        if (cur == t && sign == -1) kill = true;
        if (cur < best) {
            best = cur;
            best_sign = sign;
        }
    }
    if (kill) return;
    K c = coeff;
    if (best_sign < 0) c = -c;
    auto it = out.terms.find(best);
    if (it == out.terms.end()) {
        out.terms.emplace(best, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) out.terms.erase(it);
    }
}

/// Projects a chain with reduced a_0 to the reduced cyclic complex.
/// Throws if some a_0 carries a unit component.
template <class K>
ReducedCyclicChain<K> reduce_cyclic(const Chain<K>& c) {
    const AlgebraSpec<K>& A = *c.A;
    ReducedCyclicChain<K> out;
    out.A = &A;
    for (auto& [key, v] : c.terms) {
        if (key[0] == A.unit_pivot)
            throw std::invalid_argument("reduce_cyclic: a_0 has a unit component");
        auto [cu, red] = A.split_unit(A.basis_vec(key[0]));
        if (!cu.is_zero())
            throw std::invalid_argument("reduce_cyclic: a_0 has a unit component");
        std::function<void(const Vec<K>&, const K&)> expand0 = [&](const Vec<K>& r0, const K& cc) {
            for (auto& [k0, x] : r0) {
                std::vector<int> t = key;
                t[0] = k0;
                add_reduced_orbit(out, t, cc * x);
            }
        };
        expand0(red, v);
    }
    return out;
}

/// Differential on the reduced cyclic complex: the chain boundary with every
/// slot projected back to the complement of k·1, in normal form.
template <class K>
ReducedCyclicChain<K> reduced_b(const ReducedCyclicChain<K>& rc) {
    const AlgebraSpec<K>& A = *rc.A;
    ReducedCyclicChain<K> out;
    out.A = &A;
    Chain<K> lift;
    lift.A = &A;
    for (auto& [key, v] : rc.terms) lift.add(key, v);
    Chain<K> b = boundary_b(lift);
    for (auto& [key, v] : b.terms) {
        // project slot 0
        auto [cu, red] = A.split_unit(A.basis_vec(key[0]));
        (void)cu;
        for (auto& [k0, x] : red) {
            std::vector<int> t = key;
            t[0] = k0;
            add_reduced_orbit(out, t, v * x);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix stabilization maps
// ---------------------------------------------------------------------------

/// a ↦ a·E_11 slotwise into the n×n matrix algebra (which must be
/// matrix_algebra(A, n) with the index layout used there).
template <class K>
PeriodicChain<K> inclusion_i(const PeriodicChain<K>& a, const AlgebraSpec<K>& M, int n) {
    const AlgebraSpec<K>& A = *a.A;
    const int r = A.dim();
    (void)n;
    PeriodicChain<K> out;
    out.A = &M;
    out.parity = a.parity;
    out.window = a.window;
    out.trust = a.trust;
    out.finite = a.finite;
    for (auto& [len, c] : a.comp) {
        Chain<K> img;
        img.A = &M;
        for (auto& [key, v] : c.terms) {
            std::vector<int> t(key.size());
            for (std::size_t i = 0; i < key.size(); ++i) t[i] = key[i];  // E_00 block: idx (0,0,k) = k
            img.add(t, v);
        }
        (void)r;
        out.put(len, std::move(img));
    }
    return out;
}

/// (a_0 m_0, ..., a_n m_n) ↦ tr(m_0...m_n)(a_0,...,a_n), extended linearly
/// over the matrix-unit basis of matrix_algebra(A, n).
template <class K>
PeriodicChain<K> trace_map(const PeriodicChain<K>& a, const AlgebraSpec<K>& A, int n) {
    const int r = A.dim();
    PeriodicChain<K> out;
    out.A = &A;
    out.parity = a.parity;
    out.window = a.window;
    out.trust = a.trust;
    out.finite = a.finite;
    for (auto& [len, c] : a.comp) {
        Chain<K> img;
        img.A = &A;
        for (auto& [key, v] : c.terms) {
            // decode (i_t, j_t, k_t); the matrix-unit word must close cyclically
            bool ok = true;
            int first_i = -1, prev_j = -1;
            std::vector<Vec<K>> slots;
            for (std::size_t t = 0; t < key.size(); ++t) {
                int k = key[t] % r;
                int ij = key[t] / r;
                int i = ij / n, j = ij % n;
                if (t == 0) first_i = i;
                else if (i != prev_j) { ok = false; break; }
                prev_j = j;
                slots.push_back(A.basis_vec(k));
            }
            if (!ok || prev_j != first_i) continue;
            add_tensor(img, slots, v);
        }
        out.put(len, std::move(img));
    }
    return out;
}

/// Connes–Karoubi character of an idempotent p = p² in matrix_algebra(A, n):
/// components tr(P) and (−1)^k (2k)!/k! tr((P−1/2) ⊗ P^{⊗2k}) up to the
/// window, traced down to A.
template <class K>
PeriodicChain<K> chern_idempotent(const AlgebraSpec<K>& A, const AlgebraSpec<K>& M, int n,
                                  const Vec<K>& p, int window) {
    if (!(M.mul(p, p) == p)) throw std::invalid_argument("chern_idempotent: p is not idempotent");
    const FieldCtx<K>& F = M.field;
    PeriodicChain<K> overM;
    overM.A = &M;
    overM.parity = 0;
    overM.window = window;
    overM.trust = window;
    overM.finite = false;
    {
        Chain<K> c0;
        c0.A = &M;
        add_tensor(c0, {p}, F.one());
        overM.put(0, std::move(c0));
    }
    Vec<K> half = p;
    {
        K minus_half = -(F.one() / (F.one() + F.one()));
        for (auto& [i, u] : M.unit) vec_add(half, i, minus_half * u);
    }
    K coeff = F.one();
    for (int k = 1; 2 * k <= window; ++k) {
        // (−1)^k (2k)!/k! = previous · (−(2k)(2k−1)/k)
        K num = F.of_long(2 * k) * F.of_long(2 * k - 1);
        coeff = -(coeff * num / F.of_long(k));
        std::vector<Vec<K>> slots;
        slots.push_back(half);
        for (int i = 0; i < 2 * k; ++i) slots.push_back(p);
        Chain<K> c;
        c.A = &M;
        add_tensor(c, slots, coeff);
        overM.put(2 * k, std::move(c));
    }
    return trace_map(overM, A, n);
}

} // namespace hochcalc
