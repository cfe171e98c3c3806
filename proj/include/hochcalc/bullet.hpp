#pragma once

#include "etensor.hpp"

namespace hochcalc {

/// Convention switches for the readings the source formulas leave open.
/// Values are pinned by the chain-map identity suites; see the tests.
struct BulletOpts {
    // wraparound exponent pieces; windows are over letter weights |a_i|
    int b2_d0_use_deg = 1;   // leading-piece multiplier: deg D_0 (1) or |D_0| (0)
    int b2_d0_incl = 0;      // leading-piece window includes i0 (1) or starts at i0+1 (0)
    int b2_mid_incl = 0;     // middle-piece window includes ip (1) or starts at ip+1 (0)
    int b2_dm_all = 1;       // |D_m| · Σ_{0..n}
    int b2_dm_pre = 0;       // |D_m| · Σ_{0..q-1}
    int b2_dm_suf = 0;       // |D_m| · Σ_{q..n}
    int b2_dm_i0 = 0;        // |D_m| · Σ_{0..i0}
    int b2_dm_tuple = 1;     // |D_m| · Σ_{p<m} |D_p|
    int b2_dm_const = 1;     // |D_m| alone
    // admissibility of the distinguished letter's insertion in the rotation
    // part: 0 = strictly after the slot of a_0 (never consuming it),
    // 1 = at-or-after that slot (consuming a_0 from its slot on allowed).
    int lambda_filter = 1;
    // whether the rotation part filters at all (full λ when false).
    bool filter_lambda = true;
};

inline const BulletOpts& default_bullet_opts() {
    static BulletOpts opts;
    return opts;
}

// ---------------------------------------------------------------------------
// Configuration enumeration shared by every bullet-type pairing.
// Arities ar[0..m]; letters of the acted-on word are indexed 1..n (slot 0 is
// distinguished). Block of piece p starts after letter ip[p].
// ---------------------------------------------------------------------------

inline void for_each_b1(int n, const std::vector<int>& ar,
                        const std::function<void(const std::vector<int>&)>& f) {
    const int m = static_cast<int>(ar.size()) - 1;
    std::vector<int> ip(m + 1, 0);
    std::function<void(int, int)> rec = [&](int p, int minpos) {
        if (p > m) {
            f(ip);
            return;
        }
        for (int i = minpos; i + ar[p] <= n; ++i) {
            ip[p] = i;
            rec(p + 1, i + ar[p]);
        }
    };
    if (ar[0] > n) return;
    ip[0] = 0;  // the leading piece always consumes the prefix
    rec(1, ar[0]);
}

struct B2Cfg {
    int q = 0;               // wrap block starts at letter q (q = n+1: starts at a_0)
    int i0 = 0;              // wrap block ends at letter i0 (>= 0, so a_0 is inside)
    std::vector<int> ip;     // block starts for pieces 1..m-1
};

inline void for_each_b2(int n, const std::vector<int>& ar,
                        const std::function<void(const B2Cfg&)>& f) {
    const int m = static_cast<int>(ar.size()) - 1;
    if (m == 0) return;  // the wrap piece and the leading piece must differ
    const int dm = ar[m];
    B2Cfg cfg;
    cfg.ip.assign(std::max(0, m - 1), 0);
    for (int q = 1; q <= n + 1; ++q) {
        int i0 = dm - (n + 1 - q) - 1;
        if (i0 < 0 || i0 >= q) continue;
        if (i0 + ar[0] > q - 1) continue;  // leading piece must fit before q
        cfg.q = q;
        cfg.i0 = i0;
        std::function<void(int, int)> rec = [&](int p, int minpos) {
            if (p > m - 1) {
                f(cfg);
                return;
            }
            for (int i = minpos; i + ar[p] <= q - 1; ++i) {
                cfg.ip[p - 1] = i;
                rec(p + 1, i + ar[p]);
            }
        };
        rec(1, i0 + ar[0]);
    }
}

/// Insertion configurations of pieces with arities ar[0..m] into letters
/// 1..L (position L+1 = after the last letter; only arity-0 pieces fit
/// there). jpos[r] is the first letter of piece r's block, or the gap
/// position for arity-0 pieces.
inline void for_each_lambda(int L, const std::vector<int>& ar,
                            const std::function<void(const std::vector<int>&)>& f) {
    const int m = static_cast<int>(ar.size()) - 1;
    std::vector<int> jpos(m + 1, 1);
    std::function<void(int, int)> rec = [&](int r, int minpos) {
        if (r > m) {
            f(jpos);
            return;
        }
        int hi = (ar[r] == 0) ? L + 1 : L - ar[r] + 1;
        for (int j = minpos; j <= hi; ++j) {
            jpos[r] = j;
            rec(r + 1, j + ar[r]);
        }
    };
    rec(0, 1);
}

// ---------------------------------------------------------------------------
// The chain-side pairing C_*(A,A) ⊗ C_*(E*,E*) → C_*(A,A).
// ---------------------------------------------------------------------------

namespace detail {

template <class K>
Vec<K> eval_block(const Cochain<K>& D, const std::vector<int>& key, int from) {
    // D applied to letters key[from .. from+arity-1] (all reduced basis)
    std::vector<int> t(key.begin() + from, key.begin() + from + D.arity);
    return D.on_basis(t);
}

} // namespace detail

/// The non-rotating parts: value-into-slot insertions (part one) and the
/// wraparound applications containing a_0 (part two). An optional
/// automorphism twists the letters that sit after a_0 inside the wrap block.
template <class K>
Chain<K> bullet12(const Chain<K>& a, const CochainTensor<K>& x,
                  const BulletOpts& opts = default_bullet_opts(),
                  const AutomorphismSpec<K>* twist = nullptr) {
    if (a.A != x.A) throw std::invalid_argument("bullet: algebra mismatch");
    const AlgebraSpec<K>& A = *a.A;
    Chain<K> out;
    out.A = a.A;
    for (auto& [key, kc] : a.terms) {
        const int n = static_cast<int>(key.size()) - 1;
        for (auto& [tkey, tc] : x.terms) {
            const int m = static_cast<int>(tkey.size()) - 1;
            std::vector<Cochain<K>> tup;
            tup.reserve(tkey.size());
            for (auto& L : tkey) tup.push_back(eletter_cochain(A, L));
            std::vector<int> ar(m + 1);
            for (int p = 0; p <= m; ++p) ar[p] = tup[p].arity;
            const K coeff = kc * tc;

            // part one
            for_each_b1(n, ar, [&](const std::vector<int>& ip) {
                std::vector<Vec<K>> vals(m + 1);
                for (int p = 0; p <= m; ++p) {
                    vals[p] = detail::eval_block(tup[p], key, ip[p] + 1);
                    if (vals[p].empty()) return;
                }
                long ex = (tup[0].bar() + 1) * signs::wsum(A, key, 1, n);
                for (int p = 1; p <= m; ++p)
                    ex += tup[p].bar() * signs::wsum(A, key, ip[p] + 1, n);
                std::vector<Vec<K>> slots;
                slots.push_back(A.mul(A.basis_vec(key[0]), vals[0]));
                int p = 1, i = ar[0] + 1;
                while (i <= n + 1) {
                    while (p <= m && ip[p] + 1 == i) {
                        slots.push_back(vals[p]);
                        i += ar[p];
                        ++p;
                    }
                    if (i <= n) slots.push_back(A.basis_vec(key[i]));
                    ++i;
                }
                add_tensor(out, slots, coeff * sign_of(ex, A.field));
            });

            // part two
            for_each_b2(n, ar, [&](const B2Cfg& cfg) {
                std::vector<Vec<K>> wrap_args;
                for (int i = cfg.q; i <= n; ++i) wrap_args.push_back(A.basis_vec(key[i]));
                wrap_args.push_back(A.basis_vec(key[0]));
                for (int i = 1; i <= cfg.i0; ++i) {
                    Vec<K> v = A.basis_vec(key[i]);
                    if (twist) v = twist->apply(v);
                    wrap_args.push_back(v);
                }
                Vec<K> vm = eval(tup[m], wrap_args);
                if (vm.empty()) return;
                Vec<K> v0 = detail::eval_block(tup[0], key, cfg.i0 + 1);
                if (v0.empty()) return;
                long ex = signs::wsum(A, key, 0, cfg.q - 1) * signs::wsum(A, key, cfg.q, n);
                long d0mul = opts.b2_d0_use_deg ? (tup[0].bar() + 1) : tup[0].bar();
                ex += d0mul * signs::wsum(A, key, cfg.i0 + (opts.b2_d0_incl ? 0 : 1), cfg.q - 1);
                for (int p = 1; p <= m - 1; ++p)
                    ex += tup[p].bar() *
                          signs::wsum(A, key, cfg.ip[p - 1] + (opts.b2_mid_incl ? 0 : 1), cfg.q - 1);
                long dmw = tup[m].bar();
                if (opts.b2_dm_all) ex += dmw * signs::wsum(A, key, 0, n);
                if (opts.b2_dm_pre) ex += dmw * signs::wsum(A, key, 0, cfg.q - 1);
                if (opts.b2_dm_suf) ex += dmw * signs::wsum(A, key, cfg.q, n);
                if (opts.b2_dm_i0) ex += dmw * signs::wsum(A, key, 0, cfg.i0);
                if (opts.b2_dm_tuple) {
                    long s = 0;
                    for (int p = 0; p <= m - 1; ++p) s += tup[p].bar();
                    ex += dmw * (((s % 2) + 2) % 2);
                }
                if (opts.b2_dm_const) ex += dmw;
                std::vector<Vec<K>> slots;
                slots.push_back(A.mul(vm, v0));
                std::vector<Vec<K>> vals(m);
                for (int p = 1; p <= m - 1; ++p)
                    vals[p] = detail::eval_block(tup[p], key, cfg.ip[p - 1] + 1);
#ifdef HOCHCALC_BULLET_TRACE
                {
                    std::cerr << "[b2] q=" << cfg.q << " i0=" << cfg.i0 << " ex=" << ex
                              << " coeff=" << coeff.str() << " vm=";
                    for (auto& [bb, cc] : vm) std::cerr << cc.str() << "e" << bb << ",";
                    std::cerr << " v0=";
                    for (auto& [bb, cc] : v0) std::cerr << cc.str() << "e" << bb << ",";
                    std::cerr << "\n";
                }
#endif
                int p = 1, i = cfg.i0 + ar[0] + 1;
                while (i <= cfg.q) {
                    while (p <= m - 1 && cfg.ip[p - 1] + 1 == i) {
                        slots.push_back(vals[p]);
                        i += ar[p];
                        ++p;
                    }
                    if (i <= cfg.q - 1) slots.push_back(A.basis_vec(key[i]));
                    ++i;
                }
                add_tensor(out, slots, coeff * sign_of(ex, A.field));
            });
        }
    }
    return out;
}

/// The rotation part: tuple rotations against chain rotations, values landing
/// in a word opened by the unit. Output lengths differ from the input; the
/// periodic layer dispatches per component.
template <class K>
Chain<K> bullet3(const Chain<K>& a, const CochainTensor<K>& x,
                 const BulletOpts& opts = default_bullet_opts()) {
    if (a.A != x.A) throw std::invalid_argument("bullet3: algebra mismatch");
    const AlgebraSpec<K>& A = *a.A;
    Chain<K> out;
    out.A = a.A;
    for (auto& [key, kc] : a.terms) {
        const int n = static_cast<int>(key.size()) - 1;
        const int L = n + 1;  // rotated letters sit at positions 1..L
        for (auto& [tkey, tc] : x.terms) {
            const int m = static_cast<int>(tkey.size()) - 1;
            std::vector<Cochain<K>> tup;
            tup.reserve(tkey.size());
            for (auto& Lt : tkey) tup.push_back(eletter_cochain(A, Lt));
            const K coeff = kc * tc;
            for (int p = 0; p <= m; ++p) {
                // cyclic order D_p, ..., D_m, D_0, ..., D_{p-1}
                std::vector<int> ord(m + 1);
                for (int r = 0; r <= m; ++r) ord[r] = (p + r) % (m + 1);
                std::vector<int> ar(m + 1);
                for (int r = 0; r <= m; ++r) ar[r] = tup[ord[r]].arity;
                long pre = 0;
                {
                    long s1 = 0, s2 = 0, sall = 0;
                    for (int r = 0; r < p; ++r) s1 += tup[r].bar() + 1;
                    for (int r = p; r <= m; ++r) s2 += tup[r].bar() + 1;
                    for (int r = 0; r <= m; ++r) sall += tup[r].bar();
                    pre = s1 * s2 + sall;
                }
                for (int j = 0; j <= n; ++j) {
                    std::vector<int> rot(L);
                    for (int i = 0; i < L; ++i) rot[i] = key[(j + i) % (n + 1)];
                    const int pos_a0 = (j == 0) ? 1 : (n + 2 - j);
                    long rotex = signs::wsum(A, key, j, n) * signs::wsum(A, key, 0, j - 1);
                    auto wsuffix = [&](int from) {  // Σ |rot_i|, i >= from (1-based)
                        long s = 0;
                        for (int i = from; i <= L; ++i) s += wt(A, rot[i - 1]);
                        return ((s % 2) + 2) % 2;
                    };
                    for_each_lambda(L, ar, [&](const std::vector<int>& jpos) {
                        if (opts.filter_lambda) {
                            int r0 = -1;
                            for (int r = 0; r <= m; ++r)
                                if (ord[r] == 0) r0 = r;
                            int j0 = jpos[r0];
                            if (opts.lambda_filter == 0) {
                                if (!(j0 > pos_a0)) return;
                            } else {
                                if (!(j0 >= pos_a0)) return;
                            }
                        }
                        long ex = pre + rotex;
                        std::vector<Vec<K>> vals(m + 1);
                        for (int r = 0; r <= m; ++r) {
                            const Cochain<K>& D = tup[ord[r]];
                            std::vector<int> t(rot.begin() + (jpos[r] - 1),
                                               rot.begin() + (jpos[r] - 1) + D.arity);
                            vals[r] = D.on_basis(t);
                            if (vals[r].empty()) return;
                            ex += D.bar() * wsuffix(jpos[r]);
                        }
                        std::vector<Vec<K>> slots;
                        slots.push_back(A.unit_vec());
                        int r = 0, i = 1;
                        while (i <= L + 1) {
                            while (r <= m && jpos[r] == i) {
                                slots.push_back(vals[r]);
                                i += ar[r];
                                ++r;
                            }
                            if (i <= L) slots.push_back(A.basis_vec(rot[i - 1]));
                            ++i;
                        }
                        add_tensor(out, slots, coeff * sign_of(ex, A.field));
                    });
                }
            }
        }
    }
    return out;
}

/// Full Hochschild-level pairing a • x (no rotation part).
template <class K>
Chain<K> bullet(const Chain<K>& a, const CochainTensor<K>& x,
                const BulletOpts& opts = default_bullet_opts()) {
    return bullet12(a, x, opts);
}

/// Cap product i_D(a) = (−1)^{deg a · deg D} a • (D), termwise in a.
template <class K>
Chain<K> cap(const Cochain<K>& D, const Chain<K>& a,
             const BulletOpts& opts = default_bullet_opts()) {
    const AlgebraSpec<K>& A = *a.A;
    CochainTensor<K> x = tensor_of(A, {D}, A.field.one());
    Chain<K> out;
    out.A = a.A;
    for (auto& [key, c] : a.terms) {
        Chain<K> single;
        single.A = a.A;
        single.add(key, c * sign_of(tensor_deg(A, key) * D.deg(), A.field));
        out = chain_add(out, bullet12(single, x, opts));
    }
    return out;
}

/// Lie derivative L_D(a) = (−1)^{|D| deg a} a • (1, D), termwise in a.
template <class K>
Chain<K> lie_derivative(const Cochain<K>& D, const Chain<K>& a,
                        const BulletOpts& opts = default_bullet_opts()) {
    const AlgebraSpec<K>& A = *a.A;
    CochainTensor<K> x = tensor_of(A, {unit_cochain(A), D}, A.field.one());
    Chain<K> out;
    out.A = a.A;
    for (auto& [key, c] : a.terms) {
        Chain<K> single;
        single.A = a.A;
        single.add(key, c * sign_of(tensor_deg(A, key) * D.bar(), A.field));
        out = chain_add(out, bullet12(single, x, opts));
    }
    return out;
}

} // namespace hochcalc
