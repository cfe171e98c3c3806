#pragma once

#include "algebra.hpp"

#include <functional>
#include <map>
#include <vector>

namespace hochcalc {

/// Normalized Hochschild cochain: multilinear map on the chosen complement
/// of k·1, valued in A. Stored sparsely on tuples of reduced basis indices
/// (full-basis indexing, entries never equal to the unit carrier).
/// deg D = mapdeg + arity, |D| = deg D − 1.
template <class K>
struct Cochain {
    const AlgebraSpec<K>* A = nullptr;
    int arity = 0;
    long mapdeg = 0;
    std::map<std::vector<int>, Vec<K>> vals;

    long deg() const { return mapdeg + arity; }
    long bar() const { return deg() - 1; }  // |D|

    bool is_zero() const { return vals.empty(); }

    void add_value(const std::vector<int>& t, const Vec<K>& v) {
        if (v.empty()) return;
        auto it = vals.find(t);
        if (it == vals.end()) {
            vals.emplace(t, v);
        } else {
            for (auto& [k, c] : v) vec_add(it->second, k, c);
            if (it->second.empty()) vals.erase(it);
        }
    }

    /// Direct lookup on a tuple of reduced basis indices.
    Vec<K> on_basis(const std::vector<int>& t) const {
        auto it = vals.find(t);
        return it == vals.end() ? Vec<K>{} : it->second;
    }

    bool operator==(const Cochain& o) const { return arity == o.arity && vals == o.vals; }
    bool operator<(const Cochain& o) const {
        if (arity != o.arity) return arity < o.arity;
        if (mapdeg != o.mapdeg) return mapdeg < o.mapdeg;
        return vals < o.vals;
    }
};

template <class K>
Cochain<K> zero_cochain(const AlgebraSpec<K>& A, const Vec<K>& value, long mapdeg = 0) {
    Cochain<K> D;
    D.A = &A;
    D.arity = 0;
    D.mapdeg = mapdeg;
    if (!value.empty()) D.vals.emplace(std::vector<int>{}, value);
    return D;
}

/// The unit of the cup algebra: the zero-cochain with value 1.
template <class K>
Cochain<K> unit_cochain(const AlgebraSpec<K>& A) {
    return zero_cochain(A, A.unit_vec(), 0);
}

/// Coefficient of the unit cochain inside an arity-0 cochain, and the
/// leftover with that part removed. Arity >= 1 cochains have no unit part.
template <class K>
std::pair<K, Cochain<K>> split_unit_cochain(const Cochain<K>& D) {
    if (D.arity != 0) return {D.A->field.zero(), D};
    auto it = D.vals.find(std::vector<int>{});
    if (it == D.vals.end()) return {D.A->field.zero(), D};
    auto [c, red] = D.A->split_unit(it->second);
    return {c, zero_cochain(*D.A, red, D.mapdeg)};
}

template <class K>
Cochain<K> scale(const Cochain<K>& D, const K& c) {
    Cochain<K> out;
    out.A = D.A;
    out.arity = D.arity;
    out.mapdeg = D.mapdeg;
    if (c.is_zero()) return out;
    for (auto& [t, v] : D.vals) {
        Vec<K> w;
        for (auto& [k, x] : v) w.emplace(k, c * x);
        out.vals.emplace(t, std::move(w));
    }
    return out;
}

template <class K>
Cochain<K> add(const Cochain<K>& D, const Cochain<K>& E) {
    if (D.A != E.A || D.arity != E.arity)
        throw std::invalid_argument("cochain add: shape mismatch");
    Cochain<K> out = D;
    for (auto& [t, v] : E.vals) out.add_value(t, v);
    return out;
}

/// Multilinear evaluation with arbitrary element arguments. Unit components
/// of the arguments vanish (the cochain is normalized).
template <class K>
Vec<K> eval(const Cochain<K>& D, const std::vector<Vec<K>>& args) {
    if (static_cast<int>(args.size()) != D.arity)
        throw std::invalid_argument("cochain eval: arity mismatch");
    Vec<K> out;
    std::vector<int> idx(args.size());
    std::vector<Vec<K>> red(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) red[i] = D.A->split_unit(args[i]).second;
    std::function<void(std::size_t, const K&)> rec = [&](std::size_t i, const K& c) {
        if (i == args.size()) {
            Vec<K> v = D.on_basis(idx);
            for (auto& [k, x] : v) vec_add(out, k, c * x);
            return;
        }
        for (auto& [k, x] : red[i]) {
            idx[i] = k;
            rec(i + 1, c * x);
        }
    };
    rec(0, D.A->field.one());
    return out;
}

/// All tuples of reduced basis indices of the given length, in lexicographic
/// order of positions over A.reduced.
template <class K>
void for_each_tuple(const AlgebraSpec<K>& A, int len, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> t(len);
    std::function<void(int)> rec = [&](int i) {
        if (i == len) { f(t); return; }
        for (int k : A.reduced) {
            t[i] = k;
            rec(i + 1);
        }
    };
    rec(0);
}

template <class K>
long wt(const AlgebraSpec<K>& A, int basis_idx) {  // |a| mod 2 of a basis element
    return ((A.deg_basis(basis_idx) - 1) % 2 + 2) % 2;
}

template <class K>
long eta(const AlgebraSpec<K>& A, const std::vector<int>& t, int upto) {
    // Σ_{i<upto} |t_i| mod 2 over cochain argument tuples (1-based η_j = eta(t, j))
    long s = 0;
    for (int i = 0; i < upto && i < static_cast<int>(t.size()); ++i) s += wt(A, t[i]);
    return ((s % 2) + 2) % 2;
}

/// Cup product: (D ⌣ E)(a_1..a_{d+e}) = (−1)^{deg E · η_d} D(a_1..a_d) E(..).
template <class K>
Cochain<K> cup(const Cochain<K>& D, const Cochain<K>& E) {
    if (D.A != E.A) throw std::invalid_argument("cup: algebra mismatch");
    const AlgebraSpec<K>& A = *D.A;
    Cochain<K> out;
    out.A = &A;
    out.arity = D.arity + E.arity;
    out.mapdeg = D.mapdeg + E.mapdeg;
    for (auto& [s, v] : D.vals)
        for (auto& [t, w] : E.vals) {
            std::vector<int> st = s;
            st.insert(st.end(), t.begin(), t.end());
            long ex = E.deg() * eta(A, st, D.arity);
            Vec<K> prod = A.mul(v, w);
            K sg = sign_of(ex, A.field);
            for (auto& [k, c] : prod) c = sg * c;
            out.add_value(st, prod);
        }
    return out;
}

/// Brace insertion D0{D1,...,Dm}: the full signed insertion sum.
/// Configurations: strictly increasing insertion slots of D0; the sign for
/// each placed D_p is (−1)^{η_{i_p} |D_p|} where i_p counts output arguments
/// strictly before D_p's block.
template <class K>
Cochain<K> brace(const Cochain<K>& D0, const std::vector<Cochain<K>>& ins) {
    const AlgebraSpec<K>& A = *D0.A;
    for (auto& E : ins)
        if (E.A != D0.A) throw std::invalid_argument("brace: algebra mismatch");
    const int m = static_cast<int>(ins.size());
    if (m == 0) return D0;
    Cochain<K> out;
    out.A = &A;
    out.mapdeg = D0.mapdeg;
    int total_ins_arity = 0;
    for (auto& E : ins) {
        out.mapdeg += E.mapdeg;
        total_ins_arity += E.arity;
    }
    out.arity = D0.arity - m + total_ins_arity;
    if (out.arity < 0 || m > D0.arity) return out;  // no interleaving exists
    if (D0.is_zero()) return out;
    for (auto& E : ins)
        if (E.is_zero()) return out;

    // choose slots 0 <= s_1 < s_2 < ... < s_m < d0
    std::vector<int> slots(m);
    std::function<void(int, int)> choose = [&](int p, int from) {
        if (p == m) {
            // i_p = raw args before slot s_p plus arities of earlier insertions
            std::vector<int> ipos(m);
            for (int q = 0; q < m; ++q) {
                int raw_before = slots[q] - q;
                int ins_before = 0;
                for (int r = 0; r < q; ++r) ins_before += ins[r].arity;
                ipos[q] = raw_before + ins_before;
            }
            for_each_tuple(A, out.arity, [&](const std::vector<int>& t) {
                long ex = 0;
                for (int q = 0; q < m; ++q) ex += eta(A, t, ipos[q]) * ins[q].bar();
                // assemble D0's argument list
                std::vector<Vec<K>> args;
                args.reserve(D0.arity);
                int pos = 0, q = 0;
                for (int slot = 0; slot < D0.arity; ++slot) {
                    if (q < m && slot == slots[q]) {
                        std::vector<Vec<K>> sub;
                        for (int u = 0; u < ins[q].arity; ++u) sub.push_back(A.basis_vec(t[pos++]));
                        args.push_back(eval(ins[q], sub));
                        ++q;
                    } else {
                        args.push_back(A.basis_vec(t[pos++]));
                    }
                }
                Vec<K> v = eval(D0, args);
                if (v.empty()) return;
                K sg = sign_of(ex, A.field);
                for (auto& [k, c] : v) c = sg * c;
                out.add_value(t, v);
            });
            return;
        }
        for (int s = from; s < D0.arity; ++s) {
            slots[p] = s;
            choose(p + 1, s + 1);
        }
    };
    choose(0, 0);
    return out;
}

/// Insertion (circle) product D ∘ E = D{E}.
template <class K>
Cochain<K> circle(const Cochain<K>& D, const Cochain<K>& E) {
    return brace(D, std::vector<Cochain<K>>{E});
}

/// Gerstenhaber bracket [D,E] = D∘E − (−1)^{|D||E|} E∘D.
template <class K>
Cochain<K> bracket(const Cochain<K>& D, const Cochain<K>& E) {
    Cochain<K> a = circle(D, E);
    Cochain<K> b = scale(circle(E, D), -sign_of(D.bar() * E.bar(), D.A->field));
    return add(a, b);
}

/// The product 2-form m(x, y) = (−1)^{deg x} x y. Not a normalized cochain
/// (defined on all of A); it only appears inside δ = [m,·] and the cup/brace
/// compatibility checks.
template <class K>
struct MultForm {
    const AlgebraSpec<K>* A;
    /// x given as homogeneous coords with known degree degx.
    Vec<K> apply(const Vec<K>& x, long degx, const Vec<K>& y) const {
        Vec<K> out = A->mul(x, y);
        if (sign_int(degx) < 0) {
            for (auto& [k, c] : out) c = -c;
        }
        return out;
    }
};

template <class K>
MultForm<K> multiplication_cochain(const AlgebraSpec<K>& A) { return MultForm<K>{&A}; }

/// Hochschild coboundary, the explicit three-part formula. Equals [m, ·].
template <class K>
Cochain<K> delta(const Cochain<K>& D) {
    const AlgebraSpec<K>& A = *D.A;
    const int d = D.arity;
    Cochain<K> out;
    out.A = &A;
    out.arity = d + 1;
    out.mapdeg = D.mapdeg;
    if (D.is_zero()) return out;
    for_each_tuple(A, d + 1, [&](const std::vector<int>& t) {
        Vec<K> acc;
        // (−1)^{|a_1||D| + |a_1| + 1} a_1 D(a_2..a_{d+1})
        {
            std::vector<Vec<K>> args;
            for (int i = 1; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = A.mul(A.basis_vec(t[0]), eval(D, args));
            long w1 = wt(A, t[0]);
            K sg = sign_of(w1 * D.bar() + w1 + 1, A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        // Σ_j (−1)^{|D| + η_j} D(a_1,..,a_j a_{j+1},..,a_{d+1})
        for (int j = 1; j <= d; ++j) {
            std::vector<Vec<K>> args;
            for (int i = 0; i < j - 1; ++i) args.push_back(A.basis_vec(t[i]));
            args.push_back(A.mul_basis(t[j - 1], t[j]));
            for (int i = j + 1; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = eval(D, args);
            K sg = sign_of(D.bar() + eta(A, t, j), A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        // (−1)^{|D| + η_d + 1} D(a_1..a_d) a_{d+1}
        {
            std::vector<Vec<K>> args;
            for (int i = 0; i < d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = A.mul(eval(D, args), A.basis_vec(t[d]));
            K sg = sign_of(D.bar() + eta(A, t, d) + 1, A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        out.add_value(t, acc);
    });
    return out;
}

/// δ computed as the bracket [m, D] = m∘D − (−1)^{|m||D|} D∘m with the
/// unnormalized 2-form m. Dual route for the (1.3) transcription above.
template <class K>
Cochain<K> delta_via_m(const Cochain<K>& D) {
    const AlgebraSpec<K>& A = *D.A;
    MultForm<K> m = multiplication_cochain(A);
    const int d = D.arity;
    Cochain<K> out;
    out.A = &A;
    out.arity = d + 1;
    out.mapdeg = D.mapdeg;
    if (D.is_zero()) return out;
    const long bar_m = 1;  // deg m = 2
    for_each_tuple(A, d + 1, [&](const std::vector<int>& t) {
        Vec<K> acc;
        // m ∘ D: j = 0 gives m(D(a_1..a_d), a_{d+1}); j = 1 gives m(a_1, D(a_2..)).
        {
            std::vector<Vec<K>> args;
            for (int i = 0; i < d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = eval(D, args);
            long degv = D.mapdeg;
            for (int i = 0; i < d; ++i) degv += A.deg_basis(t[i]);
            Vec<K> first = m.apply(v, degv, A.basis_vec(t[d]));
            for (auto& [k, c] : first) vec_add(acc, k, c);  // (−1)^{|D|·η_0} = +1
        }
        {
            std::vector<Vec<K>> args;
            for (int i = 1; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = m.apply(A.basis_vec(t[0]), A.deg_basis(t[0]), eval(D, args));
            K sg = sign_of(D.bar() * eta(A, t, 1), A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        // − (−1)^{|m||D|} D ∘ m: insertion of the product at position j
        for (int j = 0; j < d; ++j) {
            std::vector<Vec<K>> args;
            for (int i = 0; i < j; ++i) args.push_back(A.basis_vec(t[i]));
            long degx = A.deg_basis(t[j]);
            args.push_back(m.apply(A.basis_vec(t[j]), degx, A.basis_vec(t[j + 1])));
            for (int i = j + 2; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = eval(D, args);
            K sg = -sign_of(bar_m * D.bar() + bar_m * eta(A, t, j), A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        out.add_value(t, acc);
    });
    return out;
}

/// Cochain differential induced by the algebra differential: ∂D = [∂, D].
template <class K>
Cochain<K> internal_differential(const Cochain<K>& D) {
    const AlgebraSpec<K>& A = *D.A;
    if (!A.differential) throw std::runtime_error("internal_differential: no differential");
    Cochain<K> out;
    out.A = &A;
    out.arity = D.arity;
    out.mapdeg = D.mapdeg + 1;
    if (D.is_zero()) return out;
    for_each_tuple(A, D.arity, [&](const std::vector<int>& t) {
        Vec<K> acc;
        // ∂(D(a_1..a_d))
        {
            std::vector<Vec<K>> args;
            for (int i = 0; i < D.arity; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = A.apply_differential(eval(D, args));
            for (auto& [k, c] : v) vec_add(acc, k, c);
        }
        // − (−1)^{|D|} Σ_j (−1)^{η_j} D(a_1,..,∂a_j,..)
        for (int j = 0; j < D.arity; ++j) {
            std::vector<Vec<K>> args;
            for (int i = 0; i < D.arity; ++i)
                args.push_back(i == j ? A.apply_differential(A.basis_vec(t[i])) : A.basis_vec(t[i]));
            Vec<K> v = eval(D, args);
            K sg = -sign_of(D.bar() + eta(A, t, j), A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        out.add_value(t, acc);
    });
    return out;
}

/// Lazy brace lift: D̄(E_1,...,E_k) = D{E_1,...,E_k}, evaluated per tuple.
template <class K>
Cochain<K> brace_lift_eval(const Cochain<K>& D, const std::vector<Cochain<K>>& args) {
    return brace(D, args);
}

} // namespace hochcalc
