#pragma once

#include "matrix.hpp"
#include "scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hochcalc {

/// Presentation of a finite-dimensional unital algebra over an exact field:
/// ordered basis, structure constants, optional grading (Z or Z/2), optional
/// degree-+1 differential. Immutable once validated.
template <class K>
struct AlgebraSpec {
    std::string name;
    FieldCtx<K> field;
    std::vector<std::string> basis;             // labels e_0..e_{r-1}
    Vec<K> unit;                                // coordinates of 1
    // structure constants: (i,j) -> sparse coords of e_i * e_j
    std::map<std::pair<int, int>, Vec<K>> mult;
    std::vector<long> degree;                   // per basis element; 0 if ungraded
    bool mod2 = false;                          // degrees live in Z/2
    std::optional<Matrix<K>> differential;      // degree +1, d^2 = 0, Leibniz

    // derived reduction data (see finalize_reduction)
    int unit_pivot = -1;                        // basis index carrying the unit
    std::vector<int> reduced;                   // basis indices spanning the complement of k·1
    std::vector<int> reduced_pos;               // basis index -> position in `reduced`, or -1

    int dim() const { return static_cast<int>(basis.size()); }
    int rdim() const { return static_cast<int>(reduced.size()); }

    long deg_basis(int i) const { return degree.empty() ? 0 : degree[i]; }

    /// Chooses the complement of k·1: the first basis index with a nonzero
    /// unit coordinate becomes the carrier, all others span the complement.
    void finalize_reduction() {
        unit_pivot = -1;
        for (auto& [i, c] : unit) {
            if (!c.is_zero()) { unit_pivot = i; break; }
        }
        if (unit_pivot < 0) throw std::runtime_error(name + ": unit vector is zero");
        reduced.clear();
        reduced_pos.assign(basis.size(), -1);
        for (int i = 0; i < dim(); ++i) {
            if (i == unit_pivot) continue;
            reduced_pos[i] = static_cast<int>(reduced.size());
            reduced.push_back(i);
        }
    }

    /// Splits x = c·1 + (reduced part); returns {c, coords of the reduced part
    /// in *full* basis indexing restricted to `reduced`}.
    std::pair<K, Vec<K>> split_unit(const Vec<K>& x) const {
        K c = field.zero();
        auto it = x.find(unit_pivot);
        if (it != x.end()) c = it->second / unit.at(unit_pivot);
        Vec<K> red = x;
        if (!c.is_zero())
            for (auto& [i, u] : unit) vec_add(red, i, -(c * u));
        red.erase(unit_pivot);
        return {c, red};
    }

    Vec<K> mul_basis(int i, int j) const {
        auto it = mult.find({i, j});
        return it == mult.end() ? Vec<K>{} : it->second;
    }

    Vec<K> mul(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out;
        for (auto& [i, a] : x)
            for (auto& [j, b] : y)
                vec_axpy(out, a * b, mul_basis(i, j));
        return out;
    }

    Vec<K> unit_vec() const { return unit; }

    Vec<K> basis_vec(int i) const { return Vec<K>{{i, field.one()}}; }

    Vec<K> apply_differential(const Vec<K>& x) const {
        if (!differential) throw std::runtime_error(name + ": no differential");
        return differential->apply(x);
    }

    bool graded() const {
        for (long d : degree) if (d != 0) return true;
        return false;
    }

    long norm_deg(long d) const { return mod2 ? (((d % 2) + 2) % 2) : d; }
};

template <class K>
struct Element {
    const AlgebraSpec<K>* A = nullptr;
    Vec<K> coords;
};

template <class K>
Element<K> multiply(const Element<K>& x, const Element<K>& y) {
    if (x.A != y.A) throw std::invalid_argument("multiply: algebra mismatch");
    return {x.A, x.A->mul(x.coords, y.coords)};
}

/// Validation report entry: human-readable description of one violation.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

template <class K>
ValidationReport validate_algebra(const AlgebraSpec<K>& A) {
    ValidationReport rep;
    const int r = A.dim();
    auto label = [&](int i) { return A.basis[static_cast<std::size_t>(i)]; };

    // unit: 1·e_i = e_i·1 = e_i
    for (int i = 0; i < r; ++i) {
        if (A.mul(A.unit, A.basis_vec(i)) != A.basis_vec(i))
            rep.violations.push_back("unit: 1*" + label(i) + " != " + label(i));
        if (A.mul(A.basis_vec(i), A.unit) != A.basis_vec(i))
            rep.violations.push_back("unit: " + label(i) + "*1 != " + label(i));
    }
    // associativity on all basis triples
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                Vec<K> lhs = A.mul(A.mul_basis(i, j), A.basis_vec(k));
                Vec<K> rhs = A.mul(A.basis_vec(i), A.mul_basis(j, k));
                if (lhs != rhs)
                    rep.violations.push_back("associativity fails on (" + label(i) + "," +
                                             label(j) + "," + label(k) + ")");
            }
    // grading: c_{ij}^k != 0 => deg e_k = deg e_i + deg e_j
    if (!A.degree.empty()) {
        for (auto& [ij, v] : A.mult)
            for (auto& [k, c] : v) {
                if (c.is_zero()) continue;
                long want = A.norm_deg(A.deg_basis(ij.first) + A.deg_basis(ij.second));
                if (A.norm_deg(A.deg_basis(k)) != want)
                    rep.violations.push_back("grading fails on " + label(ij.first) + "*" +
                                             label(ij.second) + " -> " + label(k));
            }
        for (auto& [i, c] : A.unit)
            if (!c.is_zero() && A.norm_deg(A.deg_basis(i)) != 0)
                rep.violations.push_back("grading: unit has a nonzero-degree component " + label(i));
    }
    // differential: degree +1, d^2 = 0, Leibniz
    if (A.differential) {
        const Matrix<K>& d = *A.differential;
        if (d.rows() != static_cast<std::size_t>(r) || d.cols() != static_cast<std::size_t>(r)) {
            rep.violations.push_back("differential has wrong shape");
            return rep;
        }
        if (!d.compose(d).is_zero()) rep.violations.push_back("differential: d^2 != 0");
        for (auto& [rc, c] : d.entries()) {
            if (A.norm_deg(A.deg_basis(static_cast<int>(rc.first))) !=
                A.norm_deg(A.deg_basis(static_cast<int>(rc.second)) + 1))
                rep.violations.push_back("differential is not homogeneous of degree +1");
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                // d(e_i e_j) = d(e_i) e_j + (-1)^{deg e_i} e_i d(e_j)
                Vec<K> lhs = d.apply(A.mul_basis(i, j));
                Vec<K> rhs = A.mul(d.apply(A.basis_vec(i)), A.basis_vec(j));
                K s = sign_of(A.deg_basis(i), A.field);
                Vec<K> second = A.mul(A.basis_vec(i), d.apply(A.basis_vec(j)));
                for (auto& [k, c] : second) vec_add(rhs, k, s * c);
                if (lhs != rhs)
                    rep.violations.push_back("differential: Leibniz fails on (" + label(i) + "," +
                                             label(j) + ")");
            }
    }
    return rep;
}

/// Algebra automorphism given by its matrix in the chosen basis.
template <class K>
struct AutomorphismSpec {
    const AlgebraSpec<K>* A = nullptr;
    std::string name;
    Matrix<K> matrix;

    Vec<K> apply(const Vec<K>& x) const { return matrix.apply(x); }
    bool is_identity() const {
        for (std::size_t i = 0; i < matrix.rows(); ++i)
            for (std::size_t j = 0; j < matrix.cols(); ++j) {
                K want = (i == j) ? A->field.one() : A->field.zero();
                if (matrix.get(i, j) != want) return false;
            }
        return true;
    }
};

template <class K>
AutomorphismSpec<K> identity_automorphism(const AlgebraSpec<K>& A) {
    AutomorphismSpec<K> a;
    a.A = &A;
    a.name = "id";
    a.matrix = Matrix<K>(A.basis.size(), A.basis.size());
    for (int i = 0; i < A.dim(); ++i) a.matrix.add(i, i, A.field.one());
    return a;
}

template <class K>
ValidationReport validate_automorphism(const AutomorphismSpec<K>& a) {
    ValidationReport rep;
    const AlgebraSpec<K>& A = *a.A;
    if (a.matrix.rows() != A.basis.size() || a.matrix.cols() != A.basis.size()) {
        rep.violations.push_back(a.name + ": wrong shape");
        return rep;
    }
    if (rank(a.matrix) != A.basis.size())
        rep.violations.push_back(a.name + ": not invertible");
    if (a.apply(A.unit) != A.unit) rep.violations.push_back(a.name + ": does not fix 1");
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            Vec<K> lhs = a.apply(A.mul_basis(i, j));
            Vec<K> rhs = A.mul(a.apply(A.basis_vec(i)), a.apply(A.basis_vec(j)));
            if (lhs != rhs)
                rep.violations.push_back(a.name + ": not multiplicative on (" + A.basis[i] + "," +
                                         A.basis[j] + ")");
        }
    for (auto& [rc, c] : a.matrix.entries())
        if (A.norm_deg(A.deg_basis(static_cast<int>(rc.first))) !=
            A.norm_deg(A.deg_basis(static_cast<int>(rc.second))))
            rep.violations.push_back(a.name + ": not degree-preserving");
    return rep;
}

template <class K>
Element<K> apply_automorphism(const AutomorphismSpec<K>& a, const Element<K>& x) {
    if (a.A != x.A) throw std::invalid_argument("apply_automorphism: algebra mismatch");
    return {x.A, a.apply(x.coords)};
}

/// n x n matrix algebra over A. Basis: e_{ij} ⊗ (basis of A), index
/// (i*n + j)*r + k, unit = Σ e_ii ⊗ 1.
template <class K>
AlgebraSpec<K> matrix_algebra(const AlgebraSpec<K>& A, int n) {
    if (n < 1) throw std::invalid_argument("matrix_algebra: n must be >= 1");
    const int r = A.dim();
    AlgebraSpec<K> M;
    M.name = "M" + std::to_string(n) + "(" + A.name + ")";
    M.field = A.field;
    M.mod2 = A.mod2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < r; ++k) {
                M.basis.push_back("E" + std::to_string(i) + std::to_string(j) + "*" + A.basis[k]);
                M.degree.push_back(A.deg_basis(k));
            }
    auto idx = [&](int i, int j, int k) { return (i * n + j) * r + k; };
    for (auto& [i, c] : A.unit)
        for (int t = 0; t < n; ++t) vec_add(M.unit, idx(t, t, i), c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int j2 = 0; j2 < n; ++j2)
                for (int l = 0; l < n; ++l)
                    for (int k1 = 0; k1 < r; ++k1)
                        for (int k2 = 0; k2 < r; ++k2) {
                            if (j != j2) continue;
                            Vec<K> prod = A.mul_basis(k1, k2);
                            if (prod.empty()) continue;
                            Vec<K> out;
                            for (auto& [k3, c] : prod) vec_add(out, idx(i, l, k3), c);
                            M.mult[{idx(i, j, k1), idx(j2, l, k2)}] = std::move(out);
                        }
    if (A.differential) {
        Matrix<K> d(M.basis.size(), M.basis.size());
        for (auto& [rc, c] : A.differential->entries())
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    d.add(idx(i, j, static_cast<int>(rc.first)), idx(i, j, static_cast<int>(rc.second)), c);
        M.differential = std::move(d);
    }
    M.finalize_reduction();
    return M;
}

// ---------------------------------------------------------------------------
// Standard fixtures
// ---------------------------------------------------------------------------

template <class K>
AlgebraSpec<K> make_truncated_poly(const FieldCtx<K>& F, int order, const std::string& name) {
    // k[x]/(x^order), basis 1, x, ..., x^{order-1}
    AlgebraSpec<K> A;
    A.name = name;
    A.field = F;
    for (int i = 0; i < order; ++i)
        A.basis.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x" + std::to_string(i)));
    A.degree.assign(order, 0);
    A.unit = {{0, F.one()}};
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            if (i + j < order) A.mult[{i, j}] = Vec<K>{{i + j, F.one()}};
    A.finalize_reduction();
    return A;
}

template <class K>
AlgebraSpec<K> fixture_a2(const FieldCtx<K>& F) { return make_truncated_poly(F, 2, "A2"); }

template <class K>
AlgebraSpec<K> fixture_a3(const FieldCtx<K>& F) { return make_truncated_poly(F, 3, "A3"); }

/// k x k with basis u = (1,1), e = (1,0); e idempotent, u e = e.
template <class K>
AlgebraSpec<K> fixture_kk(const FieldCtx<K>& F) {
    AlgebraSpec<K> A;
    A.name = "KK";
    A.field = F;
    A.basis = {"u", "e"};
    A.degree = {0, 0};
    A.unit = {{0, F.one()}};
    A.mult[{0, 0}] = {{0, F.one()}};
    A.mult[{0, 1}] = {{1, F.one()}};
    A.mult[{1, 0}] = {{1, F.one()}};
    A.mult[{1, 1}] = {{1, F.one()}};
    A.finalize_reduction();
    return A;
}

/// Upper-triangular 2x2 matrices, basis e11, e22, e12.
template <class K>
AlgebraSpec<K> fixture_t2(const FieldCtx<K>& F) {
    AlgebraSpec<K> A;
    A.name = "T2";
    A.field = F;
    A.basis = {"e11", "e22", "e12"};
    A.degree = {0, 0, 0};
    A.unit = {{0, F.one()}, {1, F.one()}};
    auto one = [&](int k) { return Vec<K>{{k, F.one()}}; };
    A.mult[{0, 0}] = one(0);
    A.mult[{1, 1}] = one(1);
    A.mult[{0, 2}] = one(2);  // e11 e12 = e12
    A.mult[{2, 1}] = one(2);  // e12 e22 = e12
    // all other products vanish
    A.finalize_reduction();
    return A;
}

/// k[θ]/(θ²−1), Z/2-graded with θ odd.
template <class K>
AlgebraSpec<K> fixture_cl1(const FieldCtx<K>& F) {
    AlgebraSpec<K> A;
    A.name = "CL1";
    A.field = F;
    A.basis = {"1", "th"};
    A.degree = {0, 1};
    A.mod2 = true;
    A.unit = {{0, F.one()}};
    A.mult[{0, 0}] = {{0, F.one()}};
    A.mult[{0, 1}] = {{1, F.one()}};
    A.mult[{1, 0}] = {{1, F.one()}};
    A.mult[{1, 1}] = {{0, F.one()}};  // θ² = 1
    A.finalize_reduction();
    return A;
}

/// Three-dimensional differential graded fixture: 1, u (deg 1), v (deg 2),
/// ∂u = v, all products of u, v vanish.
template <class K>
AlgebraSpec<K> fixture_dg1(const FieldCtx<K>& F) {
    AlgebraSpec<K> A;
    A.name = "DG1";
    A.field = F;
    A.basis = {"1", "u", "v"};
    A.degree = {0, 1, 2};
    A.unit = {{0, F.one()}};
    A.mult[{0, 0}] = {{0, F.one()}};
    A.mult[{0, 1}] = {{1, F.one()}};
    A.mult[{1, 0}] = {{1, F.one()}};
    A.mult[{0, 2}] = {{2, F.one()}};
    A.mult[{2, 0}] = {{2, F.one()}};
    Matrix<K> d(3, 3);
    d.add(2, 1, F.one());  // ∂u = v
    A.differential = std::move(d);
    A.finalize_reduction();
    return A;
}

/// Exterior algebra on one generator of degree 1 (integer-graded).
template <class K>
AlgebraSpec<K> fixture_gr1(const FieldCtx<K>& F) {
    AlgebraSpec<K> A;
    A.name = "GR1";
    A.field = F;
    A.basis = {"1", "th"};
    A.degree = {0, 1};
    A.unit = {{0, F.one()}};
    A.mult[{0, 0}] = {{0, F.one()}};
    A.mult[{0, 1}] = {{1, F.one()}};
    A.mult[{1, 0}] = {{1, F.one()}};
    // θ² = 0
    A.finalize_reduction();
    return A;
}

template <class K>
AlgebraSpec<K> fixture_m2(const FieldCtx<K>& F) {
    // M_2(k) presented directly: basis e11, e12, e21, e22
    AlgebraSpec<K> A;
    A.name = "M2";
    A.field = F;
    A.basis = {"e11", "e12", "e21", "e22"};
    A.degree = {0, 0, 0, 0};
    A.unit = {{0, F.one()}, {3, F.one()}};
    auto idx = [](int i, int j) { return 2 * i + j; };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                A.mult[{idx(i, j), idx(j, l)}] = Vec<K>{{idx(i, l), F.one()}};
    A.finalize_reduction();
    return A;
}

/// Swap automorphism of KK: exchanges (1,0) and (0,1). In the (u, e) basis:
/// σ(u) = u, σ(e) = u − e.
template <class K>
AutomorphismSpec<K> kk_swap(const AlgebraSpec<K>& KK) {
    AutomorphismSpec<K> s;
    s.A = &KK;
    s.name = "sigma";
    s.matrix = Matrix<K>(2, 2);
    s.matrix.add(0, 0, KK.field.one());
    s.matrix.add(0, 1, KK.field.one());
    s.matrix.add(1, 1, -KK.field.one());
    return s;
}

/// Conjugation of T2 by diag(1,−1): fixes e11, e22, negates e12.
template <class K>
AutomorphismSpec<K> t2_conj(const AlgebraSpec<K>& T2) {
    AutomorphismSpec<K> s;
    s.A = &T2;
    s.name = "conj";
    s.matrix = Matrix<K>(3, 3);
    s.matrix.add(0, 0, T2.field.one());
    s.matrix.add(1, 1, T2.field.one());
    s.matrix.add(2, 2, -T2.field.one());
    return s;
}

/// x -> −x on A3 (fixes 1 and x²).
template <class K>
AutomorphismSpec<K> a3_negate(const AlgebraSpec<K>& A3) {
    AutomorphismSpec<K> s;
    s.A = &A3;
    s.name = "neg";
    s.matrix = Matrix<K>(3, 3);
    s.matrix.add(0, 0, A3.field.one());
    s.matrix.add(1, 1, -A3.field.one());
    s.matrix.add(2, 2, A3.field.one());
    return s;
}

} // namespace hochcalc
