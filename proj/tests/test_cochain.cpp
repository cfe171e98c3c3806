#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hochcalc/random_gen.hpp"

using namespace hochcalc;

namespace {

FieldCtx<Rat> Q;

template <class K>
Cochain<K> cochain_from(const AlgebraSpec<K>& A, int arity, long mapdeg,
                        std::vector<std::pair<std::vector<int>, Vec<K>>> entries) {
    Cochain<K> D;
    D.A = &A;
    D.arity = arity;
    D.mapdeg = mapdeg;
    for (auto& [t, v] : entries) D.add_value(t, v);
    return D;
}

/// Textbook normalized Hochschild coboundary, coded independently of the
/// engine: (δf)(a_1..a_{d+1}) = a_1 f(...) + Σ (−1)^j f(..a_j a_{j+1}..)
/// + (−1)^{d+1} f(...) a_{d+1}. Ungraded algebras only.
template <class K>
Cochain<K> textbook_delta(const Cochain<K>& D) {
    const AlgebraSpec<K>& A = *D.A;
    const int d = D.arity;
    Cochain<K> out;
    out.A = &A;
    out.arity = d + 1;
    out.mapdeg = D.mapdeg;
    for_each_tuple(A, d + 1, [&](const std::vector<int>& t) {
        Vec<K> acc;
        {
            std::vector<Vec<K>> args;
            for (int i = 1; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = A.mul(A.basis_vec(t[0]), eval(D, args));
            for (auto& [k, c] : v) vec_add(acc, k, c);
        }
        for (int j = 1; j <= d; ++j) {
            std::vector<Vec<K>> args;
            for (int i = 0; i < j - 1; ++i) args.push_back(A.basis_vec(t[i]));
            args.push_back(A.mul_basis(t[j - 1], t[j]));
            for (int i = j + 1; i <= d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = eval(D, args);
            K sg = sign_of(j, A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        {
            std::vector<Vec<K>> args;
            for (int i = 0; i < d; ++i) args.push_back(A.basis_vec(t[i]));
            Vec<K> v = A.mul(eval(D, args), A.basis_vec(t[d]));
            K sg = sign_of(d + 1, A.field);
            for (auto& [k, c] : v) vec_add(acc, k, sg * c);
        }
        out.add_value(t, acc);
    });
    return out;
}

std::vector<AlgebraSpec<Rat>> graded_and_ungraded_fixtures() {
    std::vector<AlgebraSpec<Rat>> v;
    v.push_back(fixture_a2(Q));
    v.push_back(fixture_a3(Q));
    v.push_back(fixture_t2(Q));
    v.push_back(fixture_kk(Q));
    v.push_back(fixture_cl1(Q));
    v.push_back(fixture_gr1(Q));
    v.push_back(fixture_dg1(Q));
    return v;
}

} // namespace

TEST_CASE("cup unit: the zero-cochain with value 1 is a two-sided unit") {
    SplitMix64 rng(7);
    for (auto& A : graded_and_ungraded_fixtures()) {
        auto one = unit_cochain(A);
        for (int arity = 0; arity <= 3; ++arity) {
            auto E = random_cochain(A, rng, arity);
            CHECK(cup(one, E) == E);
            CHECK(cup(E, one) == E);
        }
    }
}

TEST_CASE("cup example: arity-1 pair over A3 gives the negated square") {
    auto A3 = fixture_a3(Q);
    auto D = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{2, Rat(1)}}}});  // D(x) = x²
    auto E = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{0, Rat(1)}}}});  // E(x) = 1
    auto DE = cup(D, E);
    CHECK(DE.on_basis({1, 1}) == Vec<Rat>{{2, Rat(-1)}});  // (D⌣E)(x,x) = −x²
}

TEST_CASE("cup is associative on random triples") {
    SplitMix64 rng(11);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 30; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            auto F = random_cochain(A, rng, rng.below(2));
            CHECK(cup(cup(D, E), F) == cup(D, cup(E, F)));
        }
    }
}

TEST_CASE("circle example: single insertion, positive sign") {
    auto A3 = fixture_a3(Q);
    auto D = cochain_from(A3, 1, 0, {{{2}, Vec<Rat>{{1, Rat(1)}}}});  // D(x²) = x
    auto E = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{2, Rat(1)}}}});  // E(x) = x²
    auto DE = circle(D, E);
    CHECK(DE.on_basis({1}) == Vec<Rat>{{1, Rat(1)}});  // (D∘E)(x) = x
}

TEST_CASE("circle with the unit cochain inserts 1 and dies on arity >= 1") {
    SplitMix64 rng(13);
    auto A = fixture_a3(Q);
    auto one = unit_cochain(A);
    for (int trial = 0; trial < 10; ++trial) {
        auto D = random_cochain(A, rng, 1 + rng.below(2));
        CHECK(circle(D, one).is_zero());
    }
}

TEST_CASE("empty brace returns the cochain itself") {
    SplitMix64 rng(17);
    auto A = fixture_t2(Q);
    auto D = random_cochain(A, rng, 2);
    CHECK(brace(D, {}) == D);
}

TEST_CASE("braces against the product form recover the cup product") {
    // D ⌣ E = (−1)^{deg D} m{D,E}: expand m{D,E} by hand via the product form
    SplitMix64 rng(19);
    for (auto& A : graded_and_ungraded_fixtures()) {
        MultForm<Rat> m = multiplication_cochain(A);
        for (int trial = 0; trial < 20; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            Cochain<Rat> mDE;
            mDE.A = &A;
            mDE.arity = D.arity + E.arity;
            mDE.mapdeg = D.mapdeg + E.mapdeg;
            for_each_tuple(A, mDE.arity, [&](const std::vector<int>& t) {
                std::vector<Vec<Rat>> dargs, eargs;
                for (int i = 0; i < D.arity; ++i) dargs.push_back(A.basis_vec(t[i]));
                for (int i = D.arity; i < mDE.arity; ++i) eargs.push_back(A.basis_vec(t[i]));
                Vec<Rat> dv = eval(D, dargs);
                long degdv = D.mapdeg;
                for (int i = 0; i < D.arity; ++i) degdv += A.deg_basis(t[i]);
                Vec<Rat> v = m.apply(dv, degdv, eval(E, eargs));
                Rat sg = sign_of(eta(A, t, D.arity) * E.bar(), A.field);
                for (auto& [k, c] : v) c = sg * c;
                mDE.add_value(t, v);
            });
            CHECK(cup(D, E) == scale(mDE, sign_of(D.deg(), Q)));
        }
    }
}

TEST_CASE("delta of a central zero-cochain vanishes") {
    auto A3 = fixture_a3(Q);
    auto xbar = zero_cochain(A3, A3.basis_vec(1));
    CHECK(delta(xbar).is_zero());
}

TEST_CASE("a one-cochain is a cocycle iff it is a derivation") {
    auto A3 = fixture_a3(Q);
    auto euler = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{1, Rat(1)}}}, {{2}, Vec<Rat>{{2, Rat(2)}}}});
    CHECK(delta(euler).is_zero());
    auto notder = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{0, Rat(1)}}}});
    CHECK(!delta(notder).is_zero());
}

TEST_CASE("delta squares to zero on random cochains") {
    SplitMix64 rng(23);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 25; ++trial) {
            auto D = random_cochain(A, rng, rng.below(4));
            CHECK(delta(delta(D)).is_zero());
        }
    }
}

TEST_CASE("delta agrees with the bracket against the product form") {
    SplitMix64 rng(29);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 20; ++trial) {
            auto D = random_cochain(A, rng, rng.below(4));
            CHECK(delta(D) == delta_via_m(D));
        }
    }
}

TEST_CASE("ungraded specialization differs from the textbook coboundary by (−1)^{d+1}") {
    SplitMix64 rng(31);
    auto A2 = fixture_a2(Q);
    for (int arity = 0; arity <= 3; ++arity) {
        for (int trial = 0; trial < 10; ++trial) {
            auto D = random_cochain(A2, rng, arity);
            CHECK(delta(D) == scale(textbook_delta(D), sign_of(arity + 1, Q)));
        }
    }
}

TEST_CASE("delta is a graded derivation of the cup product") {
    SplitMix64 rng(37);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 20; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            auto lhs = delta(cup(D, E));
            auto rhs = add(cup(delta(D), E), scale(cup(D, delta(E)), sign_of(D.deg(), Q)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("delta is a derivation of the bracket") {
    SplitMix64 rng(41);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 15; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            auto lhs = delta(bracket(D, E));
            auto rhs = add(bracket(delta(D), E), scale(bracket(D, delta(E)), sign_of(D.bar(), Q)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("self-bracket: doubles the self-insertion for odd |D|, cancels for even") {
    auto A3 = fixture_a3(Q);
    // arity-2 ungraded cochain: |D| = 1
    auto D2 = cochain_from(A3, 2, 0, {{{1, 1}, Vec<Rat>{{1, Rat(1)}}}, {{1, 2}, Vec<Rat>{{0, Rat(1)}}}});
    CHECK(bracket(D2, D2) == scale(circle(D2, D2), Rat(2)));
    // arity-1 ungraded cochain: |D| = 0, the two insertion terms cancel
    auto D1 = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{2, Rat(1)}}}, {{2}, Vec<Rat>{{1, Rat(1)}}}});
    CHECK(bracket(D1, D1).is_zero());
}

TEST_CASE("bracket of coordinate derivations matches the vector-field bracket") {
    auto A3 = fixture_a3(Q);
    auto xd = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{1, Rat(1)}}}, {{2}, Vec<Rat>{{2, Rat(2)}}}});
    auto x2d = cochain_from(A3, 1, 0, {{{1}, Vec<Rat>{{2, Rat(1)}}}});
    auto br = bracket(xd, x2d);
    CHECK(br.on_basis({1}) == Vec<Rat>{{2, Rat(1)}});  // [x∂x, x²∂x](x) = x²
}

TEST_CASE("pre-Lie identity on random triples") {
    SplitMix64 rng(43);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 20; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            auto F = random_cochain(A, rng, rng.below(3));
            auto lhs = add(circle(circle(D, E), F), scale(circle(D, circle(E, F)), Rat(-1)));
            auto rhs = add(brace(D, {E, F}), scale(brace(D, {F, E}), sign_of(E.bar() * F.bar(), Q)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("graded Jacobi identity on random triples") {
    SplitMix64 rng(47);
    for (auto& A : graded_and_ungraded_fixtures()) {
        for (int trial = 0; trial < 15; ++trial) {
            auto D = random_cochain(A, rng, rng.below(3));
            auto E = random_cochain(A, rng, rng.below(3));
            auto F = random_cochain(A, rng, rng.below(3));
            auto t1 = scale(bracket(bracket(D, E), F), sign_of(D.bar() * F.bar(), Q));
            auto t2 = scale(bracket(bracket(E, F), D), sign_of(E.bar() * D.bar(), Q));
            auto t3 = scale(bracket(bracket(F, D), E), sign_of(F.bar() * E.bar(), Q));
            CHECK(add(add(t1, t2), t3).is_zero());
        }
    }
}

TEST_CASE("brace composition identity on small arity patterns") {
    SplitMix64 rng(53);
    for (auto& A : {fixture_a2(Q), fixture_t2(Q), fixture_cl1(Q)}) {
        for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
            for (int trial = 0; trial < 8; ++trial) {
                auto D = random_cochain(A, rng, 2);
                std::vector<Cochain<Rat>> Es, Fs;
                for (int i = 0; i < k; ++i) Es.push_back(random_cochain(A, rng, 1 + rng.below(2)));
                for (int i = 0; i < l; ++i) Fs.push_back(random_cochain(A, rng, rng.below(2)));
                auto lhs = brace(brace(D, Es), Fs);
                Cochain<Rat> rhs;
                rhs.A = &A;
                rhs.arity = lhs.arity;
                rhs.mapdeg = lhs.mapdeg;
                std::function<void(int, int, std::vector<Cochain<Rat>>&, long)> go =
                    [&](int p, int fi, std::vector<Cochain<Rat>>& acc, long ex) {
                        if (p == k) {
                            std::vector<Cochain<Rat>> args = acc;
                            for (int r = fi; r < l; ++r) args.push_back(Fs[r]);
                            auto piece = brace(D, args);
                            if (!piece.is_zero() && piece.arity == rhs.arity)
                                rhs = add(rhs, scale(piece, sign_of(ex, Q)));
                            return;
                        }
                        for (int loose = 0; fi + loose <= l; ++loose) {
                            for (int inside = 0; fi + loose + inside <= l; ++inside) {
                                std::vector<Cochain<Rat>> acc2 = acc;
                                for (int r = fi; r < fi + loose; ++r) acc2.push_back(Fs[r]);
                                std::vector<Cochain<Rat>> sub;
                                for (int r = fi + loose; r < fi + loose + inside; ++r)
                                    sub.push_back(Fs[r]);
                                long ex2 = ex;
                                for (int q = 0; q < fi + loose; ++q)
                                    ex2 += Es[p].bar() * Fs[q].bar();
                                acc2.push_back(brace(Es[p], sub));
                                go(p + 1, fi + loose + inside, acc2, ex2);
                            }
                        }
                    };
                std::vector<Cochain<Rat>> empty;
                go(0, 0, empty, 0);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("cup of braces expansion (lift compatibility with the cup product)") {
    SplitMix64 rng(59);
    for (auto& A : {fixture_a2(Q), fixture_cl1(Q)}) {
        for (int m = 0; m <= 2; ++m) {
            for (int trial = 0; trial < 8; ++trial) {
                auto D = random_cochain(A, rng, 1 + rng.below(2));
                auto E = random_cochain(A, rng, 1 + rng.below(2));
                std::vector<Cochain<Rat>> Fs;
                for (int i = 0; i < m; ++i) Fs.push_back(random_cochain(A, rng, rng.below(2)));
                auto lhs = brace(cup(D, E), Fs);
                Cochain<Rat> rhs;
                rhs.A = &A;
                rhs.arity = lhs.arity;
                rhs.mapdeg = lhs.mapdeg;
                for (int p = 0; p <= m; ++p) {
                    std::vector<Cochain<Rat>> left(Fs.begin(), Fs.begin() + p);
                    std::vector<Cochain<Rat>> right(Fs.begin() + p, Fs.end());
                    long ex = 0;
                    for (int i = 0; i < p; ++i) ex += E.deg() * Fs[i].bar();
                    auto piece = cup(brace(D, left), brace(E, right));
                    if (piece.arity == rhs.arity) rhs = add(rhs, scale(piece, sign_of(ex, Q)));
                }
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("brace lift on the empty tuple returns the cochain") {
    SplitMix64 rng(61);
    auto A = fixture_a2(Q);
    auto D = random_cochain(A, rng, 2);
    CHECK(brace_lift_eval(D, {}) == D);
}

TEST_CASE("internal differential: squares to zero and anticommutes with delta") {
    SplitMix64 rng(67);
    auto DG = fixture_dg1(Q);
    for (int trial = 0; trial < 20; ++trial) {
        auto D = random_cochain(DG, rng, rng.below(3));
        CHECK(internal_differential(internal_differential(D)).is_zero());
        auto anti = add(internal_differential(delta(D)), delta(internal_differential(D)));
        CHECK(anti.is_zero());
    }
}

TEST_CASE("cochain arithmetic over F5") {
    FieldCtx<Fp> F5{5};
    SplitMix64 rng(71);
    auto A = fixture_a3(F5);
    for (int trial = 0; trial < 10; ++trial) {
        auto D = random_cochain(A, rng, rng.below(3));
        CHECK(delta(delta(D)).is_zero());
    }
}
