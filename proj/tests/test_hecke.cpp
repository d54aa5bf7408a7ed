// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include <gtest/gtest.h>

#include <random>

#include "hkphi/hecke.hpp"

using namespace hkphi;

namespace {

QMat qpow(const QMat& m, int e) {
    QMat b = e < 0 ? m.inverse() : m, r = QMat::identity(m.n());
    for (int k = 0; k < std::abs(e); ++k) r = r * b;
    return r;
}

bool is_diag(const QMat& m) {
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j)
            if (i != j && sgn(m.at(i, j)) != 0) return false;
    return true;
}

// Position of the entry 2 in a diagonal matrix with a single entry 2 and ones elsewhere.
int where_two(const QMat& m) {
    for (int i = 0; i < m.n(); ++i)
        if (m.at(i, i) == 2) return i;
    return -1;
}

QMat t_at(int n, int j, const mpq_class& x) {
    std::vector<mpq_class> v(n, 1);
    v[j] = x;
    return QMat::diag(v);
}

const RealCase kCases[] = {RealCase::A, RealCase::B};

}  // namespace

TEST(Realization, MatrixIdentities) {
    for (RealCase c : kCases)
        for (int p : {3, 5})
            for (int d = 1; d <= 3; ++d) {
                Realization R(p, d, c);
                int n = d + 1;
                QMat scal = QMat::identity(n);
                for (int i = 0; i < n; ++i) scal.at(i, i) = c == RealCase::A ? mpq_class(p) : mpq_class(1, p);
                EXPECT_EQ(qpow(R.u(), n), scal);
                EXPECT_EQ(R.n_sd() * R.sd(), R.tau(-1));
                EXPECT_EQ(R.s(d), R.sd());
                for (int j = 1; j <= d; ++j) EXPECT_EQ(R.u() * R.s(j) * R.u().inverse(), R.s(j - 1));
                EXPECT_EQ(R.u() * R.s(0) * R.u().inverse(), R.s(d));
                QMat phid = qpow(R.phi(), d);
                EXPECT_TRUE(is_diag(phid)) << phid.str();
                // tau commutes with phi; h_{s_j} has the recorded positions.
                EXPECT_EQ(R.tau(3) * R.phi(), R.phi() * R.tau(3));
                for (int j = 0; j <= d; ++j) {
                    auto [px, pxi] = R.hs_positions(j);
                    std::vector<mpq_class> v(n, 1);
                    v[px] = mpq_class(2, 3);
                    v[pxi] = mpq_class(3, 2);
                    EXPECT_EQ(R.h_s(j, mpq_class(2, 3)), QMat::diag(v));
                }
                EXPECT_EQ(R.tau(2), t_at(n, R.tau_pos(), R.tau_exp() == 1 ? mpq_class(2) : mpq_class(1, 2)));
            }
}

TEST(Realization, WeylCoordinates) {
    for (RealCase c : kCases)
        for (int d = 1; d <= 3; ++d) {
            Realization R(5, d, c);
            int n = d + 1;
            for (const auto& w : weyl_elements(d)) {
                QMat W = R.weyl(w);
                for (int j = 0; j < n; ++j)
                    EXPECT_EQ(where_two(W * t_at(n, j, 2) * W.inverse()), R.coord(w)[j]);
            }
        }
}

TEST(Realization, ShiftCharacterMatchesConjugation) {
    // lambda^{[i]}(t_j) = lambda(u^{-i} t_j u^i).
    for (RealCase c : kCases)
        for (int d = 1; d <= 3; ++d) {
            Realization R(7, d, c);
            int n = d + 1;
            TorusChar a(n);
            for (int j = 0; j < n; ++j) a[j] = (3 * j + 1) % 6;
            for (int i = 0; i <= 2 * n; ++i) {
                TorusChar ai = shift_char(R, a, i);
                for (int j = 0; j < n; ++j) {
                    int q = where_two(qpow(R.u(), -i) * t_at(n, j, 2) * qpow(R.u(), i));
                    ASSERT_GE(q, 0);
                    EXPECT_EQ(ai[j], a[q]);
                }
            }
        }
}

TEST(Realization, TauConjugatesTheBlock) {
    for (RealCase c : kCases) {
        Realization R(5, 2, c);
        mpq_class a(3);
        EXPECT_EQ(R.tau(a) * R.embed(1, 2, 3, 7) * R.tau(a).inverse(), R.embed(1, 2 * a, 3 / a, 7));
    }
}

TEST(Hecke, UConjugate) {
    for (RealCase c : kCases) {
        Realization R(5, 2, c);
        TorusChar a{1, 2, 3};
        EXPECT_EQ(u_conjugate(R, a, 0b011, 0), std::make_pair(a, 0b011u));
        EXPECT_EQ(u_conjugate(R, a, 0b011, 3), std::make_pair(a, 0b011u));
        // u s_0 u^{-1} = s_2, from the matrices.
        EXPECT_EQ(R.u() * R.s(0) * R.u().inverse(), R.s(2));
        EXPECT_EQ(u_conjugate(R, a, 0b001, 1).second, 0b100u);
        for (int j = 0; j <= 2; ++j)
            for (int i = 0; i <= 3; ++i) {
                int target = static_cast<int>(mod(j - i, 3));
                EXPECT_EQ(qpow(R.u(), i) * R.s(j) * qpow(R.u(), -i), R.s(target));
                EXPECT_EQ(shift_subset(2, 1u << j, i), 1u << target);
            }
    }
}

TEST(Hecke, SatisfiesDiff) {
    Realization R2(5, 2, RealCase::A), R1(5, 1, RealCase::A);
    EXPECT_FALSE(satisfies_diff(R2, {0, 0, 0}, 0));
    EXPECT_TRUE(satisfies_diff(R1, {2, 0}, 0));
    EXPECT_EQ(shift_char(R1, {2, 0}, 1), (TorusChar{0, 2}));
    // d+1 = 3 prime and u-invariant data.
    EXPECT_FALSE(satisfies_diff(R2, {1, 1, 1}, 0b111));
}

TEST(Hecke, InvariantsExamples) {
    Field F(5);
    // k = (3, 1): a_0 - a_1 = 3 mod 4.
    SupersingularModule M{5, 1, RealCase::A, {3, 0}, 0, 1};
    auto inv = supersingular_invariants(F, M);
    EXPECT_EQ(inv.k, (std::vector<int>{3, 1}));
    EXPECT_EQ(inv.w, (std::vector<long long>{8, 16}));
    EXPECT_EQ(inv.i_[0], 1);
    EXPECT_EQ(inv.i_[1], 3);
    EXPECT_EQ(inv.h_[2], 16);
    EXPECT_EQ(inv.h, 4);
    // lambda(-id) = (-1)^3 here, so delta = (-1)(-1) 3! 1! = 6 = 1.
    EXPECT_EQ(inv.delta, 1u);
    EXPECT_EQ(inv.beta_power, 1u);
    for (int p : {3, 5, 7}) {
        Field G(p);
        SupersingularModule T{p, 1, RealCase::A, {0, 0}, 0b11, 1};
        EXPECT_EQ(supersingular_invariants(G, T).k, (std::vector<int>{p - 1, p - 1}));
    }
    EXPECT_THROW(validate(SupersingularModule{5, 1, RealCase::A, {1, 0}, 0b01, 1}), std::invalid_argument);
}

TEST(Hecke, InvariantProperties) {
    for (RealCase c : kCases)
        for (int p : {3, 5})
            for (int d = 1; d <= 2; ++d) {
                Field F(p);
                Realization R(p, d, c);
                for (const auto& M : enumerate_supersingular(F, d, 1, c)) {
                    auto inv = supersingular_invariants(F, M);
                    int sum = 0;
                    for (int k : inv.k) sum += k;
                    EXPECT_EQ(sum % (p - 1), 0);
                    EXPECT_EQ(inv.h_[d + 1] % (p - 1), 0);
                    // x^{-s} = lambda(tau(x)) for the generator.
                    Elt g = F.fp_generator();
                    TorusChar a = normalize_char(M.lambda, p);
                    EXPECT_EQ(F.pow(g, -inv.s), F.pow(g, R.tau_exp() * a[R.tau_pos()]));
                    for (int j = 0; j <= d; ++j) {
                        auto [aj, Jj] = u_conjugate(R, M.lambda, M.J, j);
                        auto invj = supersingular_invariants(F, {p, d, c, aj, Jj, 1});
                        for (int i = 0; i <= d; ++i) EXPECT_EQ(invj.k[i], inv.k[(i + j) % (d + 1)]);
                    }
                }
            }
}

TEST(Hecke, EnumerationMatchesOrbitCount) {
    for (RealCase c : kCases)
        for (int p : {3, 5})
            for (int d = 1; d <= 2; ++d) {
                Field F(p);
                Realization R(p, d, c);
                auto reps = enumerate_supersingular(F, d, 1, c);
                EXPECT_EQ(static_cast<long long>(reps.size()), count_orbits_bruteforce(p, d, c));
                for (const auto& M : reps) {
                    EXPECT_EQ(M.J & ~s_lambda(R, M.lambda), 0u);
                    EXPECT_TRUE(satisfies_diff(R, M.lambda, M.J));
                }
            }
    // Hand count for d = 1, p = 3, a in (Z/2)^2. For a = (0,0), (1,1) the set S_a is everything and
    // a is u-fixed, so J is {s0} or {s1}, one orbit each. For a = (1,0) ~ (0,1), S_a is empty.
    EXPECT_EQ(count_orbits_bruteforce(3, 1, RealCase::A), 3);
}

TEST(Hecke, SupersingularOperators) {
    for (RealCase c : kCases)
        for (int p : {3, 5})
            for (int d = 1; d <= 2; ++d) {
                Field F(p);
                Realization R(p, d, c);
                Elt g = F.fp_generator();
                for (const auto& M0 : enumerate_supersingular(F, d, 1, c)) {
                    auto M = M0;
                    M.b = F.from_int(2);
                    HeckeAction A = supersingular_action(F, M);
                    EXPECT_EQ(check_hecke_relations(F, R, A), "") << M.str(F);
                    auto inv = supersingular_invariants(F, M);
                    for (int i = 0; i <= d; ++i) {
                        // T_t e_i = lambda(u^{-i} t^{-1} u^i) e_i with the conjugation done by matrices.
                        for (int j = 0; j <= d; ++j) {
                            int q = where_two(qpow(R.u(), -i) * t_at(d + 1, j, 2) * qpow(R.u(), i));
                            EXPECT_EQ(A.Tt[j].at(i, i), F.pow(g, -M.lambda[q]));
                        }
                        EXPECT_EQ(A.Th.at(i, i), F.pow(g, -inv.k[i]));
                    }
                    Matrix Z = A.Tuinv.pow(d + 1);
                    EXPECT_EQ(Z, Matrix::identity(F, d + 1).scale(F.inv(M.b)));
                }
            }
}

TEST(Hecke, ReducedStandardTables) {
    Field F(5);
    for (RealCase c : kCases)
        for (int d = 1; d <= 2; ++d) {
            Realization R(5, d, c);
            TorusChar theta(d + 1);
            for (int j = 0; j <= d; ++j) theta[j] = j % 4;
            auto all = weyl_elements(d);
            std::vector<Elt> eps(all.size(), 1);
            for (const auto& sigma : all_sigma_maps(d)) {
                auto M = reduced_standard_make(F, c, theta, sigma, eps);
                ASSERT_EQ(M.act.dim, static_cast<int>(all.size()));
                Perm ubinv = perm_inverse(perm_ubar(d)), sd = perm_s(d, d);
                for (size_t k = 0; k < all.size(); ++k) {
                    const Perm& w = all[k];
                    EXPECT_EQ(M.act.Tuinv.at(M.index(w * ubinv), k), eps[k]);
                    if (sigma.is(w, 1)) {
                        Vec col = M.Tsd.col(static_cast<int>(k)), want(all.size(), 0);
                        want[M.index(w * sd)] = 1;
                        EXPECT_EQ(col, want);
                    }
                    // kappa_w from the matrices: w n_{s_d} s_d w^{-1} = w tau(-1) w^{-1}.
                    QMat W = R.weyl(w);
                    QMat x = W * R.n_sd() * R.sd() * W.inverse();
                    int sign = 1;
                    for (int j = 0; j <= d; ++j)
                        if (x.at(j, j) == -1 && theta[j] % 2) sign = -sign;
                    EXPECT_EQ(M.kappa[k], sign);
                }
            }
        }
}

TEST(Hecke, ReducedStandardOtherCasesVanish) {
    // sigma = 0, theta with theta(w h w^{-1}) nontrivial for all w: T_{s_d} = 0.
    Field F(5);
    SigmaMap zero(1, 0);
    auto M = reduced_standard_make(F, RealCase::A, {1, 0}, zero, {1, 1});
    EXPECT_TRUE(M.Tsd.is_zero());
}

TEST(Hecke, SubmoduleAndQuotient) {
    Field F(5);
    SigmaMap one(2, 1);
    auto all = weyl_elements(2);
    auto M = reduced_standard_make(F, RealCase::A, {2, 1, 0}, one, std::vector<Elt>(all.size(), 1));
    Realization R(5, 2, RealCase::A);
    Vec e(all.size(), 0);
    e[0] = 1;
    Matrix B = stable_span(F, M.act, {e});
    EXPECT_LE(B.cols(), M.act.dim);
    auto sub = restrict_action(F, R, M.act, B);
    auto quo = quotient_action(F, R, M.act, B);
    EXPECT_EQ(sub.dim + quo.dim, M.act.dim);
    EXPECT_EQ(check_hecke_relations(F, R, sub), "");
    if (quo.dim) {
        EXPECT_EQ(check_hecke_relations(F, R, quo), "");
    }
}
