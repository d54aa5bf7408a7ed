// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <random>

#include "hkphi/cyclic.hpp"

using namespace hkphi;

namespace {

void expect_ok(const Report& r) {
    const CheckLine* f = r.first_failure();
    EXPECT_TRUE(r.ok()) << (f ? f->name + " [" + f->params + "] " + f->witness : "");
    EXPECT_FALSE(r.lines.empty());
}

StandardCyclicModule make(int p, int r, std::vector<long long> k, std::vector<Elt> rho, std::vector<int> eta) {
    StandardCyclicModule M;
    M.p = p;
    M.r = r;
    M.k = std::move(k);
    M.rho = std::move(rho);
    M.eta = std::move(eta);
    return M;
}

// eta_0 = e, eta_i = eta_{i-1} + k_i; empty if the wrap-around fails.
std::vector<int> consistent_eta(int p, const std::vector<long long>& k, int e) {
    long long sum = 0;
    for (long long x : k) sum += x;
    if (sum % (p - 1) != 0) return {};
    std::vector<int> eta{e};
    for (size_t i = 1; i < k.size(); ++i) eta.push_back(static_cast<int>((eta.back() + k[i]) % (p - 1)));
    return eta;
}

int dual_precision(const StandardCyclicModule& M) {
    long long need = M.h_vec().back() + 1;
    long long q2 = M.q() * M.q();
    return static_cast<int>(std::max(need, q2));
}

ReducedStandardModule rs(const Field& F, RealCase c, const TorusChar& theta, const SigmaMap& s) {
    return reduced_standard_make(F, c, theta, s, std::vector<Elt>(weyl_elements(s.d()).size(), 1));
}

}  // namespace

TEST(Cyclic, ValidateRejectsBadData) {
    EXPECT_THROW(validate(make(3, 1, {3}, {1}, {0})), std::invalid_argument);
    EXPECT_THROW(validate(make(3, 1, {1}, {0}, {})), std::invalid_argument);
    EXPECT_THROW(validate(make(3, 1, {1, 1}, {1}, {})), std::invalid_argument);
    // eta_1 must be eta_0 + k_1 mod 2.
    EXPECT_THROW(validate(make(3, 1, {1, 1}, {1, 1}, {0, 0})), std::invalid_argument);
    EXPECT_NO_THROW(validate(make(3, 1, {1, 1}, {1, 1}, {0, 1})));
    EXPECT_NO_THROW(validate(make(5, 1, {3, 1}, {2, 1}, {})));
}

TEST(Cyclic, IndexVectors) {
    auto M = make(5, 1, {3, 1}, {1, 1}, {});
    // i_j = q - 1 - k_{m+1-j}; h_j = sum_{i<j} i_{m+1+i-j} q^i.
    EXPECT_EQ(M.i_vec(), (std::vector<long long>{1, 3, 1}));
    EXPECT_EQ(M.h_vec(), (std::vector<long long>{0, 3, 1 + 3 * 5}));
}

TEST(Cyclic, FromSupersingular) {
    for (RealCase c : {RealCase::A, RealCase::B})
        for (int p : {3, 5})
            for (int d = 1; d <= 2; ++d) {
                Field F(p);
                for (Elt b = 1; b < static_cast<Elt>(p); ++b)
                    for (const auto& M : enumerate_supersingular(F, d, b, c)) {
                        auto inv = supersingular_invariants(F, M);
                        auto C = from_supersingular(F, M);
                        EXPECT_NO_THROW(validate(C));
                        ASSERT_EQ(C.perimeter(), d + 1);
                        for (int i = 0; i <= d; ++i) EXPECT_EQ(C.k[i], inv.k[i]);
                        // The supersingular eta are of the normalized form -h_i - s.
                        EXPECT_TRUE(normalized_gamma_shift(C).has_value()) << M.str(F);
                    }
            }
}

TEST(Cyclic, FromSupersingularExample) {
    Field F(5);
    SupersingularModule M{5, 1, RealCase::A, {3, 0}, 0, 1};
    auto C = from_supersingular(F, M);
    EXPECT_EQ(C.k, (std::vector<long long>{3, 1}));
    EXPECT_EQ(C.eta.size(), 2u);
    // 3! * 1! = 6 = 1 in F_5, up to the sign carried by lambda(tau(-1)).
    Elt prod = C.rho_total(F);
    EXPECT_TRUE(prod == 1 || prod == F.neg(1));
}

TEST(Cyclic, NormIntegral) {
    auto M = make(3, 1, {1, 1}, {1, 1}, {0, 1});
    // h = (0, 1, 1 + 3), so eta_i = -h_i - s needs eta_1 - eta_0 = -1.
    EXPECT_EQ(M.h_vec()[1], 1);
    auto s = normalized_gamma_shift(M);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(*s, 0);
    EXPECT_FALSE(normalized_gamma_shift(make(3, 1, {1, 1}, {1, 1}, {})).has_value());
}

TEST(Cyclic, CriterionHandExamples) {
    // k = (1,1): periodic, with eta = (0,1) not periodic.
    auto M = make(3, 1, {1, 1}, {1, 1}, {0, 1});
    EXPECT_FALSE(is_irreducible(M, false));
    EXPECT_TRUE(is_irreducible(M, true));
    EXPECT_TRUE(is_irreducible(make(5, 1, {3, 1}, {1, 1}, {}), false));
    EXPECT_TRUE(is_irreducible(make(3, 1, {2}, {1}, {}), false));
    EXPECT_FALSE(is_irreducible(make(5, 1, {0, 0, 0}, {1, 1, 1}, {}), false));
    EXPECT_THROW(is_irreducible(make(3, 1, {1, 1}, {1, 1}, {}), true), std::invalid_argument);
}

TEST(Cyclic, CriterionIsSufficientOverSmallFields) {
    // Irreducible although k is 1-periodic: the eigenline needs sqrt(2) in F_3.
    Field F(3);
    auto M = make(3, 1, {1, 1}, {2, 1}, {});
    EXPECT_FALSE(is_irreducible(M, false));
    EXPECT_TRUE(is_irreducible_bruteforce(F, M, false, 9));
    // Over F_9 the root exists.
    Field G(3, 2);
    EXPECT_FALSE(is_irreducible_bruteforce(G, M, false, 9));
}

TEST(Cyclic, CriterionAgainstBruteForce) {
    std::mt19937 rng(11);
    struct Setup {
        int p, deg, r, maxn;
    };
    for (Setup st : {Setup{3, 1, 1, 3}, Setup{3, 2, 1, 2}, Setup{5, 1, 1, 2}, Setup{3, 1, 2, 2}}) {
        Field F(st.p, st.deg);
        long long q = ipow(st.p, st.r);
        int N = static_cast<int>(q * st.p);
        int checked = 0;
        for (int n = 1; n <= st.maxn; ++n)
            for (long long code = 0; code < ipow(q, n); ++code) {
                std::vector<long long> k;
                for (long long c = code, i = 0; i < n; ++i, c /= q) k.push_back(c % q);
                auto eta = consistent_eta(st.p, k, static_cast<int>(rng() % (st.p - 1)));
                for (bool ones : {true, false}) {
                    std::vector<Elt> rho;
                    for (int i = 0; i < n; ++i) rho.push_back(ones ? 1 : static_cast<Elt>(1 + rng() % (F.q() - 1)));
                    auto M = make(st.p, st.r, k, rho, eta);
                    for (bool g : {false, true}) {
                        if (g && eta.empty()) continue;
                        bool crit = is_irreducible(M, g), brute = is_irreducible_bruteforce(F, M, g, N);
                        ++checked;
                        if (ones)
                            EXPECT_EQ(crit, brute) << M.str(F) << " gamma=" << g;
                        else
                            EXPECT_TRUE(!crit || brute) << M.str(F) << " gamma=" << g;
                    }
                }
            }
        EXPECT_GT(checked, 0);
    }
}

TEST(Cyclic, DualSupersingular) {
    unsigned seed = 1;
    for (RealCase c : {RealCase::A, RealCase::B})
        for (int p : {3, 5}) {
            Field F(p);
            for (const auto& M : enumerate_supersingular(F, 1, 1, c)) {
                auto C = from_supersingular(F, M);
                auto D = dual_phigamma(F, C, dual_precision(C));
                EXPECT_EQ(D.rank, 2);
                expect_ok(check_dual(C, D, seed++));
            }
            auto reps = enumerate_supersingular(F, 2, 1, c);
            for (size_t i = 0; i < reps.size(); i += (p == 3 ? 1 : 7)) {
                auto C = from_supersingular(F, reps[i]);
                expect_ok(check_dual(C, dual_phigamma(F, C, dual_precision(C)), seed++));
            }
        }
}

TEST(Cyclic, DualHigherPower) {
    Field F(3);
    for (auto C : {make(3, 2, {5, 3}, {2, 1}, {0, 1}), make(3, 2, {8}, {2}, {0}), make(3, 2, {4, 0, 4}, {1, 2, 2}, {0, 0, 0})}) {
        auto D = dual_phigamma(F, C, dual_precision(C));
        EXPECT_EQ(D.r, 2);
        expect_ok(check_dual(C, D, 3));
    }
}

TEST(Cyclic, DualPreconditions) {
    Field F(3);
    EXPECT_THROW(dual_phigamma(F, make(3, 1, {0, 0}, {1, 1}, {0, 0}), 9), std::invalid_argument);
    auto C = make(3, 1, {1, 1}, {1, 1}, {0, 1});
    EXPECT_THROW(dual_phigamma(F, C, static_cast<int>(C.h_vec().back())), std::invalid_argument);
}

TEST(Cyclic, DualDetectsWrongPhi) {
    Field F(5);
    auto C = make(5, 1, {3, 1}, {2, 3}, {0, 1});
    auto D = dual_phigamma(F, C, 25);
    D.phi[1][0].val -= 1;
    EXPECT_FALSE(check_dual(C, D, 2).ok());
}

TEST(Cyclic, Inflation) {
    Field F(3);
    auto C1 = make(3, 1, {1, 1}, {1, 2}, {0, 1});
    auto I1 = inflate_to_phi(dual_phigamma(F, C1, 9));
    EXPECT_EQ(I1.rank(), 2);
    expect_ok(check_inflation(I1, 1));

    auto C2 = make(3, 2, {4}, {2}, {0});
    auto I2 = inflate_to_phi(dual_phigamma(F, C2, dual_precision(C2)));
    EXPECT_EQ(I2.rank(), 2);
    EXPECT_EQ(I2.gamma0().size(), 2u);
    expect_ok(check_inflation(I2, 2));

    auto S = direct_sum(dual_phigamma(F, C1, 9), dual_phigamma(F, make(3, 1, {2}, {1}, {0}), 9));
    EXPECT_EQ(S.rank, 3);
    expect_ok(check_inflation(inflate_to_phi(S), 3));
}

TEST(Cyclic, SigmaOneExponents) {
    for (int p : {3, 5})
        for (int d : {2, 3}) {
            Field F(p);
            TorusChar theta(d + 1, 0);
            theta[0] = 1;
            SigmaMap s(d, 1);
            auto M = rs(F, RealCase::A, theta, s);
            auto filt = admissible_filtration(s);
            auto pieces = filtration_to_cyclics(F, M, filt);
            ASSERT_EQ(static_cast<int>(filt.levels.size()), d + 1);
            for (const auto& pc : pieces) {
                int zeros = 0;
                for (long long k : pc.mod.k) {
                    EXPECT_TRUE(k == 0 || k == p - 1);
                    zeros += k == 0;
                }
                if (pc.level <= d) EXPECT_EQ(zeros, pc.level - 1) << "p=" << p << " d=" << d;
                if (pc.level == d + 1) EXPECT_TRUE(pc.mod.all_k_zero());
            }
            EXPECT_LT(galois_rank(pieces), static_cast<int>(weyl_elements(d).size()));
        }
}

TEST(Cyclic, SigmaZeroSinglePieceOrbits) {
    Field F(5);
    TorusChar theta{1, 2, 3};
    SigmaMap s(2, 0);
    auto M = rs(F, RealCase::B, theta, s);
    auto pieces = filtration_to_cyclics(F, M, admissible_filtration(s));
    int total = 0;
    for (const auto& pc : pieces) {
        EXPECT_EQ(pc.mod.perimeter(), 3);
        total += pc.mod.perimeter();
    }
    EXPECT_EQ(total, 6);
}

TEST(Cyclic, FiltrationPiecesAgreeWithHalfTree) {
    std::mt19937 rng(7);
    for (int p : {3, 5}) {
        Field F(p);
        auto sigmas = all_sigma_maps(2);
        int validated = 0;
        for (RealCase c : {RealCase::A, RealCase::B})
            for (int trial = 0; trial < 25; ++trial) {
                TorusChar theta;
                for (int i = 0; i < 3; ++i) theta.push_back(static_cast<int>(rng() % (p - 1)));
                const auto& s = sigmas[rng() % sigmas.size()];
                auto M = rs(F, c, theta, s);
                auto filt = admissible_filtration(s);
                std::vector<CyclicPiece> pieces;
                try {
                    pieces = filtration_to_cyclics(F, M, filt);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                expect_ok(validate_cyclics_h0(F, M, filt, pieces, 3));
                ++validated;
            }
        EXPECT_GT(validated, 10);
    }
}

TEST(Cyclic, HypothesisViolationThrows) {
    Field F(3);
    SigmaMap s(2, -1);
    auto M = rs(F, RealCase::A, {0, 0, 0}, s);
    EXPECT_THROW(filtration_to_cyclics(F, M, admissible_filtration(s)), std::invalid_argument);
}
