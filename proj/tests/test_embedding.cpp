// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include <gtest/gtest.h>

#include "hkphi/embedding.hpp"
#include "hkphi/series.hpp"

using namespace hkphi;

namespace {

const CheckLine* find_line(const Report& r, const std::string& name) {
    for (const auto& l : r.lines)
        if (l.name == name) return &l;
    return nullptr;
}

}  // namespace

TEST(Embedding, NablaOfZeroIsIdentity) {
    Realization R(3, 2, RealCase::A);
    EmbeddingWitness W(R, 4);
    EXPECT_EQ(W.nabla(0), QMat::identity(3));
}

TEST(Embedding, PhinabRankTwoCaseA) {
    Report r = verify_embedding(3, 2, RealCase::A, 81);
    const CheckLine* l = find_line(r, "phi_conjugates_nabla");
    ASSERT_NE(l, nullptr);
    EXPECT_TRUE(l->pass) << l->witness;
}

TEST(Embedding, AllIdentities) {
    for (int p : {3, 5})
        for (int d = 1; d <= 3; ++d)
            for (RealCase c : {RealCase::A, RealCase::B}) {
                Report r = verify_embedding(p, d, c, p * p);
                EXPECT_EQ(r.lines.size(), 13u);
                const CheckLine* f = r.first_failure();
                EXPECT_TRUE(r.ok()) << (f ? f->name + " " + f->params + " " + f->witness : "");
            }
}

TEST(Embedding, NsdTimesSdIsTauMinusOne) {
    for (RealCase c : {RealCase::A, RealCase::B}) {
        Realization R(5, 2, c);
        EXPECT_EQ(R.n_sd() * R.sd(), R.tau(-1));
    }
}

TEST(Embedding, RootsLieInTheDistinguishedColumnOrRow) {
    for (int d = 1; d <= 3; ++d) {
        EmbeddingWitness A(Realization(3, d, RealCase::A), 2 * d + 2);
        EmbeddingWitness B(Realization(3, d, RealCase::B), 2 * d + 2);
        for (int j = 0; j < 2 * d + 2; ++j) {
            EXPECT_EQ(A.root(j).second, d);
            EXPECT_EQ(B.root(j).first, 0);
        }
        // Consecutive gallery steps cross walls of distinct roots unless d = 1.
        if (d > 1) {
            EXPECT_NE(A.root(0), A.root(1));
        }
        EXPECT_TRUE(A.defects().empty());
        EXPECT_TRUE(B.defects().empty());
    }
}

TEST(Embedding, DigitsAndCosets) {
    const int p = 3;
    Realization R(p, 2, RealCase::B);
    EmbeddingWitness W(R, 6);
    for (int j = 0; j < 5; ++j) {
        long long pj = ipow(p, j);
        QMat expect = W.nu(j);
        mpq_class k = 1;
        for (int t = 0; t < W.e(j, W.root(j)); ++t) k *= p;
        auto [r, c] = W.root(j);
        expect.at(r, c) *= k;
        EXPECT_EQ(W.nabla(pj), expect) << "j=" << j;
    }
    // nabla(m) and nabla(m mod p^i) lie in the same coset of N_0^{(i)}.
    for (int i = 0; i <= 3; ++i)
        for (long long m = 0; m < 200; m += 7) {
            long long r = m % ipow(p, i);
            EXPECT_TRUE(W.fixes_chamber(W.nabla(r).inverse() * W.nabla(m), i)) << "i=" << i << " m=" << m;
        }
}

TEST(Embedding, WrongTorusElementIsRejected) {
    const int p = 5;
    Realization R(p, 1, RealCase::A);
    EmbeddingWitness W(R, 5);
    // Using tau(a)^{-1} in h(v,a) moves children by a^{-1} instead of a.
    bool rejected = false;
    for (long long m = 0; m < p && !rejected; ++m)
        for (long long t = 1; t < p; ++t) {
            long a = 2;
            long long n = m + p * t;
            QMat h = W.nabla(a * m) * R.tau(a).inverse() * W.nabla(m).inverse();
            QMat x = W.nabla((a * n) % (p * p)).inverse() * h * W.nabla(n);
            if (!W.fixes_chamber(x, 2)) rejected = true;
        }
    EXPECT_TRUE(rejected);
}

TEST(Embedding, IwahoriMembership) {
    QMat x = QMat::identity(2);
    EXPECT_TRUE(in_iwahori(x, 3));
    x.at(1, 0) = 1;
    EXPECT_FALSE(in_iwahori(x, 3));
    x.at(1, 0) = 3;
    EXPECT_TRUE(in_iwahori(x, 3));
    x.at(0, 1) = mpq_class(1, 3);
    EXPECT_FALSE(in_iwahori(x, 3));
    EXPECT_EQ(padic_val(mpq_class(18, 5), 3), 2);
    EXPECT_EQ(padic_val(mpq_class(2, 27), 3), -3);
}
