// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include <gtest/gtest.h>

#include "hkphi/sl2.hpp"

using namespace hkphi;

namespace {

void expect_ok(const Report& r) {
    const CheckLine* f = r.first_failure();
    EXPECT_TRUE(r.ok()) << (f ? f->name + " [" + f->params + "] " + f->witness : "");
    EXPECT_FALSE(r.lines.empty());
}

bool has_line(const Report& r, const std::string& name) {
    for (const auto& l : r.lines)
        if (l.name == name) return true;
    return false;
}

}  // namespace

TEST(SL2, GroupOrders) {
    for (int p : {3, 5, 7}) {
        SL2Group S(p, Variant::SL), P(p, Variant::PSL);
        EXPECT_EQ(S.order(), p * (p * p - 1));
        EXPECT_EQ(P.order(), p * (p * p - 1) / 2);
        EXPECT_EQ(S.num_cosets(), p * p - 1);
        EXPECT_EQ(P.num_cosets(), (p * p - 1) / 2);
        Mat2 n2 = S.mul(S.ns(), S.ns());
        EXPECT_EQ(n2, S.canon({-1, 0, 0, -1}));
        for (int x = 1; x < p; ++x)
            for (int y = 1; y < p; ++y) EXPECT_EQ(S.mul(S.hs(x), S.hs(y)), S.hs(x * y % p));
    }
}

TEST(SL2, UniversalDimensions) {
    Field F(3);
    SL2Group S(3, Variant::SL), P(3, Variant::PSL);
    EXPECT_EQ(UniversalModule(F, S).dim(), 8);
    EXPECT_EQ(UniversalModule(F, P).dim(), 4);
}

TEST(SL2, LinkDimensions) {
    for (int p : {3, 5}) {
        Field F(p);
        SL2Group S(p, Variant::SL);
        UniversalModule U(F, S);
        for (int r = 0; r <= p - 1; ++r) {
            LinkModule L(U, chi_module(F, r));
            EXPECT_EQ(L.dim(), r + 1) << "p=" << p << " r=" << r;
            EXPECT_EQ(L.invariant_dim(), 1);
        }
        for (int r = 1; r <= p - 1; ++r) {
            LinkModule L(U, m_module(F, r));
            EXPECT_EQ(L.dim(), p + 1);
            EXPECT_EQ(L.invariant_dim(), 2);
        }
    }
}

TEST(SL2, TrivialCharacterGivesTrivialLine) {
    Field F(5);
    SL2Group S(5, Variant::SL);
    UniversalModule U(F, S);
    LinkModule L(U, chi_module(F, 0));
    ASSERT_EQ(L.dim(), 1);
    for (int i = 0; i < S.order(); ++i) EXPECT_EQ(L.act(S.elem(i)), Matrix::identity(F, 1));
}

TEST(SL2, SymclaPFiveRTwo) {
    Field F(5);
    SL2Group S(5, Variant::SL);
    UniversalModule U(F, S);
    LinkModule L(U, chi_module(F, 2));
    ASSERT_EQ(L.dim(), 3);
    Vec e = L.iota().col(0);
    Matrix t = L.act(S.nu()) - Matrix::identity(F, 3);
    Vec lhs = (t * t).apply(L.act(S.inv(S.ns())).apply(e));
    EXPECT_EQ(lhs, vscale(F, 2, e));
}

TEST(SL2, LinkIdentities) {
    for (int p : {3, 5, 7}) expect_ok(check_link_identities(p, Variant::SL));
    for (int p : {3, 5, 7}) expect_ok(check_link_identities(p, Variant::PSL));
    Report r = check_link_identities(3, Variant::PSL);
    for (const char* n : {"t_top_maps_e_to_f", "t_power_on_f", "nf_minus_e_in_span", "ninv_e_in_span", "sum_fixed_by_ninv", "sum_image_in_span"})
        EXPECT_TRUE(has_line(r, n)) << n;
}

TEST(SL2, FlatnessSequences) {
    for (int p : {3, 5, 7}) {
        expect_ok(check_flatness_sequences(p, Variant::SL));
        expect_ok(check_flatness_sequences(p, Variant::PSL));
    }
    Report r = check_flatness_sequences(5, Variant::SL);
    EXPECT_TRUE(has_line(r, "exact_Tn_Tn"));
    EXPECT_TRUE(has_line(r, "exact_Tn_Tn+1"));
}

TEST(SL2, TensorIsExact) {
    for (unsigned seed : {1u, 2u, 3u}) {
        expect_ok(check_tensor_exactness(3, Variant::SL, seed));
        expect_ok(check_tensor_exactness(5, Variant::SL, seed));
    }
    expect_ok(check_tensor_exactness(5, Variant::PSL, 4));
}
