// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.
//
// SL_2(F_p) and PSL_2(F_p), the permutation module ind_U^S 1 on right cosets of
// the upper unipotent group U, its Hecke operators, and the link modules
// L = ind (x)_H M for finite Hecke modules M.

#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "hkphi/field.hpp"
#include "hkphi/linalg.hpp"
#include "hkphi/report.hpp"

namespace hkphi {

enum class Variant { SL, PSL };

struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;
    bool operator==(const Mat2&) const = default;
    std::string str() const;
};

class SL2Group {
public:
    SL2Group(int p, Variant v);

    int p() const { return p_; }
    Variant variant() const { return v_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const Mat2& elem(int i) const { return elems_[i]; }

    // Reduces mod p (and mod +-1 for PSL) and returns the element index.
    int index(const Mat2& g) const;
    Mat2 canon(const Mat2& g) const;
    Mat2 mul(const Mat2& x, const Mat2& y) const;
    Mat2 inv(const Mat2& x) const;

    Mat2 nu(int i = 1) const { return canon({1, i, 0, 1}); }
    Mat2 ns() const { return canon({0, 1, -1, 0}); }
    Mat2 hs(int x) const;

    int num_cosets() const { return static_cast<int>(reps_.size()); }
    int coset(int elem_index) const { return coset_[elem_index]; }
    int coset_of(const Mat2& g) const { return coset_[index(g)]; }
    const Mat2& coset_rep(int c) const { return elems_[reps_[c]]; }

private:
    int p_;
    Variant v_;
    std::vector<Mat2> elems_;
    std::unordered_map<int, int> idx_;
    std::vector<int> coset_, reps_;
    int code(const Mat2& g) const { return ((g.a * p_ + g.b) * p_ + g.c) * p_ + g.d; }
};

// ind_U^S 1 with basis chi_{Ux}, x running through coset representatives.
class UniversalModule {
public:
    UniversalModule(const Field& F, const SL2Group& G);

    const SL2Group& group() const { return *G_; }
    const Field& field() const { return *F_; }
    int dim() const { return G_->num_cosets(); }
    int base() const { return G_->coset_of(Mat2{}); }

    // g . chi_{Ux} = chi_{U x g^{-1}}; returned as a coset permutation.
    std::vector<int> act_perm(const Mat2& g) const;
    Matrix act(const Mat2& g) const;
    // T_g chi_{Ux} = sum over Uh with h x^{-1} in U g U of chi_{Uh}.
    Matrix hecke(const Mat2& g) const;

private:
    const Field* F_;
    const SL2Group* G_;
};

// Finite module over H(S,U)_k, given by T_{n_s} and T_{h_s(g)} for the
// generator g of F_p^x.
struct SL2HeckeModule {
    int dim = 0;
    Matrix Tn, Th;
    std::string name;
};

SL2HeckeModule chi_module(const Field& F, int r);
SL2HeckeModule m_module(const Field& F, int r);

class LinkModule {
public:
    LinkModule(const UniversalModule& U, const SL2HeckeModule& M);

    int dim() const { return static_cast<int>(comp_.size()); }
    int dim_m() const { return dimM_; }
    int ambient() const { return U_->dim() * dimM_; }
    const UniversalModule& universal() const { return *U_; }

    Vec project(const Vec& amb) const;
    Vec lift(const Vec& v) const;
    // Action of a group element.
    Matrix act(const Mat2& g) const;
    // The embedding m -> class of chi_U (x) m, as a dim x dim_m matrix.
    Matrix iota() const;
    // Operator chi_{Uy} (x) m -> chi_{U perm(y)} (x) A m; checks it preserves the relations.
    Matrix induced(const std::vector<int>& coset_perm, const Matrix& A, bool* well_defined = nullptr) const;
    // L(f) : L(src) -> this for a Hecke map f : M_src -> M.
    Matrix functor(const LinkModule& src, const Matrix& f) const;
    // Dimension of the U-invariants.
    int invariant_dim() const;

private:
    const UniversalModule* U_;
    int dimM_;
    Subspace R_;
    std::vector<int> comp_;
};

Report check_link_identities(int p, Variant v);
Report check_flatness_sequences(int p, Variant v);
// Random submodule/quotient exactness of M -> ind (x)_H M.
Report check_tensor_exactness(int p, Variant v, unsigned seed);

}  // namespace hkphi
