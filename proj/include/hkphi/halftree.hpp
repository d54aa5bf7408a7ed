// SPDX-License-Identifier: MIT
//
// H_0 of the level-1 coefficient system on the half tree, in the model where
// the vertices of level i are nu^m phi^i F_0 (0 <= m < p^i), each carrying the
// link module L = ind (x)_H M, and the edge nu^m phi^i C between level i and
// i-1 carrying M. Elements are kept as sparse vertex sums and compared through
// a normal form: every vertex of level >= 1 holds a vector in a fixed
// complement of the embedded M.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "hkphi/hecke.hpp"
#include "hkphi/report.hpp"
#include "hkphi/sl2.hpp"

namespace hkphi {

class HalfTree {
public:
    using Key = std::pair<int, long long>;  // (level, index)
    using Elem = std::map<Key, Vec>;

    HalfTree(const Field& F, const Realization& R, const HeckeAction& M);

    const Field& field() const { return *F_; }
    int p() const { return F_->p(); }
    int dim_link() const { return L_->dim(); }
    int dim_m() const { return M_.dim; }
    const LinkModule& link() const { return *L_; }
    const HeckeAction& action() const { return M_; }

    // Operators on L.
    const Matrix& iota() const { return iota_; }
    const Matrix& nubar() const { return nubar_; }
    const Matrix& sd_link() const { return sd_; }
    // tau(x) on L: conjugation of cosets, T_{tau(x)^{-1}} on M.
    Matrix tau_link(Elt x) const;
    // Edge transition to the parent vertex: y -> s_d iota(T_{u^{-1}} y).
    const Matrix& kappa() const { return kappa_; }

    // The image of m in V(e_0) = M, sitting at the root.
    Elem embed(const Vec& m) const;
    Elem normal_form(const Elem& x) const;
    bool equal(const Elem& a, const Elem& b) const;
    bool is_zero(const Elem& a) const { return normal_form(a).empty(); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem scale(Elt s, const Elem& a) const;
    int max_level(const Elem& a) const;

    Elem nu_pow(const Elem& a, long long n) const;
    Elem t(const Elem& a) const;
    Elem t_pow(const Elem& a, long long k) const;
    Elem phi(const Elem& a) const;
    // Action of tau(a) for an integer a prime to p, used up to level `levels`.
    Elem gamma_int(const Elem& a, long long aint) const;
    // gamma(x) for x in F_p^x via the Teichmueller lift.
    Elem gamma(const Elem& a, Elt x) const;

    // Dense coordinates of H_N (vertices of level < N), for elements in normal form.
    int dense_dim(int N) const;
    Vec to_dense(const Elem& nf, int N) const;
    Elem from_dense(const Vec& v, int N) const;
    // Matrix of a level-preserving operator on H_N.
    template <class Op>
    Matrix dense_operator(int N, Op op) const {
        int D = dense_dim(N);
        Matrix m(*F_, D, D);
        for (int c = 0; c < D; ++c) {
            Vec e(D, 0);
            e[c] = 1;
            m.set_col(c, to_dense(normal_form(op(from_dense(e, N))), N));
        }
        return m;
    }

private:
    const Field* F_;
    Realization R_;
    HeckeAction M_;
    std::unique_ptr<SL2Group> G_;
    std::unique_ptr<UniversalModule> U_;
    std::unique_ptr<LinkModule> L_;
    Matrix iota_, nubar_, sd_, kappa_;
    std::vector<Matrix> nubar_pows_, kappa_q_;  // nubar^q and nubar^q kappa, q < p
    Subspace image_;                            // iota(M) in L
    Matrix coeff_to_m_;                         // basis of image_ -> M coordinates
    std::vector<int> comp_;                     // complement coordinates
    int max_index_level_ = 12;

    void push(Elem& x, const Key& k, const Vec& v) const;
};

// Dense summary of H_N.
struct H0Complex {
    int N = 0;
    int dim = 0;
    int link_dim = 0;
    int kernel_t_dim = 0;
    Matrix t;
    Matrix gamma_gen;  // gamma(g), g the generator of F_p^x
    Matrix phi;        // H_{N-1} -> H_N
    // Boundary-matrix oracle: dim of coker(boundary) on the truncated tree.
    int coker_dim = 0;
};

H0Complex build_h0(const Field& F, const Realization& R, const HeckeAction& M, int N);
// Explicit boundary matrix of the truncated complex; returns dim coker.
int boundary_coker_dim(const HalfTree& T, int N);

// Closed-form identities for a supersingular module checked inside H.
Report crosscheck_monomial_relations(const Field& F, const SupersingularModule& M, int N);
// gamma_0 trivial on M, gamma phi = phi gamma, gamma nu = nu^a gamma on sampled elements.
Report check_halftree_commutations(const Field& F, const Realization& R, const HeckeAction& M, int N,
                                   unsigned seed);
// 0 -> H(M') -> H(M) -> H(M/M') -> 0 at depth N for the stable span B.
Report check_exactness_transport(const Field& F, const Realization& R, const HeckeAction& M, const Matrix& B, int N);

}  // namespace hkphi
