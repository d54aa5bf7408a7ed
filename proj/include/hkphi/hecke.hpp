// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.
//
// Iwahori-Hecke modules for GL_{d+1}(Q_p): the two matrix realizations of
// u, s_d, tau, the supersingular modules M[lambda,J,b] and the reduced
// standard modules M(theta,sigma,epsilon). Only T_t, T_{n_{s_d}}, T_{u^{-1}}
// and T_{s_d} are modelled.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hkphi/field.hpp"
#include "hkphi/linalg.hpp"
#include "hkphi/rational.hpp"
#include "hkphi/sl2.hpp"
#include "hkphi/weyl.hpp"

namespace hkphi {

enum class RealCase { A, B };
inline const char* case_name(RealCase c) { return c == RealCase::A ? "A" : "B"; }

// Exact matrices of one realization, plus the coordinate bookkeeping the
// module code uses instead of multiplying matrices.
class Realization {
public:
    Realization(int p, int d, RealCase c);
    int p() const { return p_; }
    int d() const { return d_; }
    RealCase which() const { return c_; }

    QMat u() const;
    QMat sd() const;
    QMat s(int j) const;  // s_j = u^{d-j} s_d u^{j-d}, 0 <= j <= d
    QMat tau(const mpq_class& a) const;
    QMat n_sd() const;    // image of [[0,1],[-1,0]] in the s_d block
    QMat h_s(int j, const mpq_class& x) const;
    QMat phi() const { return sd() * u(); }
    QMat weyl(const Perm& w) const;  // product of the s_j matrices along a reduced word
    // Image of an SL_2 matrix in the s_d block.
    QMat embed(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) const;
    QMat diag(const std::vector<mpq_class>& x) const { return QMat::diag(x); }

    // Conjugation w t w^{-1} moves the diagonal entry at j to coord(w)(j).
    Perm coord(const Perm& w) const;
    // Diagonal positions of x and x^{-1} in h_{s_j}(x).
    std::pair<int, int> hs_positions(int j) const;
    // tau(x) = diag with x^{exp} at pos.
    int tau_pos() const { return c_ == RealCase::A ? d_ : 0; }
    int tau_exp() const { return c_ == RealCase::A ? -1 : 1; }
    // Coordinates (i, j) of the SL_2 block of s_d.
    std::pair<int, int> block() const { return c_ == RealCase::A ? std::pair{d_ - 1, d_} : std::pair{0, 1}; }

private:
    int p_, d_;
    RealCase c_;
};

// Exponents (a_0..a_d) mod p-1 of lambda(diag(x_j)) = prod x_j^{a_j}.
using TorusChar = std::vector<int>;

TorusChar normalize_char(const TorusChar& a, int p);
// lambda^{[i]}(t) = lambda(u^{-i} t u^i).
TorusChar shift_char(const Realization& R, const TorusChar& a, int i);
// c in [0, p-2] with lambda(h_{s_j}(x)) = x^c.
int coroot_exponent(const Realization& R, const TorusChar& a, int j);
// Bitmask of S_lambda (bit j <-> s_j).
unsigned s_lambda(const Realization& R, const TorusChar& a);
// J^{[i]} = u^i J u^{-i}.
unsigned shift_subset(int d, unsigned J, int i);
std::pair<TorusChar, unsigned> u_conjugate(const Realization& R, const TorusChar& a, unsigned J, int i);
bool satisfies_diff(const Realization& R, const TorusChar& a, unsigned J);
std::string subset_str(int d, unsigned J);

struct SupersingularModule {
    int p = 0, d = 0;
    RealCase rc = RealCase::A;
    TorusChar lambda;
    unsigned J = 0;
    Elt b = 1;
    std::string str(const Field& F) const;
};

struct SupersingularInvariants {
    std::vector<int> k;             // k_0..k_d
    std::vector<long long> w;       // w_0..w_d
    Elt delta = 0;
    std::vector<int> i_;            // i_0..i_{d+1}
    std::vector<long long> h_;      // h_0..h_{d+1}
    long long h = 0;
    int s = 0;
    Elt beta_power = 0;             // beta^{d+1}
};

// Throws std::invalid_argument unless J is inside S_lambda.
void validate(const SupersingularModule& M);
SupersingularInvariants supersingular_invariants(const Field& F, const SupersingularModule& M);
// lambda^{[i]}(tau(-1)) in {+1,-1}.
int lambda_tau_minus_one(const Realization& R, const TorusChar& a, int i);
// Representatives of u-orbits of pairs (lambda, J) with J in S_lambda and (diff).
std::vector<SupersingularModule> enumerate_supersingular(const Field& F, int d, Elt b, RealCase rc = RealCase::A);
// Number of u-orbits of such pairs, counted by a separate Burnside-free pass.
long long count_orbits_bruteforce(int p, int d, RealCase rc);

// The operators used by the half-tree construction.
struct HeckeAction {
    int dim = 0;
    Matrix Tn;               // T_{n_{s_d}}
    Matrix Tuinv;            // T_{u^{-1}}
    std::vector<Matrix> Tt;  // T_{t_j}, t_j = g at position j, 1 elsewhere
    Matrix Th;               // T_{h_{s_d}(g)}, g the generator of F_p^x
    Matrix TtauInv;          // T_{tau(g)^{-1}}
    std::string name;

    SL2HeckeModule sl2() const { return {dim, Tn, Th, name}; }
    // T_t for t = diag(g^{e_0}, ..., g^{e_d}).
    Matrix torus(const Field& F, const std::vector<int>& e) const;
    // T_{tau(x)^{-1}} for x in F_p^x.
    Matrix tau_inv(const Field& F, Elt x) const { return TtauInv.pow(F.fp_log(x)); }
};

// Fills Th and TtauInv from Tt.
HeckeAction make_action(const Field& F, const Realization& R, Matrix Tn, Matrix Tuinv, std::vector<Matrix> Tt,
                        std::string name);
// Torus relations, the quadratic and normaliser relations for T_{n_{s_d}},
// T_{u^{-1}} T_t = T_{u t u^{-1}} T_{u^{-1}}, and centrality of T_{u^{-1}}^{d+1}.
// Empty on success.
std::string check_hecke_relations(const Field& F, const Realization& R, const HeckeAction& A);
// Action on the span of the columns of B (must be stable), resp. on the quotient by it.
HeckeAction restrict_action(const Field& F, const Realization& R, const HeckeAction& A, const Matrix& B);
HeckeAction quotient_action(const Field& F, const Realization& R, const HeckeAction& A, const Matrix& B);
// Smallest stable subspace containing the given vectors, as columns.
Matrix stable_span(const Field& F, const HeckeAction& A, const std::vector<Vec>& gens);

// Basis e_0..e_d.
HeckeAction supersingular_action(const Field& F, const SupersingularModule& M);

struct ReducedStandardModule {
    int p = 0, d = 0;
    RealCase rc = RealCase::A;
    TorusChar theta;
    SigmaMap sigma{1};
    std::vector<Perm> basis;   // weyl_elements(d)
    std::vector<Elt> eps;      // indexed like basis
    std::vector<int> kappa;    // theta(w tau(-1) w^{-1})
    Matrix Tsd;
    HeckeAction act;

    int index(const Perm& w) const;
};

// Exponent k with theta(w h_{s_d}(x) w^{-1}) = x^k, k in [0, p-2].
int rs_exponent(const Realization& R, const TorusChar& theta, const Perm& w);
ReducedStandardModule reduced_standard_make(const Field& F, RealCase rc, const TorusChar& theta,
                                            const SigmaMap& sigma, const std::vector<Elt>& eps);

}  // namespace hkphi
