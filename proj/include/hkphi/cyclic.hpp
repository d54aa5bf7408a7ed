// SPDX-License-Identifier: MIT
//
// Standard cyclic modules over k[[t]][phi^r, Gamma], their dual etale
// modules on the integral lattice f_j = t^{h_j} g_j, the phi^r -> phi
// inflation, and the cyclic subquotients of reduced standard modules.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hkphi/hecke.hpp"
#include "hkphi/report.hpp"
#include "hkphi/series.hpp"
#include "hkphi/weyl.hpp"

namespace hkphi {

struct StandardCyclicModule {
    int p = 0, r = 1;
    std::vector<long long> k;  // k_0..k_m in [0, p^r - 1]
    std::vector<Elt> rho;      // t^{k_i} phi^r e_{i-1} = rho_i e_i
    std::vector<int> eta;      // gamma(x) e_i = x^{eta_i} e_i, mod p-1; empty without Gamma

    int perimeter() const { return static_cast<int>(k.size()); }
    long long q() const { return ipow(p, r); }
    bool all_k_zero() const;
    std::vector<long long> i_vec() const;  // i_0..i_{m+1}
    std::vector<long long> h_vec() const;  // h_0..h_{m+1}
    std::vector<long long> w_vec() const;  // w_0..w_m
    Elt rho_total(const Field& F) const;
    std::string str(const Field& F) const;
};

// Throws std::invalid_argument on malformed data.
void validate(const StandardCyclicModule& M);

StandardCyclicModule from_supersingular(const Field& F, const SupersingularModule& M);
// The s with eta_i = -h_i - s for all i, if it exists.
std::optional<int> normalized_gamma_shift(const StandardCyclicModule& M);
// Periodicity criterion: sufficient for irreducibility, and also necessary
// once the field contains the relevant roots of the rho_i (e.g. all rho_i = 1).
bool is_irreducible(const StandardCyclicModule& M, bool use_gamma);
// Closure of every line in ker t under t, phi (and gamma) inside the truncated
// dual of the f-lattice at precision N.
bool is_irreducible_bruteforce(const Field& F, const StandardCyclicModule& M, bool use_gamma, int N);

// t^val * s.
struct Laurent {
    int val = 0;
    Series s;
    int prec() const { return val + s.N; }
    bool is_zero() const { return s.is_zero(); }
};
using LVec = std::vector<Laurent>;

struct EtalePhiGammaModule {
    const Field* F = nullptr;
    int p = 0, r = 1, rank = 0, N = 0;
    // phi(sum a_j f_j) = sum_l phi(a_j) phi[l][j] f_l.
    std::vector<std::vector<Laurent>> phi;
    // psi(sum a_j f_j) = sum_l psi(a_j psi[l][j]) f_l.
    std::vector<std::vector<Series>> psi;
    // gamma(x) f_j = x^{gamma0[j]} f_j mod t.
    std::vector<int> gamma0;
    // f_j = t^{lattice[j]} g_j; phi(g_m) = rho_inv t^{-h_top} g_0.
    std::vector<long long> lattice;
    Elt rho_inv = 1;
    long long h_top = 0;

    long long q() const { return ipow(p, r); }
    LVec zero(int prec) const;
    LVec basis(int j, int prec) const;
    LVec apply_phi(const LVec& x) const;
    LVec apply_psi(const LVec& x) const;
};

LVec lvec_add(const LVec& a, const LVec& b);
LVec lvec_sub(const LVec& a, const LVec& b);
LVec lvec_mul(const Series& a, const LVec& x);
// Zero on the common known precision; also returns that precision.
bool lvec_zero(const LVec& x, int* prec = nullptr);

// Requires some k_i > 0 and N >= h_{m+1} + 1.
EtalePhiGammaModule dual_phigamma(const Field& F, const StandardCyclicModule& M, int N);

// psi phi = id, partition of unity, reconstruction of phi from psi,
// surjectivity of psi, gamma/phi compatibility mod t (when eta is given), and the dual relations.
Report check_dual(const StandardCyclicModule& M, const EtalePhiGammaModule& D, unsigned seed);

// Dense matrices on V_N = D/t^N D, basis t^a f_j at index j*N + a.
Matrix dense_t(const EtalePhiGammaModule& D, int N);
Matrix dense_psi(const EtalePhiGammaModule& D, int N);  // V_N -> V_{N / p^r}

// D~ = D^(0) + ... + D^(r-1) with x.(d_i) = (phi^i(x) d_i).
struct InflatedModule {
    EtalePhiGammaModule base;
    int copies = 1;
    int rank() const { return copies * base.rank; }
    std::vector<LVec> act(const Series& x, const std::vector<LVec>& d) const;
    std::vector<LVec> apply_phi(const std::vector<LVec>& d) const;
    std::vector<int> gamma0() const;
};

InflatedModule inflate_to_phi(const EtalePhiGammaModule& D);
EtalePhiGammaModule direct_sum(const EtalePhiGammaModule& a, const EtalePhiGammaModule& b);
Report check_inflation(const InflatedModule& I, unsigned seed);

struct CyclicPiece {
    int level = 0;  // 1-based
    std::vector<Perm> orbit;
    StandardCyclicModule mod;
    std::vector<int> branch;  // which case of the successor map produced step j
};

// floor/ceil of k(w).
int k_floor(const Realization& R, const TorusChar& theta, const Perm& w);
int k_ceil(const Realization& R, const TorusChar& theta, const Perm& w);

std::vector<CyclicPiece> filtration_to_cyclics(const Field& F, const ReducedStandardModule& M,
                                               const AdmissibleFiltration& filt);
// Each relation t^n phi g_{w_{j-1}} = rho g_{w_j} mod N_{i-1} and the gamma
// eigenvalues, checked inside H_0 of the half tree at depth N.
Report validate_cyclics_h0(const Field& F, const ReducedStandardModule& M, const AdmissibleFiltration& filt,
                           const std::vector<CyclicPiece>& pieces, int N);

// First theta (lexicographic) with the most v in W^{s_d} having k(v) != 0;
// *generic says whether every such v has k(v) != 0.
TorusChar generic_theta(int p, int d, RealCase rc, bool* generic = nullptr);

// Rank of the etale module attached to the pieces: pieces with all k = 0 contribute 0.
int galois_rank(const std::vector<CyclicPiece>& pieces);

}  // namespace hkphi
