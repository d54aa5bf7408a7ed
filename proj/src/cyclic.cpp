// SPDX-License-Identifier: MIT

#include "hkphi/cyclic.hpp"

#include <climits>
#include <map>
#include <random>
#include <stdexcept>

#include "hkphi/halftree.hpp"

namespace hkphi {

namespace {

constexpr int kExactZero = INT_MAX / 4;

Laurent exact_zero(const Field& F) { return {kExactZero, Series(F, 0)}; }
bool is_exact_zero(const Laurent& a) { return a.val >= kExactZero; }

Laurent ladd(const Laurent& a, const Laurent& b) {
    if (is_exact_zero(a)) return b;
    if (is_exact_zero(b)) return a;
    int v = std::min(a.val, b.val);
    return {v, a.s.shift(a.val - v) + b.s.shift(b.val - v)};
}

Laurent lneg(const Laurent& a) { return is_exact_zero(a) ? a : Laurent{a.val, -a.s}; }

Laurent lmul(const Series& x, const Laurent& a) { return is_exact_zero(a) ? a : Laurent{a.val, x * a.s}; }
Laurent lmul(const Laurent& x, const Laurent& a) {
    if (is_exact_zero(x) || is_exact_zero(a)) return exact_zero(*a.s.F);
    return {x.val + a.val, x.s * a.s};
}

Laurent lphi(const Laurent& a, int r) {
    if (is_exact_zero(a)) return a;
    return {static_cast<int>(a.val * ipow(a.s.F->p(), r)), a.s.phi_expand(r)};
}

Laurent lpsi(const Laurent& a, int r) {
    if (is_exact_zero(a)) return a;
    int P = static_cast<int>(ipow(a.s.F->p(), r));
    int q = a.val >= 0 ? a.val / P : -((-a.val + P - 1) / P);
    int rem = a.val - q * P;
    return {q, a.s.shift(rem).psi(r)};
}

// Coefficient of t^e, throwing if it is not known.
Elt coeff(const Laurent& a, int e) {
    if (is_exact_zero(a) || e < a.val) return 0;
    if (e >= a.prec()) throw std::out_of_range("coefficient beyond the known precision");
    return a.s.c[e - a.val];
}

Series random_series(const Field& F, int prec, std::mt19937& rng) {
    Series s(F, prec);
    for (auto& c : s.c) c = static_cast<Elt>(rng() % F.q());
    return s;
}

std::string kstr(const std::vector<long long>& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// StandardCyclicModule

bool StandardCyclicModule::all_k_zero() const {
    for (long long x : k)
        if (x) return false;
    return true;
}

std::vector<long long> StandardCyclicModule::i_vec() const {
    int n = perimeter();
    std::vector<long long> out(n + 1);
    for (int j = 0; j <= n; ++j) out[j] = q() - 1 - k[mod(n - j, n)];
    return out;
}

std::vector<long long> StandardCyclicModule::h_vec() const {
    int n = perimeter(), m = n - 1;
    auto iv = i_vec();
    std::vector<long long> out(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        long long pw = 1;
        for (int i = 0; i < j; ++i, pw *= q()) out[j] += iv[m + i + 1 - j] * pw;
    }
    return out;
}

std::vector<long long> StandardCyclicModule::w_vec() const {
    int n = perimeter();
    std::vector<long long> out(n, 0);
    for (int i = 0; i < n; ++i) {
        long long pw = 1;
        for (int j = 0; j < n; ++j, pw *= q()) out[i] += pw * k[mod(i - j, n)];
    }
    return out;
}

Elt StandardCyclicModule::rho_total(const Field& F) const {
    Elt r = 1;
    for (Elt x : rho) r = F.mul(r, x);
    return r;
}

std::string StandardCyclicModule::str(const Field& F) const {
    std::string s = "k=" + kstr(k) + " rho=(";
    for (size_t i = 0; i < rho.size(); ++i) s += (i ? "," : "") + F.str(rho[i]);
    s += ") eta=(";
    for (size_t i = 0; i < eta.size(); ++i) s += (i ? "," : "") + std::to_string(eta[i]);
    s += ")";
    if (r != 1) s += " r=" + std::to_string(r);
    return s;
}

void validate(const StandardCyclicModule& M) {
    int n = M.perimeter();
    if (n < 1) throw std::invalid_argument("perimeter must be >= 1");
    if (M.r < 1) throw std::invalid_argument("r must be >= 1");
    if (static_cast<int>(M.rho.size()) != n) throw std::invalid_argument("k and rho need the same length");
    if (!M.eta.empty() && static_cast<int>(M.eta.size()) != n)
        throw std::invalid_argument("eta must be empty or of the same length as k");
    for (long long x : M.k)
        if (x < 0 || x > M.q() - 1) throw std::invalid_argument("k_i must lie in [0, p^r - 1]");
    for (Elt x : M.rho)
        if (x == 0) throw std::invalid_argument("rho_i must be units");
    // gamma commutes with phi and multiplies t by a unit with leading term x.
    for (int i = 0; i < static_cast<int>(M.eta.size()); ++i)
        if (mod(M.eta[i] - M.eta[mod(i - 1, n)] - M.k[i], M.p - 1) != 0)
            throw std::invalid_argument("eta_i must equal eta_{i-1} + k_i mod p-1");
}

StandardCyclicModule from_supersingular(const Field& F, const SupersingularModule& M) {
    auto inv = supersingular_invariants(F, M);
    Realization R(M.p, M.d, M.rc);
    TorusChar a = normalize_char(M.lambda, M.p);
    StandardCyclicModule C;
    C.p = M.p;
    C.r = 1;
    for (int i = 0; i <= M.d; ++i) {
        C.k.push_back(inv.k[i]);
        Elt sign = lambda_tau_minus_one(R, a, i) == 1 ? 1 : F.neg(1);
        C.rho.push_back(F.mul(F.factorial(inv.k[i]), sign));
        C.eta.push_back(static_cast<int>(mod(R.tau_exp() * shift_char(R, a, i)[R.tau_pos()], M.p - 1)));
    }
    C.rho[0] = F.div(C.rho[0], M.b);
    return C;
}

std::optional<int> normalized_gamma_shift(const StandardCyclicModule& M) {
    if (M.eta.empty()) return std::nullopt;
    auto hv = M.h_vec();
    int s = static_cast<int>(mod(-M.eta[0], M.p - 1));
    for (int i = 0; i < M.perimeter(); ++i)
        if (mod(M.eta[i] + hv[i] + s, M.p - 1) != 0) return std::nullopt;
    return s;
}

bool is_irreducible(const StandardCyclicModule& M, bool use_gamma) {
    validate(M);
    if (use_gamma && M.eta.empty()) throw std::invalid_argument("no Gamma action given");
    int n = M.perimeter();
    for (int j = 1; j < n; ++j) {
        bool periodic = true, eta_periodic = true;
        for (int i = 0; i < n; ++i) {
            periodic &= M.k[i] == M.k[(i + j) % n];
            if (use_gamma) eta_periodic &= mod(M.eta[i] - M.eta[(i + j) % n], M.p - 1) == 0;
        }
        if (periodic && (!use_gamma || eta_periodic)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Etale module

LVec EtalePhiGammaModule::zero(int) const { return LVec(rank, exact_zero(*F)); }

LVec EtalePhiGammaModule::basis(int j, int prec) const {
    LVec x = zero(prec);
    x[j] = {0, Series::constant(*F, 1, prec)};
    return x;
}

LVec EtalePhiGammaModule::apply_phi(const LVec& x) const {
    LVec out(rank, exact_zero(*F));
    for (int j = 0; j < rank; ++j) {
        if (is_exact_zero(x[j])) continue;
        Laurent fx = lphi(x[j], r);
        for (int l = 0; l < rank; ++l)
            if (!is_exact_zero(phi[l][j])) out[l] = ladd(out[l], lmul(phi[l][j], fx));
    }
    return out;
}

LVec EtalePhiGammaModule::apply_psi(const LVec& x) const {
    LVec out(rank, exact_zero(*F));
    for (int j = 0; j < rank; ++j) {
        if (is_exact_zero(x[j])) continue;
        for (int l = 0; l < rank; ++l) {
            if (psi[l][j].N == 0) continue;
            out[l] = ladd(out[l], lpsi(lmul(psi[l][j], x[j]), r));
        }
    }
    return out;
}

LVec lvec_add(const LVec& a, const LVec& b) {
    LVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ladd(a[i], b[i]);
    return out;
}

LVec lvec_sub(const LVec& a, const LVec& b) {
    LVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ladd(a[i], lneg(b[i]));
    return out;
}

LVec lvec_mul(const Series& a, const LVec& x) {
    LVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = lmul(a, x[i]);
    return out;
}

bool lvec_zero(const LVec& x, int* prec) {
    int pr = kExactZero;
    bool z = true;
    for (const auto& c : x) {
        if (is_exact_zero(c)) continue;
        pr = std::min(pr, c.prec());
        z &= c.is_zero();
    }
    if (prec) *prec = pr;
    return z;
}

namespace {

// The f-lattice without the precision requirement.
EtalePhiGammaModule dual_lattice(const Field& F, const StandardCyclicModule& M, int N) {
    auto hv = M.h_vec();
    auto iv = M.i_vec();
    const int n = M.perimeter(), m = n - 1;
    EtalePhiGammaModule D;
    D.F = &F;
    D.p = M.p;
    D.r = M.r;
    D.rank = n;
    D.N = N;
    const long long P = M.q();
    const int big = static_cast<int>(P * N + P);
    D.phi.assign(n, std::vector<Laurent>(n, exact_zero(F)));
    D.psi.assign(n, std::vector<Series>(n, Series(F, 0)));
    D.rho_inv = F.inv(M.rho_total(F));
    D.h_top = hv[n];
    // phi(f_j) = t^{-i_{m-j}} f_{j+1}, phi(f_m) = rho^{-1} t^{-i_0} f_0.
    for (int j = 0; j < m; ++j) D.phi[j + 1][j] = {static_cast<int>(-iv[m - j]), Series::constant(F, 1, big)};
    D.phi[0][m] = {static_cast<int>(-iv[0]), Series::constant(F, D.rho_inv, big)};
    // psi(a f_j) = psi(a t^{i_{m+1-j}}) f_{j-1}, psi(a f_0) = rho psi(a t^{i_0}) f_m.
    for (int j = 1; j <= m; ++j) D.psi[j - 1][j] = Series::monomial(F, static_cast<int>(iv[m + 1 - j]), 1, big);
    D.psi[m][0] = Series::monomial(F, static_cast<int>(iv[0]), M.rho_total(F), big);
    int s = M.eta.empty() ? 0 : static_cast<int>(mod(-M.eta[0], M.p - 1));
    for (int j = 0; j < n; ++j) {
        D.gamma0.push_back(static_cast<int>(mod(hv[j] + s, M.p - 1)));
        D.lattice.push_back(hv[j]);
    }
    return D;
}

}  // namespace

EtalePhiGammaModule dual_phigamma(const Field& F, const StandardCyclicModule& M, int N) {
    validate(M);
    if (M.all_k_zero()) throw std::invalid_argument("dual module needs some k_i > 0");
    if (N < M.h_vec().back() + 1) throw std::invalid_argument("precision must be at least h_{m+1} + 1");
    return dual_lattice(F, M, N);
}

Matrix dense_t(const EtalePhiGammaModule& D, int N) {
    int dim = D.rank * N;
    Matrix T(*D.F, dim, dim);
    for (int j = 0; j < D.rank; ++j)
        for (int a = 0; a + 1 < N; ++a) T.at(j * N + a + 1, j * N + a) = 1;
    return T;
}

Matrix dense_psi(const EtalePhiGammaModule& D, int N) {
    int n = static_cast<int>(N / D.q());
    Matrix Psi(*D.F, D.rank * n, D.rank * N);
    for (int j = 0; j < D.rank; ++j)
        for (int a = 0; a < N; ++a) {
            LVec x = D.zero(N);
            x[j] = {a, Series::constant(*D.F, 1, N - a)};
            LVec y = D.apply_psi(x);
            for (int l = 0; l < D.rank; ++l)
                for (int e = 0; e < n; ++e) Psi.at(l * n + e, j * N + a) = coeff(y[l], e);
        }
    return Psi;
}

namespace {

Matrix dense_mul(const EtalePhiGammaModule& D, const Series& u, int N) {
    int dim = D.rank * N;
    Matrix A(*D.F, dim, dim);
    for (int j = 0; j < D.rank; ++j)
        for (int a = 0; a < N; ++a)
            for (int b = a; b < N; ++b) A.at(j * N + b, j * N + a) = u.c[b - a];
    return A;
}

Vec to_dense(const LVec& x, int N) {
    Vec v(x.size() * N, 0);
    for (size_t j = 0; j < x.size(); ++j)
        for (int e = 0; e < N; ++e) v[j * N + e] = coeff(x[j], e);
    return v;
}

int valuation(const Vec& v, int rank, int N) {
    int best = N;
    for (int j = 0; j < rank; ++j)
        for (int a = 0; a < N; ++a)
            if (v[j * N + a]) {
                best = std::min(best, a);
                break;
            }
    return best;
}

}  // namespace

Report check_dual(const StandardCyclicModule& M, const EtalePhiGammaModule& D, unsigned seed) {
    Report rep{"dual", {}};
    const Field& F = *D.F;
    std::mt19937 rng(seed);
    const int N = D.N, rk = D.rank;
    const long long P = D.q();
    const int n = static_cast<int>(N / P);
    const std::string pr = M.str(F) + " N=" + std::to_string(N);
    long long imax = 0;
    for (long long x : M.i_vec()) imax = std::max(imax, x);

    std::vector<LVec> samples;
    for (int j = 0; j < rk; ++j) samples.push_back(D.basis(j, N));
    for (int t = 0; t < 4; ++t) {
        LVec x(rk);
        for (auto& c : x) c = {0, random_series(F, N, rng)};
        samples.push_back(x);
    }

    bool ok = true;
    std::string wit;
    for (size_t i = 0; i < samples.size(); ++i) {
        int prec = 0;
        bool z = lvec_zero(lvec_sub(D.apply_psi(D.apply_phi(samples[i])), samples[i]), &prec);
        if (!(z && prec >= N) && wit.empty()) wit = "sample " + std::to_string(i) + " prec " + std::to_string(prec);
        ok &= z && prec >= N;
    }
    rep.add("psi_phi_identity", pr, ok, wit);

    // Sum over n < p^r of (1+t)^n phi psi (1+t)^{-n} = id.
    ok = true;
    wit.clear();
    const int big = static_cast<int>(P * N + P);
    const int need = static_cast<int>(P * n - imax);
    for (size_t i = 0; i < samples.size(); ++i) {
        LVec acc(rk, exact_zero(F));
        for (long long k = 0; k < P; ++k) {
            Series u = Series::one_plus_t_pow(F, k, big);
            LVec y = D.apply_phi(D.apply_psi(lvec_mul(u.inverse(), samples[i])));
            acc = lvec_add(acc, lvec_mul(u, y));
        }
        int prec = 0;
        bool z = lvec_zero(lvec_sub(acc, samples[i]), &prec);
        bool good = z && prec >= need;
        if (!good && wit.empty()) wit = "sample " + std::to_string(i) + " prec " + std::to_string(prec);
        ok &= good;
    }
    rep.add("partition_of_unity", pr + " prec>=" + std::to_string(need), ok, wit);

    // Dense model on V_N.
    Matrix Psi = dense_psi(D, N), T = dense_t(D, N);
    rep.add("psi_surjective", pr, rank(Psi) == rk * n, std::to_string(rank(Psi)));

    // K = intersection of ker psi((1+t)^k .) for 0 < k < p^r.
    Matrix stack(F, 0, rk * N);
    std::vector<Vec> rows;
    for (long long k = 1; k < P; ++k) {
        Matrix A = Psi * dense_mul(D, Series::one_plus_t_pow(F, k, N), N);
        for (int i = 0; i < A.rows(); ++i) rows.push_back(A.row(i));
    }
    auto from_rows = [&](const std::vector<Vec>& rs) {
        Matrix A(F, static_cast<int>(rs.size()), rk * N);
        for (size_t i = 0; i < rs.size(); ++i)
            for (int c = 0; c < rk * N; ++c) A.at(static_cast<int>(i), c) = rs[i][c];
        return A;
    };
    Matrix Kcond = from_rows(rows);
    auto Kb = kernel(Kcond);
    Subspace K(F, rk * N, Kb);
    const int cprime = static_cast<int>((imax + P - 1) / P);
    ok = true;
    wit.clear();
    for (int j = 0; j < rk; ++j)
        for (int a = 0; a + cprime < n; ++a) {
            LVec x = D.zero(N);
            x[j] = {a + cprime, Series::constant(F, 1, N)};
            Vec img = to_dense(D.apply_phi(x), N);
            Vec back = Psi.apply(img);
            Vec expect(rk * n, 0);
            expect[j * n + a + cprime] = 1;
            bool good = K.contains(img) && back == expect;
            if (!good && wit.empty()) wit = "j=" + std::to_string(j) + " a=" + std::to_string(a);
            ok &= good;
        }
    for (int i = 0; i < Psi.rows(); ++i) rows.push_back(Psi.row(i));
    int minval = N;
    for (const auto& v : kernel(from_rows(rows))) minval = std::min(minval, valuation(v, rk, N));
    bool unique = minval >= need;
    if (!unique && wit.empty()) wit = "ker psi in K has valuation " + std::to_string(minval);
    rep.add("phi_from_psi", pr, ok && unique, wit);

    // gamma(x) phi = phi gamma(x) on leading terms; only meaningful with Gamma data.
    if (!M.eta.empty()) {
        ok = true;
        for (int j = 0; j < rk; ++j)
            for (int l = 0; l < rk; ++l) {
                const Laurent& e = D.phi[l][j];
                if (is_exact_zero(e)) continue;
                ok &= mod(D.gamma0[j] - e.val - D.gamma0[l], D.p - 1) == 0;
            }
        rep.add("gamma_phi_mod_t", pr, ok);
    }

    // Dual basis e'_j: coefficient of t^0 f_j. (phi l)(y) = l(psi y), (t l)(y) = l(t y).
    ok = true;
    wit.clear();
    if (n >= 1) {
        Matrix TT = T.transpose(), PsiT = Psi.transpose();
        auto eprime = [&](int j) {
            Vec v(rk * N, 0);
            v[j * N] = 1;
            return v;
        };
        for (int j = 0; j < rk; ++j) {
            int prev = (j + rk - 1) % rk;
            Vec l = eprime(prev), ln(rk * n, 0);
            for (int c = 0; c < rk; ++c) ln[c * n] = l[c * N];
            Vec x = PsiT.apply(ln);
            for (long long t = 0; t < M.k[j]; ++t) x = TT.apply(x);
            Vec expect = vscale(F, j == 0 ? M.rho_total(F) : 1, eprime(j));
            if (x != expect && wit.empty()) wit = "j=" + std::to_string(j);
            ok &= x == expect;
        }
    } else {
        ok = false;
        wit = "N < p^r";
    }
    rep.add("dual_relations", pr, ok, wit);
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force irreducibility

namespace {

// All nonzero vectors of F^n whose first nonzero entry is 1.
std::vector<Vec> projective_points(const Field& F, int n) {
    std::vector<Vec> out;
    long long total = ipow(F.q(), n);
    for (long long code = 1; code < total; ++code) {
        Vec v(n);
        long long c = code;
        for (int i = 0; i < n; ++i, c /= F.q()) v[i] = static_cast<Elt>(c % F.q());
        int first = 0;
        while (v[first] == 0) ++first;
        if (v[first] == 1) out.push_back(v);
    }
    return out;
}

std::vector<Vec> isotypic_parts(const StandardCyclicModule& M, const Vec& v) {
    std::map<int, Vec> parts;
    for (int i = 0; i < M.perimeter(); ++i) {
        if (!v[i]) continue;
        int e = static_cast<int>(mod(M.eta[i], M.p - 1));
        auto& w = parts[e];
        if (w.empty()) w.assign(v.size(), 0);
        w[i] = v[i];
    }
    std::vector<Vec> out;
    for (auto& [_, w] : parts) out.push_back(w);
    return out;
}

}  // namespace

bool is_irreducible_bruteforce(const Field& F, const StandardCyclicModule& M, bool use_gamma, int N) {
    validate(M);
    if (use_gamma && M.eta.empty()) throw std::invalid_argument("no Gamma action given");
    const int n = M.perimeter();
    auto points = projective_points(F, n);
    if (M.all_k_zero()) {
        // t = 0 and phi e_{i-1} = rho_i e_i.
        for (const auto& v : points) {
            Subspace S(F, n);
            std::vector<Vec> todo = use_gamma ? isotypic_parts(M, v) : std::vector<Vec>{v};
            while (!todo.empty()) {
                Vec x = todo.back();
                todo.pop_back();
                if (!S.add(x)) continue;
                Vec y(n, 0);
                for (int i = 0; i < n; ++i) y[(i + 1) % n] = F.mul(M.rho[(i + 1) % n], x[i]);
                todo.push_back(y);
            }
            if (S.dim() < n) return false;
        }
        return true;
    }
    auto D = dual_lattice(F, M, N);
    const int nn = static_cast<int>(N / M.q());
    if (nn < 1) throw std::invalid_argument("precision below p^r");
    const int dim = n * N;
    Matrix TT = dense_t(D, N).transpose(), PsiT = dense_psi(D, N).transpose();
    std::vector<int> top;  // coordinates t^a f_j with a >= nn
    for (int j = 0; j < n; ++j)
        for (int a = nn; a < N; ++a) top.push_back(j * N + a);
    for (const auto& v : points) {
        Subspace S(F, dim);
        std::vector<Vec> todo;
        for (const auto& w : use_gamma ? isotypic_parts(M, v) : std::vector<Vec>{v}) {
            Vec x(dim, 0);
            for (int i = 0; i < n; ++i) x[i * N] = w[i];
            todo.push_back(x);
        }
        for (;;) {
            while (!todo.empty()) {
                Vec x = todo.back();
                todo.pop_back();
                if (S.add(x)) todo.push_back(TT.apply(x));
            }
            // phi on the part of S killed by t^{nn}.
            const auto& B = S.basis();
            Matrix R(F, static_cast<int>(top.size()), static_cast<int>(B.size()));
            for (size_t c = 0; c < B.size(); ++c)
                for (size_t i = 0; i < top.size(); ++i) R.at(static_cast<int>(i), static_cast<int>(c)) = B[c][top[i]];
            for (const auto& comb : kernel(R)) {
                Vec y(dim, 0);
                for (size_t c = 0; c < B.size(); ++c)
                    if (comb[c]) y = vadd(F, y, vscale(F, comb[c], B[c]));
                Vec yn(n * nn, 0);
                for (int j = 0; j < n; ++j)
                    for (int a = 0; a < nn; ++a) yn[j * nn + a] = y[j * N + a];
                Vec z = PsiT.apply(yn);
                if (!S.contains(z)) todo.push_back(z);
            }
            if (todo.empty()) break;
        }
        // dim of S meet ker t = span of the e'_j.
        Subspace U = S;
        int added = 0;
        for (int i = 0; i < n; ++i) {
            Vec e(dim, 0);
            e[i * N] = 1;
            added += U.add(e);
        }
        if (added > 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Inflation

std::vector<LVec> InflatedModule::act(const Series& x, const std::vector<LVec>& d) const {
    std::vector<LVec> out;
    for (int i = 0; i < copies; ++i) {
        Series xi = x.phi_expand(i);
        out.push_back(lvec_mul(xi, d[i]));
    }
    return out;
}

std::vector<LVec> InflatedModule::apply_phi(const std::vector<LVec>& d) const {
    std::vector<LVec> out(copies);
    for (int i = 1; i < copies; ++i) out[i - 1] = d[i];
    out[copies - 1] = base.apply_phi(d[0]);
    return out;
}

std::vector<int> InflatedModule::gamma0() const {
    std::vector<int> out;
    for (int i = 0; i < copies; ++i) out.insert(out.end(), base.gamma0.begin(), base.gamma0.end());
    return out;
}

InflatedModule inflate_to_phi(const EtalePhiGammaModule& D) { return InflatedModule{D, D.r}; }

EtalePhiGammaModule direct_sum(const EtalePhiGammaModule& a, const EtalePhiGammaModule& b) {
    if (a.F != b.F || a.r != b.r) throw std::invalid_argument("direct sum needs the same field and r");
    EtalePhiGammaModule s;
    s.F = a.F;
    s.p = a.p;
    s.r = a.r;
    s.rank = a.rank + b.rank;
    s.N = std::min(a.N, b.N);
    s.phi.assign(s.rank, std::vector<Laurent>(s.rank, exact_zero(*a.F)));
    s.psi.assign(s.rank, std::vector<Series>(s.rank, Series(*a.F, 0)));
    for (int i = 0; i < a.rank; ++i)
        for (int j = 0; j < a.rank; ++j) s.phi[i][j] = a.phi[i][j], s.psi[i][j] = a.psi[i][j];
    for (int i = 0; i < b.rank; ++i)
        for (int j = 0; j < b.rank; ++j)
            s.phi[a.rank + i][a.rank + j] = b.phi[i][j], s.psi[a.rank + i][a.rank + j] = b.psi[i][j];
    s.gamma0 = a.gamma0;
    s.gamma0.insert(s.gamma0.end(), b.gamma0.begin(), b.gamma0.end());
    s.lattice = a.lattice;
    s.lattice.insert(s.lattice.end(), b.lattice.begin(), b.lattice.end());
    return s;
}

Report check_inflation(const InflatedModule& I, unsigned seed) {
    Report rep{"inflation", {}};
    const auto& D = I.base;
    const Field& F = *D.F;
    std::mt19937 rng(seed);
    const std::string pr = "rank=" + std::to_string(D.rank) + " r=" + std::to_string(D.r);
    const int N = D.N;
    rep.add("rank", pr, I.rank() == D.r * D.rank, std::to_string(I.rank()));

    auto rnd = [&] {
        std::vector<LVec> d(I.copies, LVec(D.rank));
        for (auto& c : d)
            for (auto& x : c) x = {0, random_series(F, N, rng)};
        return d;
    };
    auto same = [&](const std::vector<LVec>& a, const std::vector<LVec>& b, int need) {
        for (size_t i = 0; i < a.size(); ++i) {
            int prec = 0;
            if (!lvec_zero(lvec_sub(a[i], b[i]), &prec) || prec < need) return false;
        }
        return true;
    };

    // phi~(x . d) = phi(x) . phi~(d).
    bool ok = true;
    for (int t = 0; t < 3; ++t) {
        auto d = rnd();
        Series x = random_series(F, N, rng);
        auto lhs = I.apply_phi(I.act(x, d));
        auto rhs = I.act(x.phi_expand(1), I.apply_phi(d));
        ok &= same(lhs, rhs, N / 2);
    }
    rep.add("semilinear", pr, ok);

    // phi~^r on the 0-component is phi^r_D, landing back in the 0-component.
    ok = true;
    for (int t = 0; t < 3; ++t) {
        auto d = rnd();
        for (int i = 1; i < I.copies; ++i) d[i] = D.zero(N);
        auto y = d;
        for (int k = 0; k < I.copies; ++k) y = I.apply_phi(y);
        auto want = D.apply_phi(d[0]);
        int prec = 0;
        ok &= lvec_zero(lvec_sub(y[0], want), &prec);
        for (int i = 1; i < I.copies; ++i) ok &= lvec_zero(y[i]);
    }
    rep.add("phi_r_recovers_input", pr, ok);

    // Gamma acts diagonally: the mod t exponents repeat per copy.
    auto g = I.gamma0();
    ok = static_cast<int>(g.size()) == I.rank();
    for (int i = 0; ok && i < I.rank(); ++i) ok &= g[i] == D.gamma0[i % D.rank];
    rep.add("gamma_diagonal", pr, ok);
    return rep;
}

// ---------------------------------------------------------------------------
// Cyclic subquotients of reduced standard modules

int k_floor(const Realization& R, const TorusChar& theta, const Perm& w) { return rs_exponent(R, theta, w); }

int k_ceil(const Realization& R, const TorusChar& theta, const Perm& w) {
    int c = rs_exponent(R, theta, w);
    return c == 0 ? R.p() - 1 : c;
}

std::vector<CyclicPiece> filtration_to_cyclics(const Field& F, const ReducedStandardModule& M,
                                               const AdmissibleFiltration& filt) {
    const int p = M.p, d = M.d;
    Realization R(p, d, M.rc);
    for (const auto& [v, val] : M.sigma.table())
        if (val == -1 && rs_exponent(R, M.theta, v) == 0)
            throw std::invalid_argument("sigma(v) = -1 with theta(v h v^{-1}) trivial at " + perm_word(v));
    Perm ub = perm_ubar(d), ubinv = perm_inverse(ub), sd = perm_s(d, d);
    auto kappa = [&](const Perm& w) { return M.kappa[M.index(w)] == 1 ? Elt(1) : F.neg(1); };
    std::vector<CyclicPiece> out;
    for (size_t li = 0; li < filt.levels.size(); ++li) {
        auto prev = filt.prefix(static_cast<int>(li));
        for (const auto& orbit : filt.levels[li].orbits) {
            CyclicPiece piece;
            piece.level = static_cast<int>(li) + 1;
            piece.orbit = orbit;
            auto& C = piece.mod;
            C.p = p;
            C.r = 1;
            int t = static_cast<int>(orbit.size());
            for (int j = 0; j < t; ++j) {
                const Perm& w = orbit[(j + t - 1) % t];
                const Perm& target = orbit[j];
                Perm x = w * ubinv, y = x * sd;
                bool inW = prev.count(y * ub) > 0;
                bool a = M.sigma.is(x, -1) || M.sigma.is(y, 1);
                bool b = M.sigma.is(x, 1) || M.sigma.is(y, -1);
                int n = 0, br = 0;
                Elt rp = 1;
                Perm tgt = x;
                if (M.sigma.is(x, 0)) {
                    br = 1;
                    n = k_floor(R, M.theta, x);
                    rp = F.factorial(n);
                } else if (M.sigma.is(y, 0)) {
                    br = 2;
                    n = k_ceil(R, M.theta, x);
                    rp = F.factorial(n);
                } else if (a && !inW) {
                    br = 3;
                    n = k_ceil(R, M.theta, x);
                    rp = F.factorial(n);
                } else if (b && inW) {
                    br = 4;
                    n = p - 1 - k_ceil(R, M.theta, y);
                    rp = F.factorial(n);
                } else if (b) {
                    br = 5;
                    n = p - 1;
                    rp = kappa(y);
                    tgt = y;
                } else {
                    br = 6;
                    n = 0;
                    rp = kappa(y);
                    tgt = y;
                }
                if (tgt != target) throw std::logic_error("branch table disagrees with the successor map at " + perm_word(w));
                // phi g_w = eps_w s_d g_x and s_d g_x = kappa_x n^{-1} g_x.
                Elt rho = F.mul(F.mul(M.eps[M.index(w)], kappa(x)), rp);
                C.k.push_back(n);
                C.rho.push_back(rho);
                C.eta.push_back(static_cast<int>(mod(R.tau_exp() * M.theta[R.coord(target)[R.tau_pos()]], p - 1)));
                piece.branch.push_back(br);
            }
            validate(C);
            out.push_back(std::move(piece));
        }
    }
    return out;
}

Report validate_cyclics_h0(const Field& F, const ReducedStandardModule& M, const AdmissibleFiltration& filt,
                           const std::vector<CyclicPiece>& pieces, int N) {
    Report rep{"cyclics_h0", {}};
    Realization R(M.p, M.d, M.rc);
    HalfTree T(F, R, M.act);
    const int D = T.dense_dim(N);
    auto g = [&](const Perm& w) {
        Vec e(M.act.dim, 0);
        e[M.index(w)] = 1;
        return T.embed(e);
    };
    const Elt gen = F.fp_generator();
    for (size_t li = 0; li < filt.levels.size(); ++li) {
        // N_{i-1}: span of t^a phi^b g_w, w in W_{i-1}.
        Subspace S(F, D);
        for (const auto& w : filt.prefix(static_cast<int>(li))) {
            auto x = g(w);
            for (int b = 0; b < N; ++b) {
                auto y = T.normal_form(x);
                for (int a = 0; a <= D && !y.empty(); ++a) {
                    S.add(T.to_dense(y, N));
                    y = T.normal_form(T.t(y));
                }
                x = T.phi(x);
            }
        }
        std::string pl = "level=" + std::to_string(li + 1) + " N=" + std::to_string(N);
        // The classes of g_w on this level stay independent modulo N_{i-1}.
        Subspace U = S;
        int added = 0;
        for (const auto& w : filt.levels[li].members) added += U.add(T.to_dense(T.normal_form(g(w)), N));
        rep.add("classes_independent", pl, added == static_cast<int>(filt.levels[li].members.size()),
                std::to_string(added));
        for (const auto& piece : pieces) {
            if (piece.level != static_cast<int>(li) + 1) continue;
            const auto& C = piece.mod;
            int t = static_cast<int>(piece.orbit.size());
            for (int j = 0; j < t; ++j) {
                const Perm& w = piece.orbit[(j + t - 1) % t];
                const Perm& target = piece.orbit[j];
                auto lhs = T.t_pow(T.phi(g(w)), C.k[j]);
                auto diff = T.add(lhs, T.scale(F.neg(C.rho[j]), g(target)));
                bool ok = S.contains(T.to_dense(T.normal_form(diff), N));
                std::string pr = pl + " " + perm_word(w) + "->" + perm_word(target) + " n=" + std::to_string(C.k[j]) +
                                 " branch=" + std::to_string(piece.branch[j]);
                std::string wit = "rho=" + F.str(C.rho[j]);
                if (!ok)
                    for (int c = 0; c < F.q(); ++c) {
                        auto dc = T.add(lhs, T.scale(F.neg(static_cast<Elt>(c)), g(target)));
                        if (S.contains(T.to_dense(T.normal_form(dc), N))) wit += " holds with " + F.str(static_cast<Elt>(c));
                    }
                rep.add("relation", pr, ok, wit);
                Elt ev = F.pow(gen, C.eta[j]);
                bool gok = T.equal(T.gamma(g(target), gen), T.scale(ev, g(target)));
                rep.add("gamma_eigenvalue", pr, gok);
            }
        }
    }
    return rep;
}

int galois_rank(const std::vector<CyclicPiece>& pieces) {
    int r = 0;
    for (const auto& pc : pieces)
        if (!pc.mod.all_k_zero()) r += pc.mod.perimeter();
    return r;
}

TorusChar generic_theta(int p, int d, RealCase rc, bool* generic) {
    Realization R(p, d, rc);
    SigmaMap dom(d);
    TorusChar cur(d + 1, 0), best;
    int best_n = -1, total = static_cast<int>(dom.table().size());
    while (true) {
        int n = 0;
        for (const auto& [v, _] : dom.table()) n += rs_exponent(R, cur, v) != 0;
        if (n > best_n) best_n = n, best = cur;
        if (n == total) break;
        int i = d;
        while (i >= 0 && ++cur[i] == p - 1) cur[i--] = 0;
        if (i < 0) break;
    }
    if (generic) *generic = best_n == total;
    return best;
}

}  // namespace hkphi
