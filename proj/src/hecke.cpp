// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include "hkphi/hecke.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hkphi {

namespace {

QMat qpow(const QMat& m, int e) {
    QMat base = e < 0 ? m.inverse() : m, r = QMat::identity(m.n());
    for (int k = 0; k < std::abs(e); ++k) r = r * base;
    return r;
}

int md(int a, int n) { return static_cast<int>(mod(a, n)); }

}  // namespace

Realization::Realization(int p, int d, RealCase c) : p_(p), d_(d), c_(c) {
    if (d < 1) throw std::invalid_argument("rank d must be >= 1");
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
}

QMat Realization::u() const {
    QMat m(d_ + 1);
    if (c_ == RealCase::A) {
        for (int i = 0; i < d_; ++i) m.at(i, i + 1) = 1;
        m.at(d_, 0) = p_;
    } else {
        for (int i = 0; i < d_; ++i) m.at(i + 1, i) = 1;
        m.at(0, d_) = mpq_class(1, p_);
    }
    return m;
}

QMat Realization::embed(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) const {
    QMat m = QMat::identity(d_ + 1);
    auto [i, j] = block();
    m.at(i, i) = a;
    m.at(i, j) = b;
    m.at(j, i) = c;
    m.at(j, j) = d;
    return m;
}

QMat Realization::sd() const { return c_ == RealCase::A ? embed(0, 1, 1, 0) : embed(0, -1, -1, 0); }

QMat Realization::s(int j) const {
    if (j < 0 || j > d_) throw std::invalid_argument("s_j needs 0 <= j <= d");
    return qpow(u(), d_ - j) * sd() * qpow(u(), j - d_);
}

QMat Realization::tau(const mpq_class& a) const {
    std::vector<mpq_class> x(d_ + 1, 1);
    x[tau_pos()] = c_ == RealCase::A ? mpq_class(1 / a) : a;
    return QMat::diag(x);
}

QMat Realization::n_sd() const { return embed(0, 1, -1, 0); }

QMat Realization::h_s(int j, const mpq_class& x) const {
    return qpow(u(), d_ - j) * embed(x, 0, 0, 1 / x) * qpow(u(), j - d_);
}

QMat Realization::weyl(const Perm& w) const {
    QMat m = QMat::identity(d_ + 1);
    for (int j : perm_reduced_word(w)) m = m * s(j);
    return m;
}

Perm Realization::coord(const Perm& w) const {
    if (c_ == RealCase::A) return w;
    Perm r(d_ + 1);
    for (int j = 0; j <= d_; ++j) r[j] = d_ - w[d_ - j];
    return r;
}

std::pair<int, int> Realization::hs_positions(int j) const {
    if (c_ == RealCase::A) return {md(j - 1, d_ + 1), j};
    return {d_ - j, md(d_ - j + 1, d_ + 1)};
}

TorusChar normalize_char(const TorusChar& a, int p) {
    TorusChar r(a.size());
    for (size_t j = 0; j < a.size(); ++j) r[j] = md(a[j], p - 1);
    return r;
}

TorusChar shift_char(const Realization& R, const TorusChar& a, int i) {
    int n = R.d() + 1;
    TorusChar r(n);
    int sgn = R.which() == RealCase::A ? 1 : -1;
    for (int j = 0; j < n; ++j) r[j] = a[md(j + sgn * i, n)];
    return r;
}

int coroot_exponent(const Realization& R, const TorusChar& a, int j) {
    auto [px, pxi] = R.hs_positions(md(j, R.d() + 1));
    return md(a[px] - a[pxi], R.p() - 1);
}

unsigned s_lambda(const Realization& R, const TorusChar& a) {
    unsigned m = 0;
    for (int j = 0; j <= R.d(); ++j)
        if (coroot_exponent(R, a, j) == 0) m |= 1u << j;
    return m;
}

unsigned shift_subset(int d, unsigned J, int i) {
    unsigned r = 0;
    for (int j = 0; j <= d; ++j)
        if (J >> j & 1u) r |= 1u << md(j - i, d + 1);
    return r;
}

std::pair<TorusChar, unsigned> u_conjugate(const Realization& R, const TorusChar& a, unsigned J, int i) {
    return {normalize_char(shift_char(R, a, i), R.p()), shift_subset(R.d(), J, i)};
}

bool satisfies_diff(const Realization& R, const TorusChar& a, unsigned J) {
    std::set<std::pair<TorusChar, unsigned>> seen;
    for (int i = 0; i <= R.d(); ++i)
        if (!seen.insert(u_conjugate(R, a, J, i)).second) return false;
    return true;
}

std::string subset_str(int d, unsigned J) {
    std::string s = "{";
    bool first = true;
    for (int j = 0; j <= d; ++j)
        if (J >> j & 1u) {
            s += (first ? "s" : ",s") + std::to_string(j);
            first = false;
        }
    return s + "}";
}

std::string SupersingularModule::str(const Field& F) const {
    std::string s = "lambda=(";
    for (size_t j = 0; j < lambda.size(); ++j) s += (j ? "," : "") + std::to_string(lambda[j]);
    return s + ") J=" + subset_str(d, J) + " b=" + F.str(b) + " case=" + case_name(rc);
}

void validate(const SupersingularModule& M) {
    if (static_cast<int>(M.lambda.size()) != M.d + 1) throw std::invalid_argument("lambda needs d+1 exponents");
    if (M.b == 0) throw std::invalid_argument("b must be a unit");
    Realization R(M.p, M.d, M.rc);
    if (M.J & ~s_lambda(R, normalize_char(M.lambda, M.p))) throw std::invalid_argument("J is not contained in S_lambda");
}

int lambda_tau_minus_one(const Realization& R, const TorusChar& a, int i) {
    return shift_char(R, a, i)[R.tau_pos()] % 2 ? -1 : 1;
}

SupersingularInvariants supersingular_invariants(const Field& F, const SupersingularModule& M) {
    validate(M);
    Realization R(M.p, M.d, M.rc);
    int p = M.p, d = M.d, n = d + 1;
    TorusChar a = normalize_char(M.lambda, p);
    SupersingularInvariants inv;
    inv.k.resize(n);
    for (int i = 0; i < n; ++i) {
        int c = coroot_exponent(R, shift_char(R, a, i), d);
        if (c != coroot_exponent(R, a, i - 1)) throw std::logic_error("k_i: shifted character disagrees");
        if (c != 0) inv.k[i] = c;
        else inv.k[i] = (M.J >> md(i - 1, n) & 1u) ? p - 1 : 0;
    }
    inv.w.resize(n);
    for (int i = 0; i < n; ++i) {
        long long pw = 1;
        for (int j = 0; j <= d; ++j, pw *= p) inv.w[i] += pw * inv.k[md(i - j, n)];
    }
    int sum_a = 0;
    for (int x : a) sum_a += x;
    Elt delta = (d % 2 ? F.neg(1) : 1);
    if (sum_a % 2) delta = F.neg(delta);
    for (int k : inv.k) delta = F.mul(delta, F.factorial(k));
    inv.delta = delta;
    inv.i_.resize(n + 1);
    for (int j = 0; j <= n; ++j) inv.i_[j] = p - 1 - inv.k[md(n - j, n)];
    inv.h_.assign(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        long long pw = 1;
        for (int i = 0; i < j; ++i, pw *= p) inv.h_[j] += inv.i_[d + i + 1 - j] * pw;
    }
    if (inv.h_[n] % (p - 1)) throw std::logic_error("h_{d+1} not divisible by p-1");
    inv.h = inv.h_[n] / (p - 1);
    inv.s = md(-R.tau_exp() * a[R.tau_pos()], p - 1);
    if (delta == 0) throw std::logic_error("delta vanishes");
    inv.beta_power = F.div(M.b, delta);
    return inv;
}

namespace {

// All (lambda, J) with J in S_lambda and (diff).
std::vector<std::pair<TorusChar, unsigned>> valid_pairs(const Realization& R) {
    int p = R.p(), n = R.d() + 1;
    std::vector<std::pair<TorusChar, unsigned>> out;
    TorusChar a(n, 0);
    while (true) {
        unsigned S = s_lambda(R, a);
        for (unsigned J = 0; J < (1u << n); ++J)
            if (!(J & ~S) && satisfies_diff(R, a, J)) out.emplace_back(a, J);
        int j = 0;
        while (j < n && ++a[j] == p - 1) a[j++] = 0;
        if (j == n) break;
    }
    return out;
}

}  // namespace

std::vector<SupersingularModule> enumerate_supersingular(const Field& F, int d, Elt b, RealCase rc) {
    Realization R(F.p(), d, rc);
    std::vector<SupersingularModule> out;
    for (const auto& [a, J] : valid_pairs(R)) {
        auto best = std::make_pair(a, J);
        for (int i = 1; i <= d; ++i) best = std::min(best, u_conjugate(R, a, J, i));
        if (best == std::make_pair(a, J)) out.push_back({F.p(), d, rc, a, J, b});
    }
    return out;
}

long long count_orbits_bruteforce(int p, int d, RealCase rc) {
    Realization R(p, d, rc);
    std::set<std::set<std::pair<TorusChar, unsigned>>> orbits;
    for (const auto& [a, J] : valid_pairs(R)) {
        std::set<std::pair<TorusChar, unsigned>> o;
        for (int i = 0; i <= d; ++i) o.insert(u_conjugate(R, a, J, i));
        orbits.insert(o);
    }
    return static_cast<long long>(orbits.size());
}

Matrix HeckeAction::torus(const Field& F, const std::vector<int>& e) const {
    Matrix m = Matrix::identity(F, dim);
    for (size_t j = 0; j < e.size(); ++j)
        if (e[j]) m = m * Tt[j].pow(e[j]);
    return m;
}

HeckeAction make_action(const Field& F, const Realization& R, Matrix Tn, Matrix Tuinv, std::vector<Matrix> Tt,
                        std::string name) {
    HeckeAction A;
    A.dim = Tn.rows();
    A.Tn = std::move(Tn);
    A.Tuinv = std::move(Tuinv);
    A.Tt = std::move(Tt);
    A.name = std::move(name);
    std::vector<int> h(R.d() + 1, 0), t(R.d() + 1, 0);
    auto [px, pxi] = R.hs_positions(R.d());
    h[px] = 1;
    h[pxi] = -1;
    t[R.tau_pos()] = -R.tau_exp();
    A.Th = A.torus(F, h);
    A.TtauInv = A.torus(F, t);
    return A;
}

std::string check_hecke_relations(const Field& F, const Realization& R, const HeckeAction& A) {
    int n = R.d() + 1, p = F.p();
    Matrix I = Matrix::identity(F, A.dim);
    for (int i = 0; i < n; ++i) {
        if (!(A.Tt[i].pow(p - 1) == I)) return "T_t has wrong order";
        for (int j = 0; j < n; ++j)
            if (!(A.Tt[i] * A.Tt[j] == A.Tt[j] * A.Tt[i])) return "torus operators do not commute";
    }
    Matrix sum(F, A.dim, A.dim);
    for (int k = 0; k < p - 1; ++k) sum = sum + A.Th.pow(k);
    if (!(A.Tn * A.Tn == sum * A.Tn)) return "quadratic relation fails";
    // n_{s_d} t n_{s_d}^{-1} swaps the two block coordinates.
    auto [b0, b1] = R.block();
    for (int j = 0; j < n; ++j) {
        int sj = j == b0 ? b1 : j == b1 ? b0 : j;
        if (!(A.Tn * A.Tt[j] == A.Tt[sj] * A.Tn)) return "T_n does not normalise the torus";
    }
    if (rank(A.Tuinv) != A.dim) return "T_{u^{-1}} not invertible";
    // u t_j u^{-1} = t_{j-1} (case A) or t_{j+1} (case B).
    int step = R.which() == RealCase::A ? -1 : 1;
    for (int j = 0; j < n; ++j)
        if (!(A.Tuinv * A.Tt[j] == A.Tt[md(j + step, n)] * A.Tuinv)) return "T_{u^{-1}} twisted commutation fails";
    Matrix Z = A.Tuinv.pow(n);
    if (!(Z * A.Tn == A.Tn * Z) || !(Z * A.Tuinv == A.Tuinv * Z)) return "T_{u^{-1}}^{d+1} not central";
    for (const auto& T : A.Tt)
        if (!(Z * T == T * Z)) return "T_{u^{-1}}^{d+1} not central";
    return {};
}

namespace {

Matrix cols_to_matrix(const Field& F, int rows, const std::vector<Vec>& cols) {
    Matrix B(F, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) B.set_col(static_cast<int>(j), cols[j]);
    return B;
}

std::vector<const Matrix*> all_ops(const HeckeAction& A) {
    std::vector<const Matrix*> ops{&A.Tn, &A.Tuinv};
    for (const auto& T : A.Tt) ops.push_back(&T);
    return ops;
}

}  // namespace

Matrix stable_span(const Field& F, const HeckeAction& A, const std::vector<Vec>& gens) {
    Subspace S(F, A.dim);
    std::vector<Vec> queue, basis;
    for (const auto& g : gens)
        if (S.add(g)) queue.push_back(g), basis.push_back(g);
    // T_{u^{-1}} is invertible of finite order on a finite module, so its powers cover T_u.
    auto ops = all_ops(A);
    while (!queue.empty()) {
        Vec v = queue.back();
        queue.pop_back();
        for (const Matrix* T : ops) {
            Vec w = T->apply(v);
            if (S.add(w)) queue.push_back(w), basis.push_back(w);
        }
    }
    return cols_to_matrix(F, A.dim, basis);
}

HeckeAction restrict_action(const Field& F, const Realization& R, const HeckeAction& A, const Matrix& B) {
    int r = B.cols();
    auto restrict_op = [&](const Matrix& T) {
        Matrix out(F, r, r);
        for (int j = 0; j < r; ++j) {
            auto x = solve(B, T.apply(B.col(j)));
            if (!x) throw std::invalid_argument("subspace is not stable");
            out.set_col(j, *x);
        }
        return out;
    };
    std::vector<Matrix> Tt;
    for (const auto& T : A.Tt) Tt.push_back(restrict_op(T));
    return make_action(F, R, restrict_op(A.Tn), restrict_op(A.Tuinv), std::move(Tt), A.name + "|sub");
}

HeckeAction quotient_action(const Field& F, const Realization& R, const HeckeAction& A, const Matrix& B) {
    std::vector<Vec> cols;
    for (int j = 0; j < B.cols(); ++j) cols.push_back(B.col(j));
    Subspace S(F, A.dim, cols);
    auto comp = S.complement();
    int r = static_cast<int>(comp.size());
    auto quot_op = [&](const Matrix& T) {
        Matrix out(F, r, r);
        for (int j = 0; j < r; ++j) {
            Vec res = S.reduce(T.col(comp[j]));
            Vec c(r);
            for (int i = 0; i < r; ++i) c[i] = res[comp[i]];
            out.set_col(j, c);
        }
        return out;
    };
    std::vector<Matrix> Tt;
    for (const auto& T : A.Tt) Tt.push_back(quot_op(T));
    return make_action(F, R, quot_op(A.Tn), quot_op(A.Tuinv), std::move(Tt), A.name + "/sub");
}

HeckeAction supersingular_action(const Field& F, const SupersingularModule& M) {
    validate(M);
    Realization R(M.p, M.d, M.rc);
    int n = M.d + 1;
    TorusChar a = normalize_char(M.lambda, M.p);
    Elt g = F.fp_generator();
    Matrix Tn(F, n, n), Tu(F, n, n);
    std::vector<Matrix> Tt(n, Matrix(F, n, n));
    for (int i = 0; i < n; ++i) {
        TorusChar ai = shift_char(R, a, i);
        // s_d in J^{[i]} iff s_{i-1} in J.
        if (M.J >> md(i - 1, n) & 1u) Tn.at(i, i) = F.neg(1);
        for (int j = 0; j < n; ++j) Tt[j].at(i, i) = F.pow(g, -ai[j]);
        if (i < M.d) Tu.at(i + 1, i) = 1;
        else Tu.at(0, i) = F.inv(M.b);
    }
    return make_action(F, R, Tn, Tu, std::move(Tt), "M[" + M.str(F) + "]");
}

int ReducedStandardModule::index(const Perm& w) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    if (it == basis.end() || *it != w) throw std::out_of_range("not a Weyl element");
    return static_cast<int>(it - basis.begin());
}

int rs_exponent(const Realization& R, const TorusChar& theta, const Perm& w) {
    auto [px, pxi] = R.hs_positions(R.d());
    Perm c = R.coord(w);
    return md(theta[c[px]] - theta[c[pxi]], R.p() - 1);
}

ReducedStandardModule reduced_standard_make(const Field& F, RealCase rc, const TorusChar& theta,
                                            const SigmaMap& sigma, const std::vector<Elt>& eps) {
    int d = sigma.d(), p = F.p(), n = d + 1;
    Realization R(p, d, rc);
    if (static_cast<int>(theta.size()) != n) throw std::invalid_argument("theta needs d+1 exponents");
    ReducedStandardModule M;
    M.p = p;
    M.d = d;
    M.rc = rc;
    M.theta = normalize_char(theta, p);
    M.sigma = sigma;
    M.basis = weyl_elements(d);
    int N = static_cast<int>(M.basis.size());
    if (static_cast<int>(eps.size()) != N) throw std::invalid_argument("epsilon needs (d+1)! values");
    for (Elt e : eps)
        if (e == 0) throw std::invalid_argument("epsilon values must be units");
    M.eps = eps;
    Elt g = F.fp_generator();
    Perm sd = perm_s(d, d), ubinv = perm_inverse(perm_ubar(d));
    Matrix Tu(F, N, N), Ts(F, N, N);
    std::vector<Matrix> Tt(n, Matrix(F, N, N));
    for (int c = 0; c < N; ++c) {
        const Perm& w = M.basis[c];
        Perm cw = R.coord(w);
        M.kappa.push_back(M.theta[cw[R.tau_pos()]] % 2 ? -1 : 1);
        // theta(w t_j^{-1} w^{-1}) with g^{-1} moved to cw(j).
        for (int j = 0; j < n; ++j) Tt[j].at(c, c) = F.pow(g, -M.theta[cw[j]]);
        Tu.at(M.index(w * ubinv), c) = eps[c];
        Perm ws = w * sd;
        Elt minus_kappa = M.kappa.back() == 1 ? F.neg(1) : 1;
        bool trivial = rs_exponent(R, M.theta, w) == 0;
        if ((sigma.is(ws, -1) && !trivial) || sigma.is(w, 1)) {
            Ts.at(M.index(ws), c) = 1;
        } else if ((sigma.is(ws, 0) || sigma.is(ws, 1)) && trivial) {
            Ts.at(c, c) = minus_kappa;
        } else if (sigma.is(ws, -1) && trivial) {
            Ts.at(c, c) = minus_kappa;
            Ts.at(M.index(ws), c) = 1;
        }
    }
    M.Tsd = Ts;
    std::vector<int> e(n, 0);
    e[R.tau_pos()] = (p - 1) / 2;
    HeckeAction tmp = make_action(F, R, Ts, Tu, Tt, "");
    Matrix Tn = tmp.torus(F, e) * Ts;
    M.act = make_action(F, R, Tn, Tu, std::move(Tt), "M(theta,sigma,eps)");
    std::string err = check_hecke_relations(F, R, M.act);
    if (!err.empty()) throw std::runtime_error("reduced standard module: " + err);
    return M;
}

}  // namespace hkphi
