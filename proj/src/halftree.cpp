// SPDX-License-Identifier: MIT

#include "hkphi/halftree.hpp"

#include <random>
#include <stdexcept>

#include "hkphi/series.hpp"

namespace hkphi {

namespace {

std::string vstr(const Field& F, const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + F.str(v[i]);
    return s + ")";
}

std::string estr(const Field& F, const HalfTree::Elem& e) {
    if (e.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : e) s += "[" + std::to_string(k.first) + "," + std::to_string(k.second) + "]" + vstr(F, v);
    return s;
}

}  // namespace

HalfTree::HalfTree(const Field& F, const Realization& R, const HeckeAction& M)
    : F_(&F), R_(R), M_(M), image_(F, 1) {
    int p = F.p();
    G_ = std::make_unique<SL2Group>(p, Variant::SL);
    U_ = std::make_unique<UniversalModule>(F, *G_);
    L_ = std::make_unique<LinkModule>(*U_, M_.sl2());
    iota_ = L_->iota();
    nubar_ = L_->act(G_->nu(1));
    sd_ = L_->act(G_->inv(G_->ns())) * tau_link(F.from_int(-1));
    kappa_ = sd_ * iota_ * M_.Tuinv;
    Matrix pw = Matrix::identity(F, L_->dim());
    for (int q = 0; q < p; ++q) {
        nubar_pows_.push_back(pw);
        kappa_q_.push_back(pw * kappa_);
        pw = nubar_ * pw;
    }
    std::vector<Vec> cols;
    for (int j = 0; j < M_.dim; ++j) cols.push_back(iota_.col(j));
    image_ = Subspace(F, L_->dim(), cols);
    if (image_.dim() != M_.dim) throw std::logic_error("M does not embed into its link module");
    coeff_to_m_ = Matrix(F, M_.dim, image_.dim());
    for (int k = 0; k < image_.dim(); ++k) {
        auto y = solve(iota_, image_.basis()[k]);
        coeff_to_m_.set_col(k, *y);
    }
    comp_ = image_.complement();
    // gamma multiplies residues mod p^{level+1}; keep the product inside 64 bits.
    max_index_level_ = 0;
    while (ipow(p, 2 * (max_index_level_ + 2)) < (1LL << 62) / p) ++max_index_level_;
}

Matrix HalfTree::tau_link(Elt x) const {
    const SL2Group& G = *G_;
    int xi = static_cast<int>(F_->inv(x)), xx = static_cast<int>(x);
    std::vector<int> perm(U_->dim());
    for (int c = 0; c < U_->dim(); ++c) {
        Mat2 r = G.coset_rep(c);
        perm[c] = G.coset_of({r.a, r.b * xx, r.c * xi, r.d});
    }
    bool ok = false;
    Matrix m = L_->induced(perm, M_.tau_inv(*F_, x), &ok);
    if (!ok) throw std::logic_error("torus action does not preserve the tensor relations");
    return m;
}

void HalfTree::push(Elem& x, const Key& k, const Vec& v) const {
    if (vzero(v)) return;
    auto it = x.find(k);
    if (it == x.end()) x.emplace(k, v);
    else it->second = vadd(*F_, it->second, v);
}

HalfTree::Elem HalfTree::embed(const Vec& m) const {
    Elem e;
    push(e, {0, 0}, iota_.apply(m));
    return e;
}

int HalfTree::max_level(const Elem& a) const { return a.empty() ? 0 : a.rbegin()->first.first; }

HalfTree::Elem HalfTree::normal_form(const Elem& x) const {
    Elem r;
    for (const auto& [k, v] : x) push(r, k, v);
    int top = max_level(r);
    int p = F_->p();
    for (int lvl = top; lvl >= 1; --lvl) {
        long long P = ipow(p, lvl - 1);
        auto lo = r.lower_bound({lvl, 0}), hi = r.lower_bound({lvl + 1, 0});
        std::vector<Key> keys;
        for (auto it = lo; it != hi; ++it) keys.push_back(it->first);
        for (const Key& k : keys) {
            Vec coeff;
            Vec res = image_.reduce(r[k], &coeff);
            if (!vzero(coeff)) {
                Vec y = coeff_to_m_.apply(coeff);
                push(r, {lvl - 1, k.second % P}, kappa_q_[(k.second / P) % p].apply(y));
            }
            if (vzero(res)) r.erase(k);
            else r[k] = res;
        }
    }
    for (auto it = r.begin(); it != r.end();) {
        if (vzero(it->second)) it = r.erase(it);
        else ++it;
    }
    return r;
}

bool HalfTree::equal(const Elem& a, const Elem& b) const {
    return normal_form(add(a, scale(F_->neg(1), b))).empty();
}

HalfTree::Elem HalfTree::add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (const auto& [k, v] : b) push(r, k, v);
    return r;
}

HalfTree::Elem HalfTree::scale(Elt s, const Elem& a) const {
    Elem r;
    if (s == 0) return r;
    for (const auto& [k, v] : a) r.emplace(k, vscale(*F_, s, v));
    return r;
}

HalfTree::Elem HalfTree::nu_pow(const Elem& a, long long n) const {
    int p = F_->p();
    Elem r;
    for (const auto& [k, v] : a) {
        long long P = ipow(p, k.first), P1 = P * p;
        long long s = k.second + mod(n, P1);
        push(r, {k.first, s % P}, nubar_pows_[(s / P) % p].apply(v));
    }
    return r;
}

HalfTree::Elem HalfTree::t(const Elem& a) const {
    return normal_form(add(nu_pow(a, 1), scale(F_->neg(1), a)));
}

HalfTree::Elem HalfTree::t_pow(const Elem& a, long long k) const {
    Elem r = normal_form(a);
    for (long long i = 0; i < k && !r.empty(); ++i) r = t(r);
    return r;
}

HalfTree::Elem HalfTree::phi(const Elem& a) const {
    Elem r;
    for (const auto& [k, v] : a) r.emplace(Key{k.first + 1, k.second * F_->p()}, v);
    return r;
}

HalfTree::Elem HalfTree::gamma_int(const Elem& a, long long aint) const {
    int p = F_->p();
    if (mod(aint, p) == 0) throw std::invalid_argument("gamma needs a unit");
    if (max_level(a) > max_index_level_) throw std::out_of_range("level too deep for gamma");
    Matrix tl = tau_link(F_->from_int(aint));
    Elem r;
    for (const auto& [k, v] : a) {
        long long P = ipow(p, k.first), P1 = P * p;
        long long s = mod(mod(aint, P1) * k.second, P1);
        push(r, {k.first, s % P}, nubar_pows_[s / P].apply(tl.apply(v)));
    }
    return r;
}

HalfTree::Elem HalfTree::gamma(const Elem& a, Elt x) const {
    return gamma_int(a, teichmuller(static_cast<long long>(x), F_->p(), max_level(a) + 1));
}

int HalfTree::dense_dim(int N) const {
    long long verts = 0;
    for (int i = 1; i < N; ++i) verts += ipow(F_->p(), i);
    return static_cast<int>(L_->dim() + verts * static_cast<long long>(comp_.size()));
}

Vec HalfTree::to_dense(const Elem& nf, int N) const {
    int p = F_->p(), c = static_cast<int>(comp_.size());
    Vec out(dense_dim(N), 0);
    for (const auto& [k, v] : nf) {
        if (k.first >= N) throw std::out_of_range("element outside the truncation");
        if (k.first == 0) {
            for (int j = 0; j < L_->dim(); ++j) out[j] = v[j];
            continue;
        }
        long long off = L_->dim() + c * ((ipow(p, k.first) - p) / (p - 1) + k.second);
        for (int j = 0; j < c; ++j) out[off + j] = v[comp_[j]];
    }
    return out;
}

HalfTree::Elem HalfTree::from_dense(const Vec& v, int N) const {
    int p = F_->p(), c = static_cast<int>(comp_.size());
    Elem r;
    push(r, {0, 0}, Vec(v.begin(), v.begin() + L_->dim()));
    long long off = L_->dim();
    for (int i = 1; i < N; ++i)
        for (long long m = 0; m < ipow(p, i); ++m, off += c) {
            Vec x(L_->dim(), 0);
            bool any = false;
            for (int j = 0; j < c; ++j)
                if (v[off + j]) x[comp_[j]] = v[off + j], any = true;
            if (any) push(r, {i, m}, x);
        }
    return r;
}

int boundary_coker_dim(const HalfTree& T, int N) {
    const Field& F = T.field();
    int p = F.p(), dl = T.dim_link(), dm = T.dim_m();
    std::vector<long long> voff(N + 1, 0), eoff(N + 1, 0);
    for (int i = 0; i < N; ++i) voff[i + 1] = voff[i] + ipow(p, i) * dl;
    for (int i = 1; i < N; ++i) eoff[i + 1] = eoff[i] + ipow(p, i) * dm;
    int V = static_cast<int>(voff[N]), E = static_cast<int>(eoff[N]);
    if (E == 0) return V;
    Matrix B(F, V, E);
    for (int i = 1; i < N; ++i) {
        long long P = ipow(p, i - 1);
        for (long long m = 0; m < ipow(p, i); ++m)
            for (int j = 0; j < dm; ++j) {
                int col = static_cast<int>(eoff[i] + m * dm + j);
                Vec child = T.iota().col(j);
                Vec parent = T.nubar().pow((m / P) % p).apply(T.kappa().col(j));
                for (int r = 0; r < dl; ++r) {
                    B.at(static_cast<int>(voff[i] + m * dl + r), col) = child[r];
                    long long prow = voff[i - 1] + (m % P) * dl + r;
                    B.at(static_cast<int>(prow), col) = F.sub(B.at(static_cast<int>(prow), col), parent[r]);
                }
            }
    }
    return V - rank(B);
}

H0Complex build_h0(const Field& F, const Realization& R, const HeckeAction& M, int N) {
    if (N < 2) throw std::invalid_argument("depth N must be >= 2");
    HalfTree T(F, R, M);
    H0Complex H;
    H.N = N;
    H.dim = T.dense_dim(N);
    H.link_dim = T.dim_link();
    H.t = T.dense_operator(N, [&](const HalfTree::Elem& e) { return T.t(e); });
    H.kernel_t_dim = static_cast<int>(kernel(H.t).size());
    Elt g = F.fp_generator();
    H.gamma_gen = T.dense_operator(N, [&](const HalfTree::Elem& e) { return T.gamma(e, g); });
    int Dm = T.dense_dim(N - 1);
    H.phi = Matrix(F, H.dim, Dm);
    for (int c = 0; c < Dm; ++c) {
        Vec e(Dm, 0);
        e[c] = 1;
        H.phi.set_col(c, T.to_dense(T.normal_form(T.phi(T.from_dense(e, N - 1))), N));
    }
    long long vertex_coords = 0;
    for (int i = 0; i < N; ++i) vertex_coords += ipow(F.p(), i) * T.dim_link();
    H.coker_dim = vertex_coords <= 3000 ? boundary_coker_dim(T, N) : -1;
    return H;
}

Report crosscheck_monomial_relations(const Field& F, const SupersingularModule& M, int N) {
    Report rep{"monomial_relations", {}};
    int d = M.d, n = d + 1;
    if (N < d + 3) throw std::invalid_argument("crosscheck needs N >= d + 3");
    Realization R(M.p, d, M.rc);
    HeckeAction A = supersingular_action(F, M);
    auto inv = supersingular_invariants(F, M);
    HalfTree T(F, R, A);
    std::string pr = M.str(F) + " N=" + std::to_string(N);
    TorusChar a = normalize_char(M.lambda, M.p);

    int expect = 0;
    for (int k : inv.k) expect += k + 1;
    rep.add("link_dim_level0", pr, T.dim_link() == expect, std::to_string(T.dim_link()));

    std::vector<HalfTree::Elem> e(n);
    for (int i = 0; i < n; ++i) {
        Vec u(n, 0);
        u[i] = 1;
        e[i] = T.embed(u);
    }
    int deepest = 0;
    auto track = [&](const HalfTree::Elem& x) {
        deepest = std::max(deepest, T.max_level(x));
        return x;
    };
    auto sign = [&](int i) { return lambda_tau_minus_one(R, a, i) == 1 ? Elt(1) : F.neg(1); };
    for (int i = 0; i < n; ++i) rep.add("e_in_ker_t", pr + " i=" + std::to_string(i), T.t(e[i]).empty());
    for (int i = 1; i <= n; ++i) {
        int tgt = i % n;
        auto lhs = T.t_pow(track(T.phi(e[i - 1])), inv.k[tgt]);
        Elt c = F.mul(F.factorial(inv.k[tgt]), sign(tgt));
        if (tgt == 0) c = F.div(c, M.b);
        auto rhs = T.scale(c, e[tgt]);
        rep.add(tgt ? "monomial_unit_left" : "monomial_unit_right", pr + " i=" + std::to_string(tgt), T.equal(lhs, rhs),
                estr(F, lhs) + " vs " + estr(F, rhs));
    }
    Elt g = F.fp_generator();
    for (int i = 0; i < n; ++i)
        for (int x = 1; x < M.p; ++x) {
            Elt xe = static_cast<Elt>(x);
            TorusChar ai = shift_char(R, a, i);
            Elt val = F.pow(g, static_cast<long long>(R.tau_exp()) * ai[R.tau_pos()] * F.fp_log(xe));
            auto lhs = T.gamma(e[i], xe);
            rep.add("monomial_product", pr + " i=" + std::to_string(i) + " x=" + std::to_string(x),
                    T.equal(lhs, T.scale(val, e[i])), estr(F, lhs));
        }
    if (N >= 2 * (d + 2)) {
        Elt c = F.div(d % 2 ? F.neg(inv.delta) : inv.delta, M.b);
        for (int i = 0; i < n; ++i) {
            auto x = e[i];
            for (int j = 0; j < n; ++j) x = T.phi(x);
            track(x);
            auto lhs = T.t_pow(x, inv.w[i]);
            rep.add("idempotent_monomial", pr + " i=" + std::to_string(i), T.equal(lhs, T.scale(c, e[i])), estr(F, lhs));
        }
    }
    rep.add("support_within_depth", pr, deepest < N, std::to_string(deepest));
    // ker t is the embedded M; the dense complex is capped near 729 vertices.
    int dense = 2;
    while (dense < N && ipow(M.p, dense + 1) <= 729) ++dense;
    H0Complex H = build_h0(F, R, A, dense);
    rep.add("ker_t_dim", pr + " depth=" + std::to_string(dense), H.kernel_t_dim == n, std::to_string(H.kernel_t_dim));
    return rep;
}

Report check_halftree_commutations(const Field& F, const Realization& R, const HeckeAction& M, int N,
                                   unsigned seed) {
    Report rep{"halftree_commute", {}};
    HalfTree T(F, R, M);
    int p = F.p();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(0, p - 1);
    std::string pr = M.name + " N=" + std::to_string(N);
    for (int j = 0; j < M.dim; ++j) {
        Vec u(M.dim, 0);
        u[j] = 1;
        auto e = T.embed(u);
        rep.add("gamma0_trivial", pr + " j=" + std::to_string(j), T.equal(T.gamma_int(e, 1 + p), e));
    }
    auto random_elem = [&](int top) {
        HalfTree::Elem x;
        for (int i = 0; i <= top; ++i)
            for (int r = 0; r < 2; ++r) {
                std::uniform_int_distribution<long long> idx(0, ipow(p, i) - 1);
                Vec v(T.dim_link());
                for (auto& c : v) c = static_cast<Elt>(coef(rng));
                x[{i, idx(rng)}] = v;
            }
        return x;
    };
    Elt g = F.fp_generator();
    for (int trial = 0; trial < 8; ++trial) {
        auto x = random_elem(N - 2);
        std::string tp = pr + " trial=" + std::to_string(trial);
        long long A = teichmuller(static_cast<long long>(g), p, N + 1);
        auto lhs = T.gamma_int(T.phi(x), A), rhs = T.phi(T.gamma_int(x, A));
        rep.add("gamma_phi", tp, T.equal(lhs, rhs), estr(F, lhs) + " vs " + estr(F, rhs));
        auto l2 = T.gamma_int(T.nu_pow(x, 1), A), r2 = T.nu_pow(T.gamma_int(x, A), A);
        rep.add("gamma_nu", tp, T.equal(l2, r2));
        // The operators respect the edge relations.
        auto nf = T.normal_form(x);
        rep.add("nu_well_defined", tp, T.equal(T.nu_pow(x, 1), T.nu_pow(nf, 1)));
        rep.add("phi_well_defined", tp, T.equal(T.phi(x), T.phi(nf)));
        rep.add("gamma_well_defined", tp, T.equal(T.gamma_int(x, A), T.gamma_int(nf, A)));
        rep.add("phi_t_p", tp, T.equal(T.phi(T.t(x)), T.t_pow(T.phi(x), p)));
    }
    return rep;
}

Report check_exactness_transport(const Field& F, const Realization& R, const HeckeAction& M, const Matrix& B,
                                 int N) {
    Report rep{"halftree_exact", {}};
    HeckeAction S = restrict_action(F, R, M, B), Q = quotient_action(F, R, M, B);
    std::vector<Vec> cols;
    for (int j = 0; j < B.cols(); ++j) cols.push_back(B.col(j));
    Subspace sub(F, M.dim, cols);
    auto comp = sub.complement();
    Matrix proj(F, static_cast<int>(comp.size()), M.dim);
    for (int j = 0; j < M.dim; ++j) {
        Vec e(M.dim, 0);
        e[j] = 1;
        Vec r = sub.reduce(e);
        for (size_t i = 0; i < comp.size(); ++i) proj.at(static_cast<int>(i), j) = r[comp[i]];
    }
    HalfTree TS(F, R, S), TM(F, R, M), TQ(F, R, Q);
    Matrix fL = TM.link().functor(TS.link(), B), gL = TQ.link().functor(TM.link(), proj);
    auto induced = [&](const HalfTree& src, const HalfTree& dst, const Matrix& f) {
        int Ds = src.dense_dim(N), Dd = dst.dense_dim(N);
        Matrix m(F, Dd, Ds);
        for (int c = 0; c < Ds; ++c) {
            Vec e(Ds, 0);
            e[c] = 1;
            HalfTree::Elem x, y = src.from_dense(e, N);
            for (const auto& [k, v] : y) x[k] = f.apply(v);
            m.set_col(c, dst.to_dense(dst.normal_form(x), N));
        }
        return m;
    };
    Matrix fH = induced(TS, TM, fL), gH = induced(TM, TQ, gL);
    std::string pr = "dims=" + std::to_string(S.dim) + "," + std::to_string(M.dim) + "," + std::to_string(Q.dim) +
                     " N=" + std::to_string(N);
    int ds = TS.dense_dim(N), dm = TM.dense_dim(N), dq = TQ.dense_dim(N);
    rep.add("injective", pr, rank(fH) == ds, std::to_string(rank(fH)));
    rep.add("surjective", pr, rank(gH) == dq, std::to_string(rank(gH)));
    rep.add("composite_zero", pr, (gH * fH).is_zero());
    rep.add("dims_add", pr, ds + dq == dm, std::to_string(ds) + "+" + std::to_string(dq) + " vs " + std::to_string(dm));
    return rep;
}

}  // namespace hkphi
