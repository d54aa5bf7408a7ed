// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include "hkphi/sl2.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace hkphi {

std::string Mat2::str() const {
    return "[" + std::to_string(a) + " " + std::to_string(b) + ";" + std::to_string(c) + " " + std::to_string(d) + "]";
}

SL2Group::SL2Group(int p, Variant v) : p_(p), v_(v) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("SL2 model needs an odd prime");
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d) {
                    if (mod(a * d - b * c, p) != 1) continue;
                    Mat2 g{a, b, c, d};
                    if (v == Variant::PSL && !(canon(g) == g)) continue;
                    elems_.push_back(g);
                }
    // Loops already produce lexicographic order.
    for (int i = 0; i < order(); ++i) idx_[code(elems_[i])] = i;
    coset_.assign(order(), -1);
    for (int i = 0; i < order(); ++i) {
        if (coset_[i] >= 0) continue;
        int c = static_cast<int>(reps_.size());
        reps_.push_back(i);
        for (int j = 0; j < p; ++j) coset_[index(mul(nu(j), elems_[i]))] = c;
    }
}

Mat2 SL2Group::canon(const Mat2& g) const {
    Mat2 r{static_cast<int>(mod(g.a, p_)), static_cast<int>(mod(g.b, p_)), static_cast<int>(mod(g.c, p_)),
           static_cast<int>(mod(g.d, p_))};
    if (v_ == Variant::PSL) {
        Mat2 n{static_cast<int>(mod(-r.a, p_)), static_cast<int>(mod(-r.b, p_)), static_cast<int>(mod(-r.c, p_)),
               static_cast<int>(mod(-r.d, p_))};
        if (std::tie(n.a, n.b, n.c, n.d) < std::tie(r.a, r.b, r.c, r.d)) r = n;
    }
    return r;
}

int SL2Group::index(const Mat2& g) const {
    auto it = idx_.find(code(canon(g)));
    if (it == idx_.end()) throw std::invalid_argument("matrix not in group: " + g.str());
    return it->second;
}

Mat2 SL2Group::mul(const Mat2& x, const Mat2& y) const {
    return canon({x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d});
}

Mat2 SL2Group::inv(const Mat2& x) const { return canon({x.d, -x.b, -x.c, x.a}); }

Mat2 SL2Group::hs(int x) const {
    x = static_cast<int>(mod(x, p_));
    int xi = 1;
    while (mod(static_cast<long long>(xi) * x, p_) != 1) ++xi;
    return canon({x, 0, 0, xi});
}

UniversalModule::UniversalModule(const Field& F, const SL2Group& G) : F_(&F), G_(&G) {
    if (F.p() != G.p()) throw std::invalid_argument("field and group characteristic differ");
}

std::vector<int> UniversalModule::act_perm(const Mat2& g) const {
    std::vector<int> perm(dim());
    Mat2 gi = G_->inv(g);
    for (int c = 0; c < dim(); ++c) perm[c] = G_->coset_of(G_->mul(G_->coset_rep(c), gi));
    return perm;
}

Matrix UniversalModule::act(const Mat2& g) const {
    auto perm = act_perm(g);
    Matrix m(*F_, dim(), dim());
    for (int c = 0; c < dim(); ++c) m.at(perm[c], c) = 1;
    return m;
}

Matrix UniversalModule::hecke(const Mat2& g) const {
    const SL2Group& G = *G_;
    std::vector<bool> in_double(G.order(), false);
    for (int i = 0; i < G.p(); ++i)
        for (int j = 0; j < G.p(); ++j) in_double[G.index(G.mul(G.mul(G.nu(i), g), G.nu(j)))] = true;
    Matrix m(*F_, dim(), dim());
    for (int x = 0; x < dim(); ++x) {
        Mat2 xi = G.inv(G.coset_rep(x));
        for (int h = 0; h < dim(); ++h)
            if (in_double[G.index(G.mul(G.coset_rep(h), xi))]) m.at(h, x) = 1;
    }
    return m;
}

SL2HeckeModule chi_module(const Field& F, int r) {
    int p = F.p();
    if (r < 0 || r > p - 1) throw std::invalid_argument("chi_r needs 0 <= r <= p-1");
    SL2HeckeModule M{1, Matrix(F, 1, 1), Matrix(F, 1, 1), "chi_" + std::to_string(r)};
    M.Tn.at(0, 0) = (r == p - 1) ? F.neg(1) : 0;
    M.Th.at(0, 0) = F.pow(F.fp_generator(), -r);
    return M;
}

SL2HeckeModule m_module(const Field& F, int r) {
    int p = F.p();
    if (r < 1 || r > p - 1) throw std::invalid_argument("M_r needs 1 <= r <= p-1");
    SL2HeckeModule M{2, Matrix(F, 2, 2), Matrix(F, 2, 2), "M_" + std::to_string(r)};
    // Basis order (e, f).
    M.Tn.at(1, 0) = 1;
    M.Tn.at(1, 1) = (r == p - 1) ? F.neg(1) : 0;
    Elt g = F.fp_generator();
    M.Th.at(0, 0) = F.pow(g, r);
    M.Th.at(1, 1) = F.pow(g, -r);
    return M;
}

namespace {

std::vector<Vec> tensor_relations(const UniversalModule& U, const SL2HeckeModule& M) {
    const SL2Group& G = U.group();
    const Field& F = U.field();
    int n = U.dim() * M.dim;
    std::vector<Vec> rels;
    Elt g = F.fp_generator();
    std::vector<std::pair<Matrix, const Matrix*>> gens = {{U.hecke(G.ns()), &M.Tn},
                                                          {U.hecke(G.hs(static_cast<int>(g))), &M.Th}};
    for (const auto& [TU, TM] : gens)
        for (int c = 0; c < U.dim(); ++c)
            for (int j = 0; j < M.dim; ++j) {
                Vec v(n, 0);
                for (int c2 = 0; c2 < U.dim(); ++c2)
                    if (TU.at(c2, c)) v[c2 * M.dim + j] = F.add(v[c2 * M.dim + j], TU.at(c2, c));
                for (int j2 = 0; j2 < M.dim; ++j2)
                    if (TM->at(j2, j)) v[c * M.dim + j2] = F.sub(v[c * M.dim + j2], TM->at(j2, j));
                rels.push_back(std::move(v));
            }
    return rels;
}

}  // namespace

LinkModule::LinkModule(const UniversalModule& U, const SL2HeckeModule& M)
    : U_(&U), dimM_(M.dim), R_(U.field(), U.dim() * M.dim, tensor_relations(U, M)) {
    comp_ = R_.complement();
}

Vec LinkModule::project(const Vec& amb) const {
    Vec r = R_.reduce(amb);
    Vec out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = r[comp_[i]];
    return out;
}

Vec LinkModule::lift(const Vec& v) const {
    Vec amb(ambient(), 0);
    for (int i = 0; i < dim(); ++i) amb[comp_[i]] = v[i];
    return amb;
}

Matrix LinkModule::induced(const std::vector<int>& perm, const Matrix& A, bool* well_defined) const {
    const Field& F = U_->field();
    auto apply_amb = [&](const Vec& v) {
        Vec out(ambient(), 0);
        for (int c = 0; c < U_->dim(); ++c)
            for (int j = 0; j < dimM_; ++j) {
                Elt x = v[c * dimM_ + j];
                if (!x) continue;
                for (int j2 = 0; j2 < dimM_; ++j2)
                    if (A.at(j2, j)) {
                        Elt& slot = out[perm[c] * dimM_ + j2];
                        slot = F.add(slot, F.mul(x, A.at(j2, j)));
                    }
            }
        return out;
    };
    if (well_defined) {
        *well_defined = true;
        for (const auto& b : R_.basis())
            if (!R_.contains(apply_amb(b))) { *well_defined = false; break; }
    }
    Matrix m(F, dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        Vec e(ambient(), 0);
        e[comp_[i]] = 1;
        m.set_col(i, project(apply_amb(e)));
    }
    return m;
}

Matrix LinkModule::act(const Mat2& g) const {
    return induced(U_->act_perm(g), Matrix::identity(U_->field(), dimM_));
}

Matrix LinkModule::iota() const {
    Matrix m(U_->field(), dim(), dimM_);
    for (int j = 0; j < dimM_; ++j) {
        Vec e(ambient(), 0);
        e[U_->base() * dimM_ + j] = 1;
        m.set_col(j, project(e));
    }
    return m;
}

Matrix LinkModule::functor(const LinkModule& src, const Matrix& f) const {
    const Field& F = U_->field();
    Matrix m(F, dim(), src.dim());
    for (int i = 0; i < src.dim(); ++i) {
        Vec e = src.lift(Vec(src.dim(), 0));
        e[src.comp_[i]] = 1;
        Vec out(ambient(), 0);
        int c = src.comp_[i] / src.dimM_, j = src.comp_[i] % src.dimM_;
        for (int j2 = 0; j2 < dimM_; ++j2) out[c * dimM_ + j2] = f.at(j2, j);
        m.set_col(i, project(out));
    }
    return m;
}

int LinkModule::invariant_dim() const {
    Matrix t = act(U_->group().nu()) - Matrix::identity(U_->field(), dim());
    return static_cast<int>(kernel(t).size());
}

namespace {

std::string vstr(const Field& F, const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + F.str(v[i]);
    return s + ")";
}

// span{ t^i v : 0 <= i < p }.
Subspace t_span(const Field& F, const Matrix& t, const Vec& v, int p) {
    Subspace S(F, static_cast<int>(v.size()));
    Vec w = v;
    for (int i = 0; i < p; ++i) {
        S.add(w);
        w = t.apply(w);
    }
    return S;
}

std::string params(int p, Variant v, const std::string& extra) {
    return "p=" + std::to_string(p) + " " + (v == Variant::SL ? "SL" : "PSL") + (extra.empty() ? "" : " " + extra);
}

}  // namespace

Report check_link_identities(int p, Variant v) {
    Report rep{"sl2", {}};
    Field F(p);
    SL2Group G(p, v);
    UniversalModule U(F, G);
    Elt g = F.fp_generator();

    int expect_order = p * (p * p - 1) / (v == Variant::SL ? 1 : 2);
    rep.add("group_order", params(p, v, ""), G.order() == expect_order, std::to_string(G.order()));
    rep.add("universal_dim", params(p, v, ""), U.dim() == (p * p - 1) / (v == Variant::SL ? 1 : 2),
            std::to_string(U.dim()));

    // Hecke operators commute with the group action; group-like ones multiply.
    Matrix Tn = U.hecke(G.ns()), Th = U.hecke(G.hs(static_cast<int>(g)));
    bool commute = true;
    for (const Mat2& x : {G.nu(), G.ns(), G.hs(static_cast<int>(g))}) {
        Matrix A = U.act(x);
        commute = commute && (A * Tn == Tn * A) && (A * Th == Th * A);
    }
    rep.add("hecke_commutes_with_action", params(p, v, ""), commute);
    bool grouplike = true;
    for (int x = 1; x < p; ++x)
        for (int y = 1; y < p; ++y)
            grouplike = grouplike && (U.hecke(G.hs(x)) * U.hecke(G.hs(y)) == U.hecke(G.hs(x * y)));
    rep.add("torus_hecke_multiplicative", params(p, v, ""), grouplike);
    bool normal = true;
    for (int x = 1; x < p; ++x) {
        Mat2 h = G.hs(x);
        Vec chi(U.dim(), 0);
        chi[U.base()] = 1;
        normal = normal && (U.hecke(h).apply(chi) == U.act(G.inv(h)).apply(chi));
    }
    rep.add("hecke_normaliser_formula", params(p, v, ""), normal);

    for (int r = 0; r <= p - 1; ++r) {
        if (v == Variant::PSL && r % 2) continue;
        std::string pr = params(p, v, "r=" + std::to_string(r));
        LinkModule L(U, chi_module(F, r));
        rep.add("chi_link_dim", pr, L.dim() == r + 1, std::to_string(L.dim()));
        rep.add("chi_invariants", pr, L.invariant_dim() == 1, std::to_string(L.invariant_dim()));
        Matrix t = L.act(G.nu()) - Matrix::identity(F, L.dim());
        Matrix ninv = L.act(G.inv(G.ns()));
        Vec e = L.iota().col(0);
        Vec lhs = t.pow(r).apply(ninv.apply(e));
        Vec rhs = vscale(F, F.factorial(r), e);
        rep.add("t_power_on_e", pr, lhs == rhs, vstr(F, lhs) + " vs " + vstr(F, rhs));
    }

    for (int r = 1; r <= p - 1; ++r) {
        if (v == Variant::PSL && r % 2) continue;
        std::string pr = params(p, v, "r=" + std::to_string(r));
        LinkModule L(U, m_module(F, r));
        rep.add("m_link_dim", pr, L.dim() == p + 1, std::to_string(L.dim()));
        rep.add("m_invariants", pr, L.invariant_dim() == 2, std::to_string(L.invariant_dim()));
        Matrix I = Matrix::identity(F, L.dim());
        Matrix t = L.act(G.nu()) - I;
        Matrix n = L.act(G.ns()), ninv = L.act(G.inv(G.ns()));
        Matrix io = L.iota();
        Vec e = io.col(0), f = io.col(1);

        Vec a = t.pow(p - 1).apply(ninv.apply(e));
        rep.add("t_top_maps_e_to_f", pr, a == f, vstr(F, a));
        Vec b = t.pow(r).apply(ninv.apply(f));
        rep.add("t_power_on_f", pr, b == vscale(F, F.factorial(r), f), vstr(F, b));
        Vec c = vsub(F, n.apply(f), e);
        rep.add("nf_minus_e_in_span", pr, t_span(F, t, n.apply(e), p).contains(c), vstr(F, c));
        Vec d = vsub(F, t.pow(p - 1 - r).apply(ninv.apply(e)), vscale(F, F.factorial(p - 1 - r), e));
        rep.add("ninv_e_in_span", pr, t_span(F, t, n.apply(f), p).contains(d), vstr(F, d));
        if (r == p - 1) {
            Vec fe = vadd(F, f, e);
            rep.add("sum_fixed_by_ninv", pr, ninv.apply(fe) == fe, vstr(F, ninv.apply(fe)));
            Vec x = vadd(F, a, e);
            rep.add("sum_image_in_span", pr, t_span(F, t, n.apply(fe), p).contains(x), vstr(F, x));
        }
        // L is generated over k[U] by n_s applied to the embedded M.
        Subspace gen(F, L.dim());
        for (int j = 0; j < 2; ++j) {
            Vec w = n.apply(io.col(j));
            for (int i = 0; i < p; ++i) {
                gen.add(w);
                w = t.apply(w);
            }
        }
        rep.add("link_generation", pr, gen.dim() == L.dim(), std::to_string(gen.dim()));
    }
    return rep;
}

Report check_flatness_sequences(int p, Variant v) {
    Report rep{"sl2_flat", {}};
    Field F(p);
    SL2Group G(p, v);
    UniversalModule U(F, G);
    int g = static_cast<int>(F.fp_generator());
    Matrix Tn = U.hecke(G.ns()), Th = U.hecke(G.hs(g));
    Matrix I = Matrix::identity(F, U.dim());

    // ind_B beta is the T_{h(g)} eigenspace with eigenvalue beta(h(g))^{-1}.
    auto component = [&](int j) {
        Elt ev = F.pow(F.fp_generator(), -j);
        return Subspace(F, U.dim(), kernel(Th - I.scale(ev)));
    };
    auto image = [&](const Matrix& A, const Subspace& S) {
        Subspace out(F, U.dim());
        for (const auto& b : S.basis()) out.add(A.apply(b));
        return out;
    };
    auto ker_on = [&](const Matrix& A, const Subspace& S) {
        // x = sum c_i b_i with A x = 0.
        Matrix B(F, U.dim(), S.dim());
        for (int i = 0; i < S.dim(); ++i) B.set_col(i, S.basis()[i]);
        Subspace out(F, U.dim());
        for (const auto& c : kernel(A * B)) out.add(B.apply(c));
        return out;
    };
    auto same = [&](const Subspace& A, const Subspace& B) {
        if (A.dim() != B.dim()) return false;
        for (const auto& b : A.basis())
            if (!B.contains(b)) return false;
        return true;
    };

    int total = 0;
    for (int j = 0; j < p - 1; ++j) {
        Subspace Vb = component(j);
        if (Vb.dim() == 0) continue;  // character not defined on the PSL torus
        total += Vb.dim();
        int js = static_cast<int>(mod(-j, p - 1));
        Subspace Vs = component(js);
        std::string pr = params(p, v, "beta=x^" + std::to_string(j));
        rep.add("maps_into_beta_s", pr, [&] {
            for (const auto& b : Vb.basis())
                if (!Vs.contains(Tn.apply(b))) return false;
            return true;
        }());
        bool nilpotent = [&] {
            for (const auto& b : Vb.basis())
                if (!vzero(Tn.apply(Tn.apply(b)))) return false;
            return true;
        }();
        if (nilpotent) {
            rep.add("exact_Tn_Tn", pr, same(image(Tn, Vb), ker_on(Tn, Vs)));
        } else {
            // Here beta = beta^s and T_n^2 = -T_n.
            bool quad = true;
            for (const auto& b : Vb.basis()) {
                Vec x = Tn.apply(b);
                quad = quad && (Tn.apply(x) == vscale(F, F.neg(1), x));
            }
            rep.add("quadratic_relation", pr, j == js && quad);
            Matrix T1 = Tn + I;
            rep.add("exact_Tn_Tn+1", pr, same(image(Tn, Vb), ker_on(T1, Vb)));
            rep.add("exact_Tn+1_Tn", pr, same(image(T1, Vb), ker_on(Tn, Vb)));
        }
    }
    rep.add("components_span", params(p, v, ""), total == U.dim(), std::to_string(total));
    return rep;
}

Report check_tensor_exactness(int p, Variant v, unsigned seed) {
    Report rep{"sl2_exact", {}};
    Field F(p);
    SL2Group G(p, v);
    UniversalModule U(F, G);
    std::mt19937 rng(seed);

    // Direct sums of the simple building blocks, with a random change of basis.
    std::vector<SL2HeckeModule> blocks;
    for (int r = 0; r <= p - 1; ++r)
        if (v == Variant::SL || r % 2 == 0) {
            blocks.push_back(chi_module(F, r));
            if (r >= 1) blocks.push_back(m_module(F, r));
        }
    for (int trial = 0; trial < 6; ++trial) {
        std::uniform_int_distribution<size_t> pick(0, blocks.size() - 1);
        std::vector<const SL2HeckeModule*> parts{&blocks[pick(rng)], &blocks[pick(rng)], &blocks[pick(rng)]};
        int n = 0;
        for (auto* b : parts) n += b->dim;
        SL2HeckeModule M{n, Matrix(F, n, n), Matrix(F, n, n), "sum"};
        int off = 0;
        for (auto* b : parts) {
            for (int i = 0; i < b->dim; ++i)
                for (int j = 0; j < b->dim; ++j) {
                    M.Tn.at(off + i, off + j) = b->Tn.at(i, j);
                    M.Th.at(off + i, off + j) = b->Th.at(i, j);
                }
            off += b->dim;
        }
        // Submodule generated by a random vector.
        std::uniform_int_distribution<int> coef(0, p - 1);
        Vec x(n);
        for (auto& c : x) c = coef(rng);
        Subspace S(F, n);
        std::vector<Vec> todo{x};
        while (!todo.empty()) {
            Vec w = todo.back();
            todo.pop_back();
            if (!S.add(w)) continue;
            todo.push_back(M.Tn.apply(w));
            todo.push_back(M.Th.apply(w));
        }
        int a = S.dim();
        auto comp = S.complement();
        int qd = static_cast<int>(comp.size());
        Matrix incl(F, n, a);
        for (int i = 0; i < a; ++i) incl.set_col(i, S.basis()[i]);
        auto coords = [&](const Vec& w) {  // coordinates in S of w in S
            Vec c;
            S.reduce(w, &c);
            return c;
        };
        SL2HeckeModule A{a, Matrix(F, a, a), Matrix(F, a, a), "sub"};
        for (int i = 0; i < a; ++i) {
            A.Tn.set_col(i, coords(M.Tn.apply(S.basis()[i])));
            A.Th.set_col(i, coords(M.Th.apply(S.basis()[i])));
        }
        Matrix proj(F, qd, n);
        for (int j = 0; j < n; ++j) {
            Vec e(n, 0);
            e[j] = 1;
            Vec r = S.reduce(e);
            for (int i = 0; i < qd; ++i) proj.at(i, j) = r[comp[i]];
        }
        SL2HeckeModule Q{qd, Matrix(F, qd, qd), Matrix(F, qd, qd), "quot"};
        for (int i = 0; i < qd; ++i) {
            Vec e(n, 0);
            e[comp[i]] = 1;
            Q.Tn.set_col(i, proj.apply(M.Tn.apply(e)));
            Q.Th.set_col(i, proj.apply(M.Th.apply(e)));
        }
        LinkModule LA(U, A), LM(U, M), LQ(U, Q);
        Matrix f = LM.functor(LA, incl), g = LQ.functor(LM, proj);
        std::string pr = params(p, v, "trial=" + std::to_string(trial) + " dims=" + std::to_string(a) + "," +
                                          std::to_string(n) + "," + std::to_string(qd));
        bool ok = rank(f) == LA.dim() && rank(g) == LQ.dim() && (g * f).is_zero() &&
                  LA.dim() + LQ.dim() == LM.dim();
        rep.add("short_exact", pr, ok);
        rep.add("invariants_equal_m", pr, LM.invariant_dim() == n, std::to_string(LM.invariant_dim()));
    }
    return rep;
}

}  // namespace hkphi
