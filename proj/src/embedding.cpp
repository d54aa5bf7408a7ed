// SPDX-License-Identifier: Apache-2.0

#include "hkphi/embedding.hpp"

#include <stdexcept>

#include "hkphi/series.hpp"

namespace hkphi {

namespace {

int val_z(mpz_class x, int p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// nu^k for a unipotent nu with (nu - 1)^2 = 0.
QMat unip_pow(const QMat& nu, const mpz_class& k) {
    QMat r = nu;
    for (int i = 0; i < r.n(); ++i)
        for (int j = 0; j < r.n(); ++j) {
            if (i == j) continue;
            r.at(i, j) *= k;
        }
    return r;
}

std::string pos_str(std::pair<int, int> b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

}  // namespace

int padic_val(const mpq_class& x, int p) {
    if (sgn(x) == 0) throw std::domain_error("valuation of zero");
    return val_z(x.get_num(), p) - val_z(x.get_den(), p);
}

bool in_iwahori(const QMat& x, int p) {
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) {
            const mpq_class& a = x.at(i, j);
            if (sgn(a) == 0) {
                if (i == j) return false;
                continue;
            }
            int v = padic_val(a, p);
            if (v < 0 || (i > j && v < 1) || (i == j && v != 0)) return false;
        }
    return true;
}

EmbeddingWitness::EmbeddingWitness(const Realization& R, int levels)
    : R_(R), levels_(levels), phi_(R.phi()), phi_inv_(phi_.inverse()) {
    const int n = R.d() + 1, p = R.p();
    phi_pows_.push_back(QMat::identity(n));
    phi_inv_pows_.push_back(QMat::identity(n));
    for (int i = 1; i <= levels + 1; ++i) {
        phi_pows_.push_back(phi_pows_.back() * phi_);
        phi_inv_pows_.push_back(phi_inv_pows_.back() * phi_inv_);
    }
    // e[i, beta]: least v with 1 + p^v E_beta in the stabilizer of C^{(i)}.
    e_.resize(levels + 1);
    for (int i = 0; i <= levels; ++i)
        for (int r = 0; r < n; ++r)
            for (int c = r + 1; c < n; ++c) {
                int v = 0;
                mpq_class pv = 1;
                while (v <= i + 1 && !fixes_chamber(QMat::elementary(n, r, c, pv), i)) {
                    ++v;
                    pv *= p;
                }
                if (v > i + 1) defects_.push_back("no root level for " + pos_str({r, c}) + " at i=" + std::to_string(i));
                e_[i][{r, c}] = v;
            }
    for (const auto& [b, v] : e_[0])
        if (v) defects_.push_back("N_0 not integral at " + pos_str(b));
    for (int i = 0; i < levels; ++i) {
        int steps = 0;
        std::pair<int, int> which{-1, -1};
        for (const auto& [b, v] : e_[i + 1]) {
            int dv = v - e_[i].at(b);
            if (dv == 1) {
                ++steps;
                which = b;
            } else if (dv != 0) {
                steps += 2;
            }
        }
        if (steps != 1) defects_.push_back("index of N_0^(" + std::to_string(i + 1) + ") is not p");
        roots_.push_back(which);
    }
    if (roots_.empty() || roots_[0].first < 0) return;
    nu_.push_back(QMat::elementary(n, roots_[0].first, roots_[0].second, 1));
    for (int j = 0; j + 1 < levels; ++j) {
        QMat X = phi_ * nu_[j] * phi_inv_;
        auto [r, c] = roots_[j + 1];
        mpq_class coeff = r < 0 ? mpq_class(0) : X.at(r, c);
        bool single = r >= 0 && sgn(coeff) != 0;
        for (int a = 0; a < n && single; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && !(a == r && b == c) && sgn(X.at(a, b)) != 0) single = false;
        if (!single) {
            defects_.push_back("phi nu_" + std::to_string(j) + " phi^-1 leaves the root group");
            return;
        }
        mpq_class entry = coeff;
        for (int k = 0; k < e_[1].at({r, c}); ++k) entry /= p;
        if (padic_val(entry, p) != 0) defects_.push_back("nu_" + std::to_string(j + 1) + " is not a generator");
        nu_.push_back(QMat::elementary(n, r, c, entry));
    }
}

int EmbeddingWitness::e(int i, std::pair<int, int> beta) const { return e_.at(i).at(beta); }

QMat EmbeddingWitness::phi_pow(int i) const { return i >= 0 ? phi_pows_.at(i) : phi_inv_pows_.at(-i); }

bool EmbeddingWitness::fixes_chamber(const QMat& x, int i) const {
    return in_iwahori(phi_inv_pows_.at(i) * x * phi_pows_.at(i), R_.p());
}

QMat EmbeddingWitness::nabla(long long m) const {
    if (m < 0) throw std::invalid_argument("nabla of a negative integer");
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    const int p = R_.p();
    QMat r = QMat::identity(R_.d() + 1);
    long long rest = m;
    for (int j = 0; rest > 0; ++j) {
        if (j >= static_cast<int>(nu_.size())) throw std::out_of_range("nabla beyond the witness depth");
        long long digit = rest % p;
        rest /= p;
        if (!digit) continue;
        mpz_class k = static_cast<long>(digit);
        for (int t = 0; t < e_[j].at(roots_[j]); ++t) k *= p;
        r = r * unip_pow(nu_[j], k);
    }
    cache_.emplace(m, r);
    return r;
}

Report verify_embedding(int p, int d, RealCase c, int m_max) {
    if (m_max < p) throw std::invalid_argument("m_max must be at least p");
    Report rep{"embedding", {}};
    const std::string pr = "p=" + std::to_string(p) + " d=" + std::to_string(d) + " case=" + case_name(c) +
                           " m<" + std::to_string(m_max);
    Realization R(p, d, c);
    std::vector<long> as;
    for (long a = 1; a <= 2 * p; ++a)
        if (a % p) as.push_back(a);
    const long long biggest = 2LL * p * p * (m_max + 1);
    EmbeddingWitness W(R, ceil_log(biggest + 1, p) + 1);
    const int n = d + 1;

    std::string wit;
    auto first = [&](bool ok, const std::string& w) {
        if (!ok && wit.empty()) wit = w;
        return ok;
    };
    auto line = [&](const std::string& name, bool ok) {
        rep.add(name, pr, ok, wit);
        wit.clear();
    };

    line("gallery", first(W.defects().empty(), W.defects().empty() ? "" : W.defects().front()));
    if (!W.defects().empty()) return rep;

    bool ok = R.n_sd() * R.sd() == R.tau(-1);
    line("nsd_sd_is_tau_minus_one", first(ok, R.n_sd().str()));

    ok = true;
    for (long a : as) ok &= first(R.tau(a) * W.phi() == W.phi() * R.tau(a), "a=" + std::to_string(a));
    line("tau_commutes_with_phi", ok);

    ok = true;
    for (int j = 0; j < W.levels(); ++j)
        for (long a : as) {
            QMat lhs = R.tau(a) * W.nu(j) * R.tau(a).inverse();
            ok &= first(lhs == unip_pow(W.nu(j), a), "j=" + std::to_string(j) + " a=" + std::to_string(a));
        }
    line("tau_acts_by_a_on_root_groups", ok);

    ok = true;
    for (int j = 0; j + 1 < W.levels(); ++j) {
        mpz_class k = 1;
        for (int t = 0; t < W.e(1, W.root(j + 1)); ++t) k *= p;
        ok &= first(W.phi() * W.nu(j) * W.phi_pow(-1) == unip_pow(W.nu(j + 1), k), "j=" + std::to_string(j));
    }
    line("epin", ok);

    line("nabla_zero", first(W.nabla(0) == QMat::identity(n), W.nabla(0).str()));

    ok = true;
    for (long long m = 0; m < m_max; ++m)
        ok &= first(W.phi() * W.nabla(m) * W.phi_pow(-1) == W.nabla(p * m), "m=" + std::to_string(m));
    line("phi_conjugates_nabla", ok);

    auto g = [&](long long m, long long b) { return W.nabla(b + m) * W.nabla(m).inverse(); };
    auto h = [&](long long m, long a) { return W.nabla(a * m) * R.tau(a) * W.nabla(m).inverse(); };

    ok = true;
    for (long long m = 0; m < m_max; ++m)
        ok &= first(g(p * m, p) * W.phi() == W.phi() * g(m, 1), "m=" + std::to_string(m));
    line("cocycle_step", ok);

    ok = true;
    for (long long m = 0; m < m_max; ++m)
        for (long a : as)
            ok &= first(h(m + 1, a) * g(m, 1) == g(a * m, a) * h(m, a),
                        "m=" + std::to_string(m) + " a=" + std::to_string(a));
    line("torus_cocycle_shift", ok);

    ok = true;
    for (long long m = 0; m < m_max; ++m)
        for (long a : as)
            ok &= first(h(p * m, a) * W.phi() == W.phi() * h(m, a), "m=" + std::to_string(m) + " a=" + std::to_string(a));
    line("torus_commutes_phi", ok);

    // {nabla(m) : m < p^i} is a transversal of N_0 / N_0^{(i)}.
    const int L = ceil_log(m_max, p);
    ok = true;
    for (int i = 0; i <= L; ++i) {
        long long P = ipow(p, i);
        for (long long m = 0; m < P; ++m) {
            ok &= first(in_iwahori(W.nabla(m), p), "nabla(" + std::to_string(m) + ") not in N_0");
            QMat inv = W.nabla(m).inverse();
            for (long long m2 = m + 1; m2 < P; ++m2)
                ok &= first(!W.fixes_chamber(inv * W.nabla(m2), i),
                            "i=" + std::to_string(i) + " m=" + std::to_string(m) + "," + std::to_string(m2));
        }
    }
    line("transversal", ok);

    // g(v,b) and h(v,a) induce nu^b and gamma(a) on the children ]v[.
    ok = true;
    bool ok_h = true;
    std::string wit_h;
    for (int i = 0; i < L; ++i) {
        long long P = ipow(p, i), P1 = P * p;
        for (long long m = 0; m < P; ++m)
            for (long long t = 0; t < p; ++t) {
                long long nn = m + P * t;
                for (long long b : {1LL, static_cast<long long>(p)}) {
                    QMat x = W.nabla((b + nn) % P1).inverse() * g(m, b) * W.nabla(nn);
                    ok &= first(W.fixes_chamber(x, i + 1), "i=" + std::to_string(i) + " m=" + std::to_string(m) +
                                                               " t=" + std::to_string(t) + " b=" + std::to_string(b));
                }
                for (long a : as) {
                    QMat x = W.nabla((a * nn) % P1).inverse() * h(m, a) * W.nabla(nn);
                    bool hit = W.fixes_chamber(x, i + 1);
                    if (!hit && wit_h.empty())
                        wit_h = "i=" + std::to_string(i) + " m=" + std::to_string(m) + " t=" + std::to_string(t) +
                                " a=" + std::to_string(a);
                    ok_h &= hit;
                }
            }
    }
    line("g_induces_nu", ok);
    rep.add("h_induces_gamma", pr, ok_h, wit_h);
    return rep;
}

}  // namespace hkphi
