// Licensed under the Apache License, Version 2.0.
// See http://www.apache.org/licenses/LICENSE-2.0 for details.

#include "hkphi/galois.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hkphi {

std::string GaloisParam::str(const Field& F) const {
    std::ostringstream os;
    os << "ind(w_" << level << "^" << h << ") x w^" << s << " x mu[beta^" << level << "=" << F.str(beta_power) << "]";
    return os.str();
}

std::string NormalForm::str(const Field& F) const {
    std::ostringstream os;
    os << "level=" << level << " E={";
    for (size_t i = 0; i < E.size(); ++i) os << (i ? "," : "") << E[i];
    os << "} beta^" << level << "=" << F.str(beta_power);
    return os.str();
}

std::optional<GaloisParam> params_from_cyclic(const Field& F, const StandardCyclicModule& M) {
    validate(M);
    if (M.r != 1) throw std::invalid_argument("params_from_cyclic needs r = 1");
    if (M.all_k_zero()) return std::nullopt;
    GaloisParam P;
    P.p = M.p;
    P.level = M.perimeter();
    long long top = M.h_vec().back();
    if (top % (M.p - 1)) throw std::logic_error("h_{m+1} not divisible by p-1");
    P.h = top / (M.p - 1);
    // gamma(x) e_0 = x^{-h_0 - s} e_0 with h_0 = 0.
    P.s = M.eta.empty() ? 0 : static_cast<int>(mod(-M.eta[0], M.p - 1));
    // (-1)^m beta^{-(m+1)} = rho.
    Elt rho = M.rho_total(F);
    if ((P.level - 1) % 2) rho = F.neg(rho);
    P.beta_power = F.inv(rho);
    return P;
}

bool is_primitive(long long h, int level, int p) {
    long long Q = ipow(p, level) - 1;
    if (level < 1 || h < 1 || h > Q - 1) throw std::out_of_range("h outside [1, p^level - 2]");
    for (int n = 1; n < level; ++n) {
        if (level % n) continue;
        long long unit = Q / (ipow(p, n) - 1);
        if (h % unit == 0) return false;
    }
    return true;
}

int p_orbit_size(long long v, int level, int p) {
    long long Q = ipow(p, level) - 1;
    std::set<long long> seen;
    long long x = mod(v, Q);
    for (int j = 0; j < level; ++j, x = x * p % Q) seen.insert(x);
    return static_cast<int>(seen.size());
}

NormalForm normalize(const GaloisParam& P) {
    NormalForm nf;
    nf.level = P.level;
    nf.beta_power = P.beta_power;
    long long Q = P.modulus();
    long long x = mod(P.h + static_cast<long long>(P.s) * P.c(), Q);
    for (int j = 0; j < P.level; ++j, x = x * P.p % Q) nf.E.push_back(x);
    std::sort(nf.E.begin(), nf.E.end());
    return nf;
}

BijectionResult bijection_check(const Field& F, int d, Elt b, RealCase rc) {
    BijectionResult res;
    Report& rep = res.report;
    rep.suite = "bijection";
    const int p = F.p(), level = d + 1;
    std::ostringstream prs;
    prs << "p=" << p << " q=" << F.q() << " d=" << d << " b=" << F.str(b) << " case=" << case_name(rc);
    const std::string pr = prs.str();

    bool paths = true, prim = true, irr = true;
    std::string wpaths, wprim, wirr;
    for (const auto& M : enumerate_supersingular(F, d, b, rc)) {
        BijectionRow row;
        row.mod = M;
        row.inv = supersingular_invariants(F, M);
        auto C = from_supersingular(F, M);
        auto P = params_from_cyclic(F, C);
        if (!P) throw std::logic_error("supersingular module with all k = 0");
        row.param = *P;
        row.nf = normalize(*P);
        row.primitive = P->h >= 1 && P->h < P->c() && is_primitive(P->h, level, p);
        if (P->h != row.inv.h || P->s != row.inv.s || P->beta_power != row.inv.beta_power) {
            paths = false;
            if (wpaths.empty()) wpaths = M.str(F) + " -> " + P->str(F);
        }
        if (!row.primitive) {
            prim = false;
            if (wprim.empty()) wprim = M.str(F) + " h=" + std::to_string(P->h);
        }
        if (!is_irreducible(C, true)) {
            irr = false;
            if (wirr.empty()) wirr = C.str(F);
        }
        res.rows.push_back(std::move(row));
    }
    res.domain = static_cast<long long>(res.rows.size());
    rep.add("direct_path_agrees", pr, paths, wpaths);
    rep.add("primitive", pr, prim, wprim);
    rep.add("irreducible", pr, irr, wirr);

    std::map<NormalForm, const BijectionRow*> image;
    std::string wdup;
    for (const auto& row : res.rows) {
        auto [it, fresh] = image.emplace(row.nf, &row);
        if (!fresh && wdup.empty()) wdup = it->second->mod.str(F) + " and " + row.mod.str(F);
    }
    res.image = static_cast<long long>(image.size());
    rep.add("injective", pr + " domain=" + std::to_string(res.domain), res.image == res.domain, wdup);

    // Target classes: primitive h in [1, c-1], s in [0, p-2], modulo normalize.
    // beta^{d+1} is pinned by b and the inertia type, so classes are compared on E.
    GaloisParam T;
    T.p = p;
    T.level = level;
    std::set<std::vector<long long>> target;
    for (long long h = 1; h < T.c(); ++h) {
        if (!is_primitive(h, level, p)) continue;
        for (int s = 0; s <= p - 2; ++s) {
            T.h = h;
            T.s = s;
            target.insert(normalize(T).E);
        }
    }
    res.target = static_cast<long long>(target.size());
    std::set<std::vector<long long>> image_types;
    for (const auto& [nf, _] : image) image_types.insert(nf.E);
    std::string wmiss;
    for (const auto& e : target)
        if (!image_types.count(e)) {
            wmiss = "E={";
            for (size_t i = 0; i < e.size(); ++i) wmiss += (i ? "," : "") + std::to_string(e[i]);
            wmiss += "}";
            break;
        }
    bool inside = true;
    for (const auto& e : image_types) inside &= target.count(e) > 0;
    rep.add("surjective", pr + " target=" + std::to_string(res.target), wmiss.empty() && inside,
            wmiss.empty() ? "image type outside target" : "missing " + wmiss);
    rep.add("count_equal", pr, res.image == res.target,
            "image=" + std::to_string(res.image) + " target=" + std::to_string(res.target));
    return res;
}

}  // namespace hkphi
