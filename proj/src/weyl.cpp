// SPDX-License-Identifier: MIT

#include "hkphi/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hkphi {

Perm perm_identity(int d) {
    Perm w(d + 1);
    std::iota(w.begin(), w.end(), 0);
    return w;
}

Perm perm_s(int d, int j) {
    if (j < 1 || j > d) throw std::invalid_argument("s_j needs 1 <= j <= d");
    Perm w = perm_identity(d);
    std::swap(w[j - 1], w[j]);
    return w;
}

Perm perm_ubar(int d) {
    Perm w(d + 1);
    for (int j = 1; j <= d; ++j) w[j] = j - 1;
    w[0] = d;
    return w;
}

Perm operator*(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t j = 0; j < a.size(); ++j) r[j] = a[b[j]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t j = 0; j < a.size(); ++j) r[a[j]] = static_cast<int>(j);
    return r;
}

int perm_length(const Perm& w) {
    int n = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j) n += w[i] > w[j];
    return n;
}

std::vector<Perm> weyl_elements(int d) {
    std::vector<Perm> out;
    Perm w = perm_identity(d);
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

std::vector<int> perm_reduced_word(const Perm& w) {
    // Peel right descents: w(j-1) > w(j) means l(w s_j) < l(w).
    Perm x = w;
    std::vector<int> word;
    int d = perm_degree(w);
    while (perm_length(x) > 0) {
        for (int j = 1; j <= d; ++j)
            if (x[j - 1] > x[j]) {
                word.push_back(j);
                x = x * perm_s(d, j);
                break;
            }
    }
    return {word.rbegin(), word.rend()};
}

std::string perm_word(const Perm& w) {
    auto word = perm_reduced_word(w);
    if (word.empty()) return "1";
    std::string s;
    for (int j : word) s += "s" + std::to_string(j);
    return s;
}

std::string perm_oneline(const Perm& w) {
    std::string s = "[";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
}

Perm parse_perm_word(const std::string& s, int d) {
    if (s == "1" || s.empty()) return perm_identity(d);
    if (s == "w0") {
        Perm w(d + 1);
        for (int j = 0; j <= d; ++j) w[j] = d - j;
        return w;
    }
    Perm w = perm_identity(d);
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 's') throw std::invalid_argument("bad Weyl word: " + s);
        size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) throw std::invalid_argument("bad Weyl word: " + s);
        w = w * perm_s(d, std::stoi(s.substr(i + 1, j - i - 1)));
        i = j;
    }
    return w;
}

SigmaMap::SigmaMap(int d, int constant) : d_(d) {
    for (const auto& w : weyl_elements(d))
        if (in_Wsd(w)) t_[w] = constant;
}

void SigmaMap::set(const Perm& w, int value) {
    if (!in_Wsd(w)) throw std::invalid_argument("sigma is defined on W^{s_d} only");
    if (value < -1 || value > 1) throw std::invalid_argument("sigma takes values in {-1,0,1}");
    t_[w] = value;
}

int SigmaMap::at(const Perm& w) const {
    auto it = t_.find(w);
    if (it == t_.end()) throw std::out_of_range("sigma evaluated outside W^{s_d}");
    return it->second;
}

std::string SigmaMap::str() const {
    std::string s;
    for (const auto& [w, v] : t_) s += (s.empty() ? "" : " ") + perm_word(w) + "=" + std::to_string(v);
    return s;
}

std::vector<SigmaMap> all_sigma_maps(int d) {
    std::vector<Perm> dom;
    for (const auto& w : weyl_elements(d))
        if (in_Wsd(w)) dom.push_back(w);
    std::vector<SigmaMap> out;
    long long total = 1;
    for (size_t i = 0; i < dom.size(); ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
        SigmaMap s(d);
        long long c = code;
        for (const auto& w : dom) {
            s.set(w, static_cast<int>(c % 3) - 1);
            c /= 3;
        }
        out.push_back(s);
    }
    return out;
}

Perm plus_map(const Perm& w, const std::set<Perm>& Wprime, const SigmaMap& sigma) {
    int d = perm_degree(w);
    Perm ub = perm_ubar(d), sd = perm_s(d, d);
    Perm x = w * perm_inverse(ub), y = x * sd;
    if (sigma.is(x, 0) || sigma.is(y, 0)) return x;
    bool inW = Wprime.count(y * ub) > 0;
    bool a = sigma.is(x, -1) || sigma.is(y, 1);
    bool b = sigma.is(x, 1) || sigma.is(y, -1);
    if ((a && !inW) || (b && inW)) return x;
    return y;
}

std::set<Perm> AdmissibleFiltration::prefix(int i) const {
    std::set<Perm> s;
    for (int l = 0; l < i; ++l) s.insert(levels[l].members.begin(), levels[l].members.end());
    return s;
}

std::string AdmissibleFiltration::str() const {
    std::string s;
    for (size_t i = 0; i < levels.size(); ++i) {
        s += "W" + std::to_string(i + 1) + "-W" + std::to_string(i) + ":";
        for (const auto& o : levels[i].orbits) {
            s += " (";
            for (size_t j = 0; j < o.size(); ++j) s += (j ? "->" : "") + perm_word(o[j]);
            s += ")";
        }
        s += "\n";
    }
    return s;
}

namespace {

std::vector<Perm> rotate_min(std::vector<Perm> cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    return cyc;
}

void canonical_orbits(FiltrationLevel& L) {
    for (auto& o : L.orbits) o = rotate_min(o);
    std::sort(L.orbits.begin(), L.orbits.end());
    std::sort(L.members.begin(), L.members.end());
}

}  // namespace

AdmissibleFiltration admissible_filtration(const SigmaMap& sigma) {
    int d = sigma.d();
    AdmissibleFiltration F{d, {}};
    std::set<Perm> done;
    auto all = weyl_elements(d);
    while (done.size() < all.size()) {
        std::map<Perm, Perm> f;
        for (const auto& w : all) {
            if (done.count(w)) continue;
            Perm v = plus_map(w, done, sigma);
            if (done.count(v)) throw std::logic_error("successor map leaves W - W_{i-1} at " + perm_word(w));
            f[w] = v;
        }
        // Elements on cycles: w with f^k(w) = w for some k <= |f|.
        FiltrationLevel L;
        std::set<Perm> seen;
        for (const auto& [w, _] : f) {
            Perm x = f[w];
            bool cyc = false;
            for (size_t k = 0; k < f.size(); ++k) {
                if (x == w) { cyc = true; break; }
                x = f[x];
            }
            if (!cyc || seen.count(w)) continue;
            std::vector<Perm> orbit{w};
            seen.insert(w);
            for (Perm z = f[w]; z != w; z = f[z]) {
                orbit.push_back(z);
                seen.insert(z);
            }
            L.orbits.push_back(orbit);
            L.members.insert(L.members.end(), orbit.begin(), orbit.end());
        }
        if (L.members.empty()) throw std::logic_error("empty filtration level");
        canonical_orbits(L);
        done.insert(L.members.begin(), L.members.end());
        F.levels.push_back(std::move(L));
    }
    return F;
}

AdmissibleFiltration sigma_one_filtration(int d) {
    if (d < 2) throw std::invalid_argument("closed-form filtration needs d >= 2");
    Perm ub = perm_ubar(d), sd = perm_s(d, d);
    Perm step = perm_inverse(ub) * sd;
    // R = <s_1,...,s_{d-2}>: permutations fixing d-1 and d.
    std::vector<Perm> R;
    for (const auto& w : weyl_elements(d))
        if (w[d - 1] == d - 1 && w[d] == d) R.push_back(w);
    AdmissibleFiltration F{d, {}};
    for (int i = 1; i <= d + 1; ++i) {
        Perm head = perm_identity(d);
        for (int j = i; j <= d; ++j) head = head * perm_s(d, j);
        FiltrationLevel L;
        for (const auto& v : R) {
            std::vector<Perm> orbit;
            Perm w = head * v;
            for (int j = 0; j < d; ++j) {
                orbit.push_back(w);
                w = w * step;
            }
            L.orbits.push_back(orbit);
            L.members.insert(L.members.end(), orbit.begin(), orbit.end());
        }
        canonical_orbits(L);
        F.levels.push_back(std::move(L));
    }
    return F;
}

std::string verify_admissible(const AdmissibleFiltration& F, const SigmaMap& sigma) {
    auto all = weyl_elements(F.d);
    std::set<Perm> prev;
    for (size_t i = 0; i < F.levels.size(); ++i) {
        const auto& L = F.levels[i];
        std::set<Perm> level(L.members.begin(), L.members.end());
        if (level.empty()) return "empty level " + std::to_string(i + 1);
        for (const auto& w : level)
            if (prev.count(w)) return "levels overlap at " + perm_word(w);
        for (const auto& w : all) {
            if (prev.count(w)) continue;
            Perm v = plus_map(w, prev, sigma);
            if (prev.count(v)) return "W - W_{i-1} not respected at " + perm_word(w);
            if (level.count(w) && !level.count(v)) return "W_i - W_{i-1} not respected at " + perm_word(w);
        }
        std::set<Perm> image;
        for (const auto& w : level) image.insert(plus_map(w, prev, sigma));
        if (image != level) return "not a permutation of level " + std::to_string(i + 1);
        std::set<Perm> in_orbits;
        for (const auto& o : L.orbits)
            for (size_t j = 0; j < o.size(); ++j) {
                if (plus_map(o[j], prev, sigma) != o[(j + 1) % o.size()])
                    return "orbit order broken at " + perm_word(o[j]);
                in_orbits.insert(o[j]);
            }
        if (in_orbits != level) return "orbits do not partition level " + std::to_string(i + 1);
        prev.insert(level.begin(), level.end());
    }
    if (prev.size() != all.size()) return "filtration does not exhaust W";
    return {};
}

bool same_filtration(const AdmissibleFiltration& a, const AdmissibleFiltration& b) {
    if (a.d != b.d || a.levels.size() != b.levels.size()) return false;
    for (size_t i = 0; i < a.levels.size(); ++i) {
        FiltrationLevel x = a.levels[i], y = b.levels[i];
        canonical_orbits(x);
        canonical_orbits(y);
        if (x.members != y.members || x.orbits != y.orbits) return false;
    }
    return true;
}

SigmaMap example_sigma_24() {
    SigmaMap s(2);
    s.set(parse_perm_word("s2s1", 2), 1);
    s.set(parse_perm_word("s1", 2), 1);
    s.set(parse_perm_word("1", 2), 0);
    return s;
}

SigmaMap example_sigma_42() {
    SigmaMap s(2);
    s.set(parse_perm_word("s2s1", 2), 0);
    s.set(parse_perm_word("s1", 2), 1);
    s.set(parse_perm_word("1", 2), 1);
    return s;
}

}  // namespace hkphi
