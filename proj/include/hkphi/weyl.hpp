// SPDX-License-Identifier: MIT
//
// The Weyl group W = S_{d+1} acting on {0,...,d}, with s_j = (j-1 j) and
// ubar = s_d ... s_1, the successor maps (.)_+^{W'} attached to a map
// sigma : W^{s_d} -> {-1,0,1}, and admissible filtrations.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace hkphi {

// w[j] = w(j); products compose right to left.
using Perm = std::vector<int>;

Perm perm_identity(int d);
Perm perm_s(int d, int j);
Perm perm_ubar(int d);
Perm operator*(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
int perm_length(const Perm& w);
// Elements of S_{d+1}, lexicographic order of one-line notation.
std::vector<Perm> weyl_elements(int d);
inline int perm_degree(const Perm& w) { return static_cast<int>(w.size()) - 1; }
// w(d-1) < w(d), i.e. l(w s_d) > l(w).
inline bool in_Wsd(const Perm& w) { return w[w.size() - 2] < w[w.size() - 1]; }

// Indices j_1..j_l with w = s_{j_1} ... s_{j_l} reduced.
std::vector<int> perm_reduced_word(const Perm& w);
// A reduced word such as "s1s2" (the product s1 s2); "1" for the identity.
std::string perm_word(const Perm& w);
// One-line notation "[w(0),...,w(d)]".
std::string perm_oneline(const Perm& w);
// Parses "1", "w0" or a word in s1..sd.
Perm parse_perm_word(const std::string& s, int d);

// A map W^{s_d} -> {-1,0,1}; at() throws outside the domain.
class SigmaMap {
public:
    explicit SigmaMap(int d, int constant = 0);
    int d() const { return d_; }
    void set(const Perm& w, int value);
    int at(const Perm& w) const;
    // "sigma(x) = v" in the shorthand of the definition: x in W^{s_d} and sigma(x) = v.
    bool is(const Perm& x, int v) const { return in_Wsd(x) && at(x) == v; }
    const std::map<Perm, int>& table() const { return t_; }
    std::string str() const;

private:
    int d_;
    std::map<Perm, int> t_;
};

// All 3^{|W^{s_d}|} maps.
std::vector<SigmaMap> all_sigma_maps(int d);

Perm plus_map(const Perm& w, const std::set<Perm>& Wprime, const SigmaMap& sigma);

struct FiltrationLevel {
    std::vector<Perm> members;               // sorted
    std::vector<std::vector<Perm>> orbits;   // orbit[j+1] = orbit[j]_+
};

struct AdmissibleFiltration {
    int d = 0;
    std::vector<FiltrationLevel> levels;
    // W_i as a set (i = 0 .. levels.size()).
    std::set<Perm> prefix(int i) const;
    std::string str() const;
};

AdmissibleFiltration admissible_filtration(const SigmaMap& sigma);
AdmissibleFiltration sigma_one_filtration(int d);
// Checks the definition of admissibility; empty string means success.
std::string verify_admissible(const AdmissibleFiltration& F, const SigmaMap& sigma);
// Same chains and the same orbit partitions up to rotation of cycles.
bool same_filtration(const AdmissibleFiltration& a, const AdmissibleFiltration& b);

// Two d = 2 maps with cycle types (2, 4) and (4, 2).
SigmaMap example_sigma_24();
SigmaMap example_sigma_42();

}  // namespace hkphi
