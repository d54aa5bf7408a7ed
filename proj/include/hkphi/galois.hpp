// Licensed under the Apache License, Version 2.0.
// See http://www.apache.org/licenses/LICENSE-2.0 for details.
//
// Parameter triples ind(omega_{m+1}^h) (x) omega^s mu_beta and the comparison
// with supersingular Hecke modules.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hkphi/cyclic.hpp"

namespace hkphi {

struct GaloisParam {
    int p = 0, level = 1;   // level = m + 1
    long long h = 0;        // mod p^level - 1
    int s = 0;              // in [0, p-2]
    Elt beta_power = 1;     // beta^level

    long long modulus() const { return ipow(p, level) - 1; }
    long long c() const { return modulus() / (p - 1); }
    std::string str(const Field& F) const;
};

struct NormalForm {
    int level = 1;
    std::vector<long long> E;  // sorted p-orbit of h + s c
    Elt beta_power = 1;

    auto operator<=>(const NormalForm&) const = default;
    std::string str(const Field& F) const;
};

// nullopt for all k = 0 (dimension 0). Requires r = 1.
std::optional<GaloisParam> params_from_cyclic(const Field& F, const StandardCyclicModule& M);

// No n < level dividing level with h a multiple of (p^level - 1)/(p^n - 1).
bool is_primitive(long long h, int level, int p);
// Number of distinct p^j v mod p^level - 1.
int p_orbit_size(long long v, int level, int p);

NormalForm normalize(const GaloisParam& P);

struct BijectionRow {
    SupersingularModule mod;
    SupersingularInvariants inv;
    GaloisParam param;
    NormalForm nf;
    bool primitive = false;
};

struct BijectionResult {
    Report report;
    std::vector<BijectionRow> rows;
    long long domain = 0, image = 0, target = 0;
};

BijectionResult bijection_check(const Field& F, int d, Elt b, RealCase rc = RealCase::A);

}  // namespace hkphi
