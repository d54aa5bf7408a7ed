// SPDX-License-Identifier: Apache-2.0
// Digit embedding of the half tree into the building of GL_{d+1}(Q_p):
// nabla(m) = prod_j nu_j^{m_j p^{e[j,alpha_j]}} and the identities it satisfies.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hkphi/hecke.hpp"
#include "hkphi/report.hpp"

namespace hkphi {

// p-adic valuation of a nonzero rational.
int padic_val(const mpq_class& x, int p);
// x lies in the standard Iwahori: integral, invertible, upper triangular mod p.
bool in_iwahori(const QMat& x, int p);

class EmbeddingWitness {
public:
    EmbeddingWitness(const Realization& R, int levels);

    const Realization& realization() const { return R_; }
    int levels() const { return levels_; }
    const QMat& phi() const { return phi_; }
    // Root alpha^{(j)} as the matrix position of its root group.
    std::pair<int, int> root(int j) const { return roots_[j]; }
    const QMat& nu(int j) const { return nu_[j]; }
    // e[i, beta] with beta given by its position.
    int e(int i, std::pair<int, int> beta) const;
    // Structural problems found while building (empty if none).
    const std::vector<std::string>& defects() const { return defects_; }

    QMat nabla(long long m) const;
    // x in the stabilizer of C^{(i)} = phi^i C.
    bool fixes_chamber(const QMat& x, int i) const;
    QMat phi_pow(int i) const;

private:
    Realization R_;
    int levels_;
    QMat phi_, phi_inv_;
    std::vector<QMat> phi_pows_, phi_inv_pows_;
    std::vector<std::pair<int, int>> roots_;
    std::vector<QMat> nu_;
    std::vector<std::map<std::pair<int, int>, int>> e_;
    std::vector<std::string> defects_;
    mutable std::map<long long, QMat> cache_;
};

// Embedding identities for 0 <= m < m_max; requires m_max >= p.
Report verify_embedding(int p, int d, RealCase c, int m_max);

}  // namespace hkphi
