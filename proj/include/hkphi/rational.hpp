// SPDX-License-Identifier: Apache-2.0
// Exact rational square matrices (GMP) for the GL_{d+1}(Q_p) identities.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hkphi {

class QMat {
public:
    QMat() = default;
    explicit QMat(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
    static QMat identity(int n) {
        QMat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static QMat diag(const std::vector<mpq_class>& d) {
        QMat m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m.at(i, i) = d[i];
        return m;
    }
    // E + c E_{ij}.
    static QMat elementary(int n, int i, int j, const mpq_class& c) {
        QMat m = identity(n);
        m.at(i, j) += c;
        return m;
    }

    int n() const { return n_; }
    mpq_class& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const mpq_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    QMat operator*(const QMat& o) const {
        QMat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                if (sgn(at(i, k)) == 0) continue;
                for (int j = 0; j < n_; ++j)
                    if (sgn(o.at(k, j)) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }
    bool operator==(const QMat& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    QMat inverse() const {
        QMat A = *this, I = identity(n_);
        for (int c = 0; c < n_; ++c) {
            int piv = -1;
            for (int r = c; r < n_; ++r)
                if (sgn(A.at(r, c)) != 0) { piv = r; break; }
            if (piv < 0) throw std::domain_error("singular rational matrix");
            for (int j = 0; j < n_; ++j) {
                std::swap(A.at(piv, j), A.at(c, j));
                std::swap(I.at(piv, j), I.at(c, j));
            }
            mpq_class inv = 1 / A.at(c, c);
            for (int j = 0; j < n_; ++j) { A.at(c, j) *= inv; I.at(c, j) *= inv; }
            for (int r = 0; r < n_; ++r) {
                if (r == c || sgn(A.at(r, c)) == 0) continue;
                mpq_class f = A.at(r, c);
                for (int j = 0; j < n_; ++j) {
                    A.at(r, j) -= f * A.at(c, j);
                    I.at(r, j) -= f * I.at(c, j);
                }
            }
        }
        return I;
    }

    // Integer powers; negative exponents invert.
    QMat pow(long long e) const {
        QMat b = e < 0 ? inverse() : *this;
        if (e < 0) e = -e;
        QMat r = identity(n_);
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool is_diagonal() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (i != j && sgn(at(i, j)) != 0) return false;
        return true;
    }

    // For a monomial matrix: column j has its single nonzero entry in row perm[j].
    std::vector<int> monomial_pattern() const {
        std::vector<int> perm(n_, -1);
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i)
                if (sgn(at(i, j)) != 0) {
                    if (perm[j] >= 0) throw std::domain_error("not a monomial matrix");
                    perm[j] = i;
                }
        return perm;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            s += i ? ";" : "";
            for (int j = 0; j < n_; ++j) s += (j ? " " : "") + at(i, j).get_str();
        }
        return s + "]";
    }

private:
    int n_ = 0;
    std::vector<mpq_class> a_;
};

}  // namespace hkphi
