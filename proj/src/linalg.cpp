// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.

#include "hkphi/linalg.hpp"

#include <stdexcept>

namespace hkphi {

Matrix::Matrix(const Field& f, int rows, int cols)
    : F_(&f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

Matrix Matrix::identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec Matrix::row(int i) const {
    return Vec(a_.begin() + static_cast<long>(i) * cols_, a_.begin() + static_cast<long>(i + 1) * cols_);
}

Vec Matrix::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void Matrix::set_col(int j, const Vec& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
    Matrix r(*F_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Elt a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                Elt b = o.at(k, j);
                if (b) r.at(i, j) = F_->add(r.at(i, j), F_->mul(a, b));
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in sum");
    Matrix r(*F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in difference");
    Matrix r(*F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::scale(Elt s) const {
    Matrix r(*F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->mul(s, a_[i]);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(*F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dimension mismatch in apply");
    Vec r(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        Elt acc = 0;
        for (int j = 0; j < cols_; ++j)
            if (v[j] && at(i, j)) acc = F_->add(acc, F_->mul(at(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    Echelon E = rref(hcat(identity(*F_, rows_)));
    for (int i = 0; i < rows_; ++i)
        if (static_cast<int>(E.pivots.size()) <= i || E.pivots[i] != i) throw std::domain_error("singular matrix");
    Matrix r(*F_, rows_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j) r.at(i, j) = E.R.at(i, rows_ + j);
    return r;
}

Matrix Matrix::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Matrix r = identity(*F_, rows_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Matrix::is_zero() const {
    for (Elt x : a_)
        if (x) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::hcat(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("dimension mismatch in hcat");
    Matrix r(*F_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Echelon rref(const Matrix& A) {
    const Field& F = A.field();
    Echelon e{A, {}};
    Matrix& R = e.R;
    int r = 0;
    for (int c = 0; c < R.cols() && r < R.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < R.rows(); ++i)
            if (R.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < R.cols(); ++j) std::swap(R.at(piv, j), R.at(r, j));
        Elt inv = F.inv(R.at(r, c));
        for (int j = c; j < R.cols(); ++j) R.at(r, j) = F.mul(inv, R.at(r, j));
        for (int i = 0; i < R.rows(); ++i) {
            if (i == r || R.at(i, c) == 0) continue;
            Elt f = R.at(i, c);
            for (int j = c; j < R.cols(); ++j)
                if (R.at(r, j)) R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(r, j)));
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

int rank(const Matrix& A) { return static_cast<int>(rref(A).pivots.size()); }

std::vector<Vec> kernel(const Matrix& A) {
    const Field& F = A.field();
    Echelon e = rref(A);
    std::vector<bool> is_piv(A.cols(), false);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<Vec> out;
    for (int f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(A.cols(), 0);
        v[f] = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.R.at(static_cast<int>(r), f));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve(const Matrix& A, const Vec& b) {
    const Field& F = A.field();
    if (static_cast<int>(b.size()) != A.rows()) throw std::invalid_argument("dimension mismatch in solve");
    Matrix aug(F, A.rows(), 1);
    aug.set_col(0, b);
    Echelon e = rref(A.hcat(aug));
    Vec x(A.cols(), 0);
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        int c = e.pivots[r];
        if (c == A.cols()) return std::nullopt;
        x[c] = e.R.at(static_cast<int>(r), A.cols());
    }
    return x;
}

Vec vadd(const Field& F, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

Vec vsub(const Field& F, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return r;
}

Vec vscale(const Field& F, Elt s, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(s, a[i]);
    return r;
}

bool vzero(const Vec& a) {
    for (Elt x : a)
        if (x) return false;
    return true;
}

Elt dot(const Field& F, const Vec& a, const Vec& b) {
    Elt acc = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) acc = F.add(acc, F.mul(a[i], b[i]));
    return acc;
}

Subspace::Subspace(const Field& f, int n) : F_(&f), n_(n) {}

Subspace::Subspace(const Field& f, int n, const std::vector<Vec>& span) : F_(&f), n_(n) {
    for (const auto& v : span) add(v);
}

std::vector<int> Subspace::complement() const {
    std::vector<bool> is_piv(n_, false);
    for (int c : piv_) is_piv[c] = true;
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (!is_piv[i]) out.push_back(i);
    return out;
}

Vec Subspace::reduce(const Vec& v, Vec* coeff) const {
    Vec r = v;
    if (coeff) coeff->assign(basis_.size(), 0);
    for (size_t i = 0; i < basis_.size(); ++i) {
        Elt c = r[piv_[i]];
        if (!c) continue;
        const Vec& b = basis_[i];
        for (int j = 0; j < n_; ++j)
            if (b[j]) r[j] = F_->sub(r[j], F_->mul(c, b[j]));
        if (coeff) (*coeff)[i] = c;
    }
    return r;
}

bool Subspace::contains(const Vec& v) const { return vzero(reduce(v)); }

bool Subspace::add(const Vec& v) {
    Vec r = reduce(v);
    int p = -1;
    for (int j = 0; j < n_; ++j)
        if (r[j]) { p = j; break; }
    if (p < 0) return false;
    r = vscale(*F_, F_->inv(r[p]), r);
    // Keep the basis fully reduced so that reduce() is a single pass.
    for (auto& b : basis_) {
        Elt c = b[p];
        if (!c) continue;
        for (int j = 0; j < n_; ++j)
            if (r[j]) b[j] = F_->sub(b[j], F_->mul(c, r[j]));
    }
    basis_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
}

}  // namespace hkphi
