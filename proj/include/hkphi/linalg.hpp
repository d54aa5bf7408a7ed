// Copyright (c) the hkphi authors.
// Licensed under the BSD 2-Clause License.
//
// Dense exact linear algebra over a finite field.

#pragma once

#include <optional>
#include <vector>

#include "hkphi/field.hpp"

namespace hkphi {

using Vec = std::vector<Elt>;

class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& f, int rows, int cols);
    static Matrix identity(const Field& f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *F_; }

    Elt& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Elt at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Vec row(int i) const;
    Vec col(int j) const;
    void set_col(int j, const Vec& v);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scale(Elt s) const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const;
    Matrix inverse() const;
    // Negative exponents use the inverse.
    Matrix pow(long long e) const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const;

    // Column concatenation [this | o].
    Matrix hcat(const Matrix& o) const;

private:
    const Field* F_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<Elt> a_;
};

struct Echelon {
    Matrix R;                 // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
};

Echelon rref(const Matrix& A);
int rank(const Matrix& A);
// Basis of {x : A x = 0}.
std::vector<Vec> kernel(const Matrix& A);
// Some x with A x = b.
std::optional<Vec> solve(const Matrix& A, const Vec& b);

Vec vadd(const Field& F, const Vec& a, const Vec& b);
Vec vsub(const Field& F, const Vec& a, const Vec& b);
Vec vscale(const Field& F, Elt s, const Vec& a);
bool vzero(const Vec& a);
Elt dot(const Field& F, const Vec& a, const Vec& b);

// Subspace of k^n in reduced echelon form; the non-pivot coordinates give the quotient.
class Subspace {
public:
    Subspace(const Field& f, int n);
    Subspace(const Field& f, int n, const std::vector<Vec>& span);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return piv_; }
    // Coordinates that are not pivots, in increasing order.
    std::vector<int> complement() const;

    // Returns false if v was already contained.
    bool add(const Vec& v);
    bool contains(const Vec& v) const;
    // v = residual + sum coeff[i] * basis[i], residual zero at pivots.
    Vec reduce(const Vec& v, Vec* coeff = nullptr) const;

private:
    const Field* F_;
    int n_;
    std::vector<Vec> basis_;
    std::vector<int> piv_;
};

}  // namespace hkphi
