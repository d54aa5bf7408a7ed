// SPDX-License-Identifier: MIT
// Truncated power series k[[t]]/(t^N) with Frobenius phi^r, its left inverse
// psi^r and the Gamma action t -> (1+t)^a - 1.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hkphi/field.hpp"

namespace hkphi {

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Smallest e with p^e >= n.
inline int ceil_log(long long n, int p) {
    int e = 0;
    long long v = 1;
    while (v < n) { v *= p; ++e; }
    return e;
}

// Teichmueller representative of x in (Z/p^e)^x.
inline long long teichmuller(long long x, int p, int e) {
    long long m = ipow(p, e);
    long long r = mod(x, m);
    for (int i = 0; i < e; ++i) {
        long long acc = 1;
        for (int j = 0; j < p; ++j) acc = static_cast<long long>((__int128)acc * r % m);
        r = acc;
    }
    return r;
}

struct Series {
    const Field* F = nullptr;
    std::vector<Elt> c;  // c.size() == N
    int N = 0;

    Series() = default;
    Series(const Field& f, int prec) : F(&f), c(static_cast<size_t>(prec), 0), N(prec) {}

    static Series constant(const Field& f, Elt a, int prec) {
        Series s(f, prec);
        if (prec > 0) s.c[0] = a;
        return s;
    }
    static Series monomial(const Field& f, int k, Elt a, int prec) {
        Series s(f, prec);
        if (k < prec) s.c[k] = a;
        return s;
    }
    // (1+t)^a with a >= 0.
    static Series one_plus_t_pow(const Field& f, long long a, int prec) {
        Series r = constant(f, 1, prec);
        long long pk = 1;
        int p = f.p();
        while (a > 0 && pk < prec) {
            int digit = static_cast<int>(a % p);
            Series x = constant(f, 1, prec);
            x = x + monomial(f, static_cast<int>(pk), 1, prec);
            for (int i = 0; i < digit; ++i) r = r * x;
            a /= p;
            pk *= p;
        }
        return r;
    }

    Elt operator[](int i) const { return c[i]; }

    int valuation() const {
        for (int i = 0; i < N; ++i)
            if (c[i] != 0) return i;
        return N;
    }
    bool is_zero() const { return valuation() == N; }

    Series truncate(int prec) const {
        Series r(*F, std::min(prec, N));
        std::copy(c.begin(), c.begin() + r.N, r.c.begin());
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        Series r(*a.F, std::min(a.N, b.N));
        for (int i = 0; i < r.N; ++i) r.c[i] = a.F->add(a.c[i], b.c[i]);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series r(*a.F, std::min(a.N, b.N));
        for (int i = 0; i < r.N; ++i) r.c[i] = a.F->sub(a.c[i], b.c[i]);
        return r;
    }
    Series operator-() const {
        Series r(*F, N);
        for (int i = 0; i < N; ++i) r.c[i] = F->neg(c[i]);
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        // a = t^va * u etc.: known precision is min(a.N + vb, b.N + va).
        int va = a.valuation(), vb = b.valuation();
        int prec = std::min(a.N + vb, b.N + va);
        prec = std::max(prec, std::min(a.N, b.N));
        Series r(*a.F, prec);
        for (int i = va; i < a.N; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = vb; j < b.N && i + j < prec; ++j)
                if (b.c[j] != 0) r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
        }
        return r;
    }
    Series scale(Elt s) const {
        Series r(*F, N);
        for (int i = 0; i < N; ++i) r.c[i] = F->mul(s, c[i]);
        return r;
    }
    // t^k * this.
    Series shift(int k) const {
        Series r(*F, N + k);
        for (int i = 0; i < N; ++i) r.c[i + k] = c[i];
        return r;
    }
    // this / t^k, requires valuation >= k.
    Series unshift(int k) const {
        if (valuation() < k) throw std::domain_error("series not divisible by t^k");
        Series r(*F, N - k);
        for (int i = 0; i < r.N; ++i) r.c[i] = c[i + k];
        return r;
    }

    Series inverse() const {
        if (N == 0 || c[0] == 0) throw std::domain_error("series is not a unit");
        Series r(*F, N);
        Elt i0 = F->inv(c[0]);
        r.c[0] = i0;
        for (int n = 1; n < N; ++n) {
            Elt acc = 0;
            for (int j = 1; j <= n; ++j) acc = F->add(acc, F->mul(c[j], r.c[n - j]));
            r.c[n] = F->neg(F->mul(acc, i0));
        }
        return r;
    }

    // f(t^{p^r}).
    Series phi(int r = 1) const {
        long long step = ipow(F->p(), r);
        Series out(*F, N);
        for (long long j = 0; j * step < N; ++j) out.c[j * step] = c[j];
        return out;
    }

    // f(t^{p^r}) with the full known precision N p^r.
    Series phi_expand(int r = 1) const {
        long long step = ipow(F->p(), r);
        Series out(*F, static_cast<int>(N * step));
        for (int j = 0; j < N; ++j) out.c[j * step] = c[j];
        return out;
    }

    // psi^r(t^{n_0 + ... + n_{r-1} p^{r-1} + n_r p^r}) = (-1)^{n_0+...+n_{r-1}} t^{n_r}.
    // Output coefficient j needs inputs up to (j+1)p^r - 1, so precision floor(N/p^r).
    Series psi(int r = 1) const {
        long long step = ipow(F->p(), r);
        Series out(*F, static_cast<int>(N / step));
        int p = F->p();
        for (int n = 0; n < out.N * step; ++n) {
            if (c[n] == 0) continue;
            int s = 0, m = n;
            for (int i = 0; i < r; ++i) { s += m % p; m /= p; }
            Elt v = (s % 2) ? F->neg(c[n]) : c[n];
            out.c[m] = F->add(out.c[m], v);
        }
        return out;
    }

    // f((1+t)^a - 1).
    Series gamma(long long a) const {
        int p = F->p();
        if (a % p == 0) throw std::invalid_argument("gamma(a) needs a prime to p");
        int e = ceil_log(std::max(N, 1), p) + 1;
        long long m = ipow(p, e);
        Series g = one_plus_t_pow(*F, mod(a, m), N) - constant(*F, 1, N);
        Series out(*F, N);
        for (int k = N - 1; k >= 0; --k) {
            out = out * g;
            out.c[0] = F->add(out.c[0], c[k]);
        }
        return out.truncate(N);
    }

    // Agreement on the common precision.
    friend bool agree(const Series& a, const Series& b) {
        int n = std::min(a.N, b.N);
        for (int i = 0; i < n; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator==(const Series& a, const Series& b) { return a.N == b.N && a.c == b.c; }
};

}  // namespace hkphi
