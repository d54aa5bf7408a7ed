// SPDX-License-Identifier: MIT
// Finite field F_q, q = p^deg, p odd, via log/antilog tables.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkphi {

using Elt = std::uint32_t;

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// Elements are encoded as base-p digit strings of the coefficient vector
// with respect to 1, x, ..., x^{deg-1}; so 0..p-1 are exactly the elements of F_p.
class Field {
public:
    static constexpr int kMaxOrder = 2048;

    Field(int p, int deg = 1) : p_(p), deg_(deg) {
        if (p == 2) throw std::invalid_argument("p = 2 is not supported");
        if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
        if (deg < 1) throw std::invalid_argument("extension degree must be >= 1");
        long long q = 1;
        for (int i = 0; i < deg; ++i) q *= p;
        if (q > kMaxOrder) throw std::invalid_argument("field too large");
        q_ = static_cast<int>(q);
        build_add();
        build_mul();
    }

    int p() const { return p_; }
    int deg() const { return deg_; }
    int q() const { return q_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, long long e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("negative power of zero");
            return e == 0 ? 1 : 0;
        }
        return exp_[mod(log_[a] * mod(e, q_ - 1), q_ - 1)];
    }

    // Integer image in F_p.
    Elt from_int(long long n) const { return static_cast<Elt>(mod(n, p_)); }
    bool in_prime_field(Elt a) const { return a < static_cast<Elt>(p_); }

    Elt generator() const { return exp_[1 % (q_ - 1)]; }
    // g = generator^c with c = (q-1)/(p-1) generates F_p^x.
    Elt fp_generator() const { return exp_[(q_ - 1) / (p_ - 1) % (q_ - 1)]; }

    int log(Elt a) const {
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }
    Elt exp(long long k) const { return exp_[mod(k, q_ - 1)]; }

    // Discrete log of a in F_p^x with respect to fp_generator().
    int fp_log(Elt a) const {
        if (a == 0 || !in_prime_field(a)) throw std::domain_error("not in F_p^x");
        return log_[a] / ((q_ - 1) / (p_ - 1));
    }

    Elt factorial(int n) const {
        Elt r = 1;
        for (int i = 2; i <= n; ++i) r = mul(r, from_int(i));
        return r;
    }

    std::string str(Elt a) const {
        if (deg_ == 1) return std::to_string(a);
        if (a == 0) return "0";
        return "g^" + std::to_string(log_[a]);
    }

    const std::vector<int>& modulus() const { return modulus_; }

private:
    int p_, deg_, q_ = 0;
    std::vector<Elt> add_, neg_, exp_;
    std::vector<int> log_;
    std::vector<int> modulus_;  // monic primitive polynomial, low degree first

    std::vector<int> digits(Elt a) const {
        std::vector<int> v(deg_);
        for (int i = 0; i < deg_; ++i) { v[i] = a % p_; a /= p_; }
        return v;
    }
    Elt encode(const std::vector<int>& v) const {
        Elt a = 0;
        for (int i = deg_ - 1; i >= 0; --i) a = a * p_ + static_cast<Elt>(v[i]);
        return a;
    }

    void build_add() {
        add_.assign(static_cast<size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            auto da = digits(a);
            std::vector<int> n(deg_);
            for (int i = 0; i < deg_; ++i) n[i] = (p_ - da[i]) % p_;
            neg_[a] = encode(n);
            for (int b = 0; b < q_; ++b) {
                auto db = digits(b);
                for (int i = 0; i < deg_; ++i) db[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = encode(db);
            }
        }
    }

    // x * v modulo the monic polynomial f.
    std::vector<int> times_x(const std::vector<int>& v, const std::vector<int>& f) const {
        std::vector<int> r(deg_);
        int top = v[deg_ - 1];
        for (int i = deg_ - 1; i > 0; --i) r[i] = v[i - 1];
        r[0] = 0;
        for (int i = 0; i < deg_; ++i) r[i] = static_cast<int>(mod(r[i] - static_cast<long long>(top) * f[i], p_));
        return r;
    }

    bool try_modulus(const std::vector<int>& f) {
        // f primitive iff powers of x run through all q-1 nonzero classes.
        std::vector<int> cur(deg_, 0);
        cur[0] = 1;
        std::vector<Elt> ex(q_ - 1);
        std::vector<int> lg(q_, -1);
        for (int k = 0; k < q_ - 1; ++k) {
            Elt e = encode(cur);
            if (lg[e] != -1) return false;
            lg[e] = k;
            ex[k] = e;
            cur = times_x(cur, f);
        }
        exp_ = std::move(ex);
        log_ = std::move(lg);
        modulus_ = f;
        modulus_.push_back(1);
        return true;
    }

    void build_mul() {
        if (deg_ == 1) {
            for (int g = 2; g < p_; ++g) {
                std::vector<int> f{static_cast<int>(mod(-g, p_))};
                if (try_modulus(f)) return;
            }
            throw std::logic_error("no primitive root found");
        }
        long long count = 1;
        for (int i = 0; i < deg_; ++i) count *= p_;
        for (long long c = 0; c < count; ++c) {
            std::vector<int> f(deg_);
            long long t = c;
            for (int i = 0; i < deg_; ++i) { f[i] = static_cast<int>(t % p_); t /= p_; }
            if (f[0] == 0) continue;
            if (try_modulus(f)) return;
        }
        throw std::logic_error("no primitive polynomial found");
    }
};

}  // namespace hkphi
