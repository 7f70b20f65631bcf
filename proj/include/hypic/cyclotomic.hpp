#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hypic/linalg.hpp"
#include "hypic/rational.hpp"

namespace hypic {

/// The field Q(zeta_N) as Q[x] / Phi_N(x), with the power basis 1, x, ..., x^{phi(N)-1}.
class CyclotomicField {
public:
    explicit CyclotomicField(unsigned conductor) : n_(conductor) {
        if (conductor == 0) throw Error(ErrorCode::MalformedInput, "conductor must be positive");
        // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, by exact integer polynomial division.
        std::vector<Integer> num(n_ + 1, Integer(0));
        num[0] = -1;
        num[n_] = 1;
        for (unsigned d = 1; d < n_; ++d) {
            if (n_ % d != 0) continue;
            num = divide(num, CyclotomicField(d).phi_);
        }
        phi_ = std::move(num);
        degree_ = phi_.size() - 1;
        // x^j mod Phi_N for j < N, used to map roots of unity into the basis.
        powers_.resize(n_);
        std::vector<Rational> cur(degree_, Rational(0));
        cur[0] = 1;
        for (unsigned j = 0; j < n_; ++j) {
            powers_[j] = cur;
            cur = times_x(cur);
        }
    }

    unsigned conductor() const { return n_; }
    std::size_t degree() const { return degree_; }
    const std::vector<Integer>& minimal_polynomial() const { return phi_; }

    using Element = std::vector<Rational>;

    Element zero() const { return Element(degree_, Rational(0)); }
    Element one() const { return from_rational(1); }
    Element from_rational(const Rational& q) const {
        Element e = zero();
        e[0] = q;
        return e;
    }
    /// zeta_N^j for any integer j.
    Element root_of_unity(long long j) const {
        long long r = j % static_cast<long long>(n_);
        if (r < 0) r += n_;
        return powers_[static_cast<std::size_t>(r)];
    }

    static bool is_zero(const Element& e) {
        for (const auto& c : e)
            if (c != 0) return false;
        return true;
    }

    Element add(const Element& a, const Element& b) const {
        Element r = a;
        for (std::size_t i = 0; i < degree_; ++i) r[i] += b[i];
        return r;
    }
    Element sub(const Element& a, const Element& b) const {
        Element r = a;
        for (std::size_t i = 0; i < degree_; ++i) r[i] -= b[i];
        return r;
    }
    Element neg(const Element& a) const {
        Element r = a;
        for (auto& c : r) c = -c;
        return r;
    }

    Element mul(const Element& a, const Element& b) const {
        std::vector<Rational> prod(2 * degree_ - 1, Rational(0));
        for (std::size_t i = 0; i < degree_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < degree_; ++j)
                if (b[j] != 0) prod[i + j] += a[i] * b[j];
        }
        return reduce(std::move(prod));
    }

    /// Inverse via the multiplication-by-a matrix; a must be nonzero.
    Element inv(const Element& a) const {
        RMatrix m(degree_, RVector(degree_));
        Element basis = zero();
        for (std::size_t j = 0; j < degree_; ++j) {
            basis.assign(degree_, Rational(0));
            basis[j] = 1;
            Element col = mul(a, basis);
            for (std::size_t i = 0; i < degree_; ++i) m[i][j] = col[i];
        }
        auto x = linalg::solve(m, one(), degree_);
        if (!x) throw Error(ErrorCode::MalformedInput, "inverse of zero in cyclotomic field");
        return *x;
    }

private:
    static std::vector<Integer> divide(const std::vector<Integer>& num, const std::vector<Integer>& den) {
        std::vector<Integer> rem = num;
        const std::size_t dn = den.size() - 1;
        std::vector<Integer> q(num.size() - dn, Integer(0));
        for (std::size_t i = num.size(); i-- > dn;) {
            Integer c = rem[i] / den[dn];  // monic divisor: exact
            q[i - dn] = c;
            for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] -= c * den[j];
        }
        return q;
    }

    std::vector<Rational> times_x(const std::vector<Rational>& e) const {
        std::vector<Rational> r(degree_ + 1, Rational(0));
        for (std::size_t i = 0; i < degree_; ++i) r[i + 1] = e[i];
        return reduce(std::move(r));
    }

    Element reduce(std::vector<Rational> p) const {
        for (std::size_t i = p.size(); i-- > degree_;) {
            if (p[i] == 0) continue;
            Rational c = p[i];
            for (std::size_t j = 0; j <= degree_; ++j) p[i - degree_ + j] -= c * Rational(phi_[j]);
        }
        p.resize(degree_);
        return p;
    }

    unsigned n_;
    std::vector<Integer> phi_;
    std::size_t degree_ = 0;
    std::vector<Element> powers_;
};

}  // namespace hypic
