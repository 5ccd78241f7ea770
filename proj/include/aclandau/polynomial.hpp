#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <utility>

namespace aclandau {

/// Bivariate polynomial sum c_ij x^i y^j stored as a sparse coefficient table.
///
/// Differentiation is exact on the coefficients, so curls, divergences and
/// Laplacians of field configurations carry no discretization error.
class Polynomial2 {
public:
    using Exponents = std::pair<int, int>;
    using Table = std::map<Exponents, double>;

    Polynomial2() = default;

    Polynomial2(std::initializer_list<std::pair<const Exponents, double>> terms) {
        for (const auto& [e, c] : terms) add_term(e.first, e.second, c);
    }

    static Polynomial2 constant(double c) { return Polynomial2{{{0, 0}, c}}; }
    static Polynomial2 x() { return Polynomial2{{{1, 0}, 1.0}}; }
    static Polynomial2 y() { return Polynomial2{{{0, 1}, 1.0}}; }

    void add_term(int i, int j, double c) {
        if (c == 0.0) return;
        auto& slot = terms_[{i, j}];
        slot += c;
        if (slot == 0.0) terms_.erase({i, j});
    }

    double coefficient(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? 0.0 : it->second;
    }

    const Table& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }

    double operator()(double x, double y) const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) s += c * ipow(x, e.first) * ipow(y, e.second);
        return s;
    }

    Polynomial2 dx() const {
        Polynomial2 r;
        for (const auto& [e, c] : terms_)
            if (e.first > 0) r.add_term(e.first - 1, e.second, c * e.first);
        return r;
    }

    Polynomial2 dy() const {
        Polynomial2 r;
        for (const auto& [e, c] : terms_)
            if (e.second > 0) r.add_term(e.first, e.second - 1, c * e.second);
        return r;
    }

    Polynomial2 laplacian() const { return dx().dx() + dy().dy(); }

    /// Largest |coefficient|; 0 for the zero polynomial.
    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    bool is_zero(double tol = 0.0) const { return max_abs_coefficient() <= tol; }

    Polynomial2& operator+=(const Polynomial2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    Polynomial2& operator-=(const Polynomial2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    Polynomial2& operator*=(double s) {
        if (s == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
    friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a -= b; }
    friend Polynomial2 operator-(Polynomial2 a) { return a *= -1.0; }
    friend Polynomial2 operator*(double s, Polynomial2 a) { return a *= s; }
    friend Polynomial2 operator*(Polynomial2 a, double s) { return a *= s; }

    friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
        Polynomial2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }

    friend bool operator==(const Polynomial2& a, const Polynomial2& b) { return a.terms_ == b.terms_; }

private:
    static double ipow(double v, int n) {
        double r = 1.0;
        for (int k = 0; k < n; ++k) r *= v;
        return r;
    }

    Table terms_;
};

}  // namespace aclandau
