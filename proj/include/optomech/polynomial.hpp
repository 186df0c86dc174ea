// polynomial.hpp: dense real polynomials and real-root isolation on an interval.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace optomech {

/// Real polynomial, coefficients in ascending order of power.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }
    Polynomial(std::initializer_list<double> ascending) : c_(ascending) { trim(); }

    const std::vector<double>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Σ|c_k||x|^k, the natural scale of the rounding error when evaluating at x.
    double magnitude(double x) const {
        double acc = 0.0;
        const double ax = std::abs(x);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coefficient(k) + b.coefficient(k);
        return Polynomial(std::move(out));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

    friend Polynomial operator*(double s, const Polynomial& a) {
        std::vector<double> out = a.c_;
        for (double& v : out) v *= s;
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

struct Root {
    double value = 0.0;
    int multiplicity = 1;
};

namespace detail {

inline double bisect(const Polynomial& p, double a, double b, double fa) {
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = p(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// Real roots of `p` in [lo, hi], ascending. Roots are isolated between consecutive critical
/// points (found recursively from the derivative) and refined by bisection. A critical point
/// where |p| is within `rel_tol` of its evaluation scale counts as a tangential root of
/// multiplicity one more than its multiplicity as a root of p'.
inline std::vector<Root> real_roots(const Polynomial& p, double lo, double hi, double rel_tol = 1e-10) {
    if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
    std::vector<Root> roots;
    if (p.degree() == 0) return roots;
    if (p.degree() == 1) {
        const double x = -p.coefficient(0) / p.coefficient(1);
        if (x >= lo && x <= hi) roots.push_back({x, 1});
        return roots;
    }

    const std::vector<Root> crit = real_roots(p.derivative(), lo, hi, rel_tol);
    const double merge_gap = 1e-9 * (hi - lo);

    // tangential roots first; they take precedence over nearby sign changes caused by rounding
    std::vector<Root> tangential;
    std::vector<double> knots{lo};
    std::vector<bool> knot_is_root{false};
    for (const Root& c : crit) {
        const bool t = std::abs(p(c.value)) <= rel_tol * p.magnitude(c.value);
        if (t) tangential.push_back({c.value, c.multiplicity + 1});
        knots.push_back(c.value);
        knot_is_root.push_back(t);
    }
    knots.push_back(hi);
    knot_is_root.push_back(false);

    auto near_tangential = [&](double x) {
        return std::any_of(tangential.begin(), tangential.end(),
                           [&](const Root& r) { return std::abs(r.value - x) <= merge_gap; });
    };

    // p is monotone between neighbouring critical points, so an interval ending on a
    // tangential root holds no other root
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        if (knot_is_root[k] || knot_is_root[k + 1]) continue;
        const double a = knots[k];
        const double b = knots[k + 1];
        const double fa = p(a);
        const double fb = p(b);
        double x;
        if (fa == 0.0) {
            x = a;
        } else if (fb == 0.0 && k + 2 == knots.size()) {
            x = b;
        } else if ((fa < 0.0) != (fb < 0.0)) {
            x = detail::bisect(p, a, b, fa);
        } else {
            continue;
        }
        if (!near_tangential(x)) roots.push_back({x, 1});
    }
    roots.insert(roots.end(), tangential.begin(), tangential.end());
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.value < b.value; });

    std::vector<Root> merged;
    for (const Root& r : roots) {
        if (!merged.empty() && std::abs(r.value - merged.back().value) <= merge_gap)
            merged.back().multiplicity = std::max(merged.back().multiplicity, r.multiplicity);
        else
            merged.push_back(r);
    }
    return merged;
}

}  // namespace optomech
