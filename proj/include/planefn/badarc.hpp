#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "planefn/expr.hpp"

namespace planefn {

/// Exact data of the bad arc J = J_1 ∪ J_2 ∪ ... ∪ {0} in any exact field
/// (cpp_rational) or in double.
///
/// Vertices of J_n: z_n = 2^-n, w_n = z_n + 2^-n i, w'_n = w_n - 2^-3n,
/// z'_n = z_n - 2^-3n, followed by z_{n+1}.  The function f equals
/// a + b cos(2^n pi y) on the vertical side [z_n, w_n] and the constant
/// c_{n+1} on the rest of J_n, with c_n = x_n / n, a = (c_n + c_{n+1}) / 2
/// and b = (c_n - c_{n+1}) / 2.
template <class Num>
struct BadArcExact {
    static Num two_pow_neg(int k) {
        Num r = 1;
        for (int i = 0; i < k; ++i) r /= 2;
        return r;
    }
    static Num x(int n) { return two_pow_neg(n); }
    static Num x_prime(int n) { return x(n) - two_pow_neg(3 * n); }
    static Num c(int n) { return x(n) / n; }

    /// f at the real points z_n and z'_n.
    static Num f_at_z(int n) { return c(n); }
    static Num f_at_z_prime(int n) { return c(n + 1); }

    /// |f(z_n) - f(z'_n)| / |z_n - z'_n|.
    static Num quotient(int n) {
        Num d = f_at_z(n) - f_at_z_prime(n);
        if (d < 0) d = -d;
        return d / (x(n) - x_prime(n));
    }

    /// Closed form 2^{2n-1} (n+2) / (n (n+1)).
    static Num formula(int n) {
        Num p = 1;
        for (int i = 0; i < 2 * n - 1; ++i) p *= 2;
        return p * (n + 2) / (Num(n) * (n + 1));
    }
};

using Rational = boost::multiprecision::cpp_rational;

/// The bad-arc function f on the depth-N bad arc as a piecewise-on-path
/// expression (double precision); `derivative()` gives f' along the arc.
FunctionExpr bad_arc_function(int N);

}  // namespace planefn
