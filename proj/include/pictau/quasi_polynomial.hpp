#pragma once

#include <cstddef>
#include <vector>
#include "pictau/exact.hpp"

namespace pictau {

/**
 * f(N) = N^r * f_i(N) for N ≡ i (mod period), 1 <= i <= period.
 *
 * polys[i-1] holds the coefficients of f_i, lowest degree first. r is the
 * symbolic exponent contributed by torus factors; it is kept separate from
 * the polynomials so reports can show it.
 */
class QuasiPolynomial
{
    public:
        QuasiPolynomial();   // identically zero, period 1
        QuasiPolynomial(Integer period, std::vector<QVector> polys, unsigned torus_exponent = 0);

        static QuasiPolynomial zero() { return {}; }
        static QuasiPolynomial constant(const Rational& c);

        const Integer& period() const { return period_; }
        const std::vector<QVector>& polys() const { return polys_; }
        unsigned torus_exponent() const { return torus_exponent_; }

        /// Component polynomial used for N (N >= 1).
        const QVector& component(const Integer& n) const;
        Rational eval(const Integer& n) const;
        /// eval(n), required to be an integer (throws InternalError otherwise).
        Integer eval_integer(const Integer& n) const;
        /// Maximum degree over components, not counting the torus exponent; -1 for zero.
        int degree() const;

        QuasiPolynomial operator+(const QuasiPolynomial& other) const;
        QuasiPolynomial& operator+=(const QuasiPolynomial& other);
        QuasiPolynomial scaled(const Rational& c) const;
        /// Folds N^r into the coefficient lists; eval is unchanged.
        QuasiPolynomial expanded() const;

        bool operator==(const QuasiPolynomial& other) const = default;

    private:
        Integer period_;
        std::vector<QVector> polys_;
        unsigned torus_exponent_ = 0;
};

Rational eval_polynomial(const QVector& coeffs, const Rational& x);

/// Coefficients (lowest degree first) of the unique polynomial of degree
/// < xs.size() through the given points.
QVector interpolate(const QVector& xs, const QVector& ys);

}   // namespace pictau
