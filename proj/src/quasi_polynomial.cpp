#include "pictau/quasi_polynomial.hpp"

#include <algorithm>
#include "pictau/errors.hpp"

namespace pictau {

namespace {

void trim(QVector& c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

std::size_t index_for(const Integer& n, const Integer& period)
{
    // N ≡ i (mod M) with 1 <= i <= M is stored at i - 1.
    Integer r = (n - 1) % period;
    if (r < 0)
        r += period;
    return static_cast<std::size_t>(r.convert_to<unsigned long long>());
}

}   // namespace

QuasiPolynomial::QuasiPolynomial() : period_(1), polys_(1) {}

QuasiPolynomial::QuasiPolynomial(Integer period, std::vector<QVector> polys, unsigned torus_exponent)
    : period_(std::move(period)), polys_(std::move(polys)), torus_exponent_(torus_exponent)
{
    if (period_ < 1)
        throw SemanticError("quasi-polynomial period must be positive");
    if (Integer(polys_.size()) != period_)
        throw SemanticError("quasi-polynomial needs exactly one polynomial per residue class");
    for (QVector& p : polys_)
        trim(p);
}

QuasiPolynomial QuasiPolynomial::constant(const Rational& c) { return QuasiPolynomial(1, {QVector{c}}); }

const QVector& QuasiPolynomial::component(const Integer& n) const { return polys_[index_for(n, period_)]; }

Rational eval_polynomial(const QVector& coeffs, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * x + coeffs[i];
    return acc;
}

Rational QuasiPolynomial::eval(const Integer& n) const
{
    Rational v = eval_polynomial(component(n), Rational(n));
    for (unsigned k = 0; k < torus_exponent_; ++k)
        v *= Rational(n);
    return v;
}

Integer QuasiPolynomial::eval_integer(const Integer& n) const
{
    Rational v = eval(n);
    if (denominator(v) != 1)
        throw InternalError("quasi-polynomial takes non-integral value " + to_string(v) + " at N = " + to_string(n));
    return numerator(v);
}

int QuasiPolynomial::degree() const
{
    int d = -1;
    for (const QVector& p : polys_)
        d = std::max(d, static_cast<int>(p.size()) - 1);
    return d;
}

QuasiPolynomial QuasiPolynomial::expanded() const
{
    std::vector<QVector> polys = polys_;
    for (QVector& p : polys)
        if (!p.empty())
            p.insert(p.begin(), torus_exponent_, Rational(0));
    return QuasiPolynomial(period_, std::move(polys), 0);
}

QuasiPolynomial QuasiPolynomial::operator+(const QuasiPolynomial& other) const
{
    if (degree() < 0)
        return other;
    if (other.degree() < 0)
        return *this;
    // Keep the common part of the symbolic exponent, fold the rest in.
    const unsigned r = std::min(torus_exponent_, other.torus_exponent_);
    auto shifted = [r](const QuasiPolynomial& f) {
        std::vector<QVector> polys = f.polys_;
        for (QVector& p : polys)
            if (!p.empty())
                p.insert(p.begin(), f.torus_exponent_ - r, Rational(0));
        return polys;
    };
    std::vector<QVector> a = shifted(*this), b = shifted(other);
    Integer period = lcm(period_, other.period_);
    const auto m = static_cast<std::size_t>(period.convert_to<unsigned long long>());
    std::vector<QVector> polys(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        const QVector& pa = a[i % a.size()];
        const QVector& pb = b[i % b.size()];
        QVector sum(std::max(pa.size(), pb.size()));
        for (std::size_t k = 0; k < pa.size(); ++k)
            sum[k] += pa[k];
        for (std::size_t k = 0; k < pb.size(); ++k)
            sum[k] += pb[k];
        polys[i] = std::move(sum);
    }
    return QuasiPolynomial(period, std::move(polys), r);
}

QuasiPolynomial& QuasiPolynomial::operator+=(const QuasiPolynomial& other)
{
    *this = *this + other;
    return *this;
}

QuasiPolynomial QuasiPolynomial::scaled(const Rational& c) const
{
    std::vector<QVector> polys = polys_;
    for (QVector& p : polys)
        for (Rational& x : p)
            x *= c;
    return QuasiPolynomial(period_, std::move(polys), torus_exponent_);
}

QVector interpolate(const QVector& xs, const QVector& ys)
{
    const std::size_t n = xs.size();
    QMatrix vandermonde(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        Rational p = 1;
        for (std::size_t j = 0; j < n; ++j)
        {
            vandermonde(i, j) = p;
            p *= xs[i];
        }
    }
    auto c = solve_unique(vandermonde, ys);
    if (!c)
        throw InternalError("interpolation nodes are not distinct");
    trim(*c);
    return *c;
}

}   // namespace pictau
