#pragma once

// Shared helpers for the unit and acceptance suites: literal parsing,
// seeded generators and brute-force oracles that avoid the
// library's enumeration and elimination code.

#include <cstdint>
#include <random>
#include <string>
#include <vector>
#include "pictau/exact.hpp"
#include "pictau/polytope.hpp"

namespace testing {

using namespace pictau;

inline Rational q(const std::string& s) { return parse_rational(s); }

inline QVector qv(std::initializer_list<const char*> xs)
{
    QVector v;
    for (const char* x : xs)
        v.push_back(parse_rational(x));
    return v;
}

inline ZVector zv(std::initializer_list<long> xs)
{
    ZVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline ZMatrix zm(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<ZVector> r;
    std::size_t cols = 0;
    for (auto row : rows)
    {
        r.emplace_back();
        for (long x : row)
            r.back().emplace_back(x);
        cols = row.size();
    }
    return ZMatrix::from_rows(r, cols);
}

inline QMatrix qm(std::initializer_list<std::initializer_list<const char*>> rows)
{
    std::vector<QVector> r;
    std::size_t cols = 0;
    for (auto row : rows)
    {
        r.emplace_back();
        for (const char* x : row)
            r.back().push_back(parse_rational(x));
        cols = row.size();
    }
    return QMatrix::from_rows(r, cols);
}

class Rng
{
    public:
        explicit Rng(std::uint32_t seed) : gen_(seed) {}
        long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
        bool coin() { return uniform(0, 1) == 1; }
        Rational rational(long max_den, long lo, long hi)
        {
            long d = uniform(1, max_den);
            return Rational(uniform(lo * d, hi * d), d);
        }

    private:
        std::mt19937 gen_;
};

/// Evaluates a·x rel N·b directly, independent of Constraint::satisfied_by.
inline bool oracle_holds(const Constraint& c, const QVector& x, const Integer& n)
{
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += c.a[i] * x[i];
    Rational rhs = c.b * Rational(n);
    switch (c.rel)
    {
        case Relation::le: return s <= rhs;
        case Relation::lt: return s < rhs;
        case Relation::eq: return s == rhs;
    }
    return false;
}

/// Calls f on every integer point of the box [lo, hi] (inclusive, per coordinate).
template <typename F>
void for_each_box_point(const std::vector<long>& lo, const std::vector<long>& hi, F&& f)
{
    const std::size_t n = lo.size();
    std::vector<long> x(lo);
    if (n == 0)
    {
        f(x);
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return;
    for (;;)
    {
        f(x);
        std::size_t i = 0;
        while (i < n && x[i] == hi[i])
        {
            x[i] = lo[i];
            ++i;
        }
        if (i == n)
            return;
        ++x[i];
    }
}

/// Brute-force #(Z^n ∩ N·P) over an explicitly supplied bounding box of P.
inline long brute_force_count(const std::vector<Constraint>& cs, const std::vector<Rational>& box_lo,
                              const std::vector<Rational>& box_hi, long n)
{
    std::vector<long> lo, hi;
    for (std::size_t i = 0; i < box_lo.size(); ++i)
    {
        lo.push_back(ceil(box_lo[i] * n).convert_to<long>());
        hi.push_back(floor(box_hi[i] * n).convert_to<long>());
    }
    long count = 0;
    for_each_box_point(lo, hi, [&](const std::vector<long>& x) {
        QVector p;
        for (long v : x)
            p.emplace_back(v);
        for (const Constraint& c : cs)
            if (!oracle_holds(c, p, Integer(n)))
                return;
        ++count;
    });
    return count;
}

}   // namespace testing
