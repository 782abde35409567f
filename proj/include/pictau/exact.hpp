#pragma once

/**
 * Exact arithmetic substrate: GMP-backed integers and rationals, dense
 * integer/rational matrices, Hermite and Smith normal forms, and sublattices
 * of Z^n stored canonically in Hermite normal form.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <boost/multiprecision/gmp.hpp>

namespace pictau {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using ZVector = std::vector<Integer>;
using QVector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

/// Floor division with the divisor required to be nonzero.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
/// Fractional part, always in [0, 1).
Rational frac(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Parses "p", "-p", "p/q"; throws ParseError on anything else or q = 0.
Rational parse_rational(const std::string& text);
/// "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

QVector to_rational(const ZVector& v);
/// Common denominator of all entries (1 for the empty vector).
Integer common_denominator(const QVector& v);
bool is_integral(const QVector& v);
/// Requires is_integral(v).
ZVector to_integer(const QVector& v);

Rational dot(const QVector& a, const QVector& b);

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

template <typename T>
class Matrix
{
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

        static Matrix identity(std::size_t n)
        {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1;
            return m;
        }

        /// Rows given explicitly; all rows must have length `cols`.
        static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols)
        {
            Matrix m(rows.size(), cols);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) = rows[i].at(j);
            return m;
        }

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }

        T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        std::vector<T> row(std::size_t i) const
        {
            return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
        }

        std::vector<T> col(std::size_t j) const
        {
            std::vector<T> c(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                c[i] = (*this)(i, j);
            return c;
        }

        Matrix transpose() const
        {
            Matrix t(cols_, rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        Matrix operator*(const Matrix& other) const
        {
            Matrix out(rows_, other.cols_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t k = 0; k < cols_; ++k)
                {
                    const T& a = (*this)(i, k);
                    if (a == 0)
                        continue;
                    for (std::size_t j = 0; j < other.cols_; ++j)
                        out(i, j) += a * other(k, j);
                }
            return out;
        }

        std::vector<T> operator*(const std::vector<T>& v) const
        {
            std::vector<T> out(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    out[i] += (*this)(i, j) * v[j];
            return out;
        }

        bool is_zero() const
        {
            for (const T& x : data_)
                if (x != 0)
                    return false;
            return true;
        }

        bool operator==(const Matrix& other) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
};

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;

QMatrix to_rational(const ZMatrix& m);
/// Multiplies each row by the least common denominator of its entries.
/// The row space (and hence the kernel) is unchanged.
ZMatrix clear_row_denominators(const QMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const ZMatrix& m);
std::size_t rank(const QMatrix& m);

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

struct HermiteForm
{
    ZMatrix h;   ///< row Hermite normal form
    ZMatrix u;   ///< unimodular, u * m == h
};

/// Row-style HNF: pivots strictly positive and strictly increasing in column,
/// entries above a pivot reduced into [0, pivot), zero rows last.
HermiteForm hnf(const ZMatrix& m);

struct SmithForm
{
    ZMatrix d;   ///< diagonal, d_1 | d_2 | ..., nonnegative
    ZMatrix u;   ///< unimodular
    ZMatrix v;   ///< unimodular, u * m * v == d
};

SmithForm snf(const ZMatrix& m);

/// Nonzero diagonal entries of the Smith form, in divisibility order.
ZVector invariant_factors(const ZMatrix& m);

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/**
 * A sublattice of Z^n. The basis is the nonzero part of the row HNF of any
 * generating set, so two lattices are equal iff their bases are equal.
 */
class Lattice
{
    public:
        Lattice() = default;
        Lattice(std::size_t ambient_dim, const std::vector<ZVector>& generators);

        static Lattice full(std::size_t n);
        static Lattice zero(std::size_t n);

        std::size_t ambient_dim() const { return ambient_dim_; }
        std::size_t rank() const { return basis_.rows(); }
        /// Basis vectors as rows (rank x ambient_dim).
        const ZMatrix& basis() const { return basis_; }
        bool is_full_standard() const;

        bool contains(const ZVector& v) const;
        /// Rational span membership: some positive multiple of v lies in the lattice.
        bool spans(const QVector& v) const;

        bool operator==(const Lattice& other) const = default;

    private:
        std::size_t ambient_dim_ = 0;
        ZMatrix basis_;
};

/// Saturated integer kernel {v in Z^n : m v = 0}.
Lattice kernel_lattice(const QMatrix& m);

/// l ∩ W where W = {x : equations * x = 0}.
Lattice lattice_intersect_subspace(const Lattice& l, const QMatrix& equations);

/// One rational solution of a x = b (free variables set to zero), or nullopt.
std::optional<QVector> solve_affine(const QMatrix& a, const QVector& b);

/// The unique solution of a x = b, or nullopt when inconsistent or underdetermined.
std::optional<QVector> solve_unique(const QMatrix& a, const QVector& b);

/// One integer solution of a x = b, or nullopt when none exists.
std::optional<ZVector> solve_integer(const QMatrix& a, const QVector& b);

}   // namespace pictau
