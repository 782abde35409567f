#pragma once

#include <cstddef>
#include <vector>
#include "pictau/exact.hpp"

namespace pictau {

enum class Relation { le, lt, eq };

/// a · x  rel  b
struct Constraint
{
    QVector a;
    Rational b;
    Relation rel = Relation::le;

    bool satisfied_by(const QVector& x) const;
    bool operator==(const Constraint& other) const = default;
};

/**
 * A rational convex polytope that may be missing some of its faces, given by
 * a mix of non-strict, strict and equality constraints. The closure (every
 * strict constraint relaxed) is required to be bounded; the constructor
 * checks this and throws SemanticError otherwise.
 */
class HalfOpenPolytope
{
    public:
        HalfOpenPolytope() = default;
        HalfOpenPolytope(std::size_t dim, std::vector<Constraint> constraints);

        /// [lo, hi) or [lo, hi]^n style boxes, convenient for tests and pipelines.
        static HalfOpenPolytope box(std::size_t dim, const Rational& lo, const Rational& hi,
                                    bool upper_strict);

        std::size_t dim() const { return dim_; }
        const std::vector<Constraint>& constraints() const { return constraints_; }

        bool contains(const QVector& x) const;
        bool is_empty() const;

        /// Same polytope with every strict constraint relaxed.
        HalfOpenPolytope closure() const;
        /// Constraints b scaled by factor (factor >= 0).
        HalfOpenPolytope dilate(const Rational& factor) const;
        /// {x - t : x in P}
        HalfOpenPolytope translate_back(const QVector& t) const;
        /// P ∩ {extra}
        HalfOpenPolytope with(const std::vector<Constraint>& extra) const;
        /// Drops constraints that do not change the point set.
        HalfOpenPolytope without_redundant_constraints() const;

        /// Pullback along x = basis^T c (basis rows span the lattice); the
        /// result lives in R^{basis.rows()}.
        HalfOpenPolytope in_lattice_coordinates(const ZMatrix& basis) const;

        /// Skips the boundedness check; for polytopes derived from bounded ones.
        static HalfOpenPolytope trusted(std::size_t dim, std::vector<Constraint> constraints);

    private:
        std::size_t dim_ = 0;
        std::vector<Constraint> constraints_;
};

/// Vertices of the closure, lexicographically sorted (empty if the closure is empty).
std::vector<QVector> vertices(const HalfOpenPolytope& p);

/// Points of l inside dilation·p, lexicographically sorted.
std::vector<ZVector> lattice_points(const HalfOpenPolytope& p, const Lattice& l, const Integer& dilation);
/// Same count as lattice_points(...).size(), without materialising the points.
Integer count_lattice_points(const HalfOpenPolytope& p, const Lattice& l, const Integer& dilation);

/// Coordinate projection onto `coords` (in that order) by exact Fourier–Motzkin
/// elimination. A combined constraint is strict iff one of its parents is.
HalfOpenPolytope project(const HalfOpenPolytope& p, const std::vector<std::size_t>& coords);

/// Dimension of the affine hull of the closure (-1 if empty).
int affine_dimension(const HalfOpenPolytope& p);

namespace fm {

/// Normalises, de-duplicates and drops trivially true constraints. A
/// violated constant constraint is kept as the canonical `0 <= -1`.
std::vector<Constraint> normalize(std::vector<Constraint> cs);
/// Eliminates variable `var`; the coefficient column stays (as zeros).
std::vector<Constraint> eliminate(const std::vector<Constraint>& cs, std::size_t var);
bool infeasible(const std::vector<Constraint>& cs);

}   // namespace fm

}   // namespace pictau
