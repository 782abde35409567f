#pragma once

#include "pictau/exact.hpp"
#include "pictau/polytope.hpp"
#include "pictau/quasi_polynomial.hpp"

namespace pictau {

/**
 * Quasi-polynomial f with f(N) = #(l ∩ N·p) for every N >= 1.
 *
 * The candidate period is the lcm of the vertex denominators of the closure
 * written in coordinates of l, and the degree bound is the dimension of its
 * affine hull. Each residue class is interpolated from degree+1 exact counts
 * and then checked against two further counts; a mismatch throws
 * InternalError rather than returning a wrong fit.
 */
QuasiPolynomial ehrhart_qp(const HalfOpenPolytope& p, const Lattice& l);

/**
 * F(N) = #[ (1/N)(N·w + lam) ∩ W ∩ q ], the coset count of the torsion
 * reduction: with lam' = lam ∩ W, q' = q ∩ W and any w' ∈ (w + lam) ∩ W,
 * F(N) = #[ lam' ∩ N(q' − w') ].
 *
 * `subspace` lists equations of W (W = kernel). `w` must lie in the rational
 * span of lam (some positive multiple of it is a lattice vector). If the
 * coset misses W entirely, F is identically zero.
 */
QuasiPolynomial coset_count_qp(const HalfOpenPolytope& q, const QMatrix& subspace, const Lattice& lam,
                               const QVector& w);

/// Multiplies by N^r symbolically.
QuasiPolynomial scale_by_torus_rank(const QuasiPolynomial& f, unsigned r);

}   // namespace pictau
