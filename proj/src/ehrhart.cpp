#include "pictau/ehrhart.hpp"

#include "pictau/errors.hpp"

namespace pictau {

QuasiPolynomial ehrhart_qp(const HalfOpenPolytope& p, const Lattice& l)
{
    if (l.ambient_dim() != p.dim())
        throw SemanticError("lattice and polytope live in different dimensions");
    const HalfOpenPolytope local = l.is_full_standard() ? p : p.in_lattice_coordinates(l.basis());
    const Lattice standard = Lattice::full(local.dim());

    std::vector<QVector> vs = vertices(local);
    if (vs.empty() || local.is_empty())
        return QuasiPolynomial::zero();

    Integer period = 1;
    for (const QVector& v : vs)
        period = lcm(period, common_denominator(v));
    const int degree = affine_dimension(local);

    const auto m = static_cast<std::size_t>(period.convert_to<unsigned long long>());
    std::vector<QVector> polys(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        const Integer residue = Integer(i + 1);
        QVector xs, ys;
        for (int k = 0; k <= degree; ++k)
        {
            Integer n = residue + Integer(k) * period;
            xs.emplace_back(n);
            ys.emplace_back(count_lattice_points(local, standard, n));
        }
        QVector coeffs = interpolate(xs, ys);
        for (int k = degree + 1; k <= degree + 2; ++k)
        {
            Integer n = residue + Integer(k) * period;
            Integer expected = count_lattice_points(local, standard, n);
            if (eval_polynomial(coeffs, Rational(n)) != Rational(expected))
                throw InternalError("Ehrhart fit disagrees with exact count at N = " + to_string(n));
        }
        polys[i] = std::move(coeffs);
    }
    return QuasiPolynomial(period, std::move(polys));
}

QuasiPolynomial coset_count_qp(const HalfOpenPolytope& q, const QMatrix& subspace, const Lattice& lam,
                               const QVector& w)
{
    const std::size_t n = q.dim();
    if (lam.ambient_dim() != n || w.size() != n || (subspace.rows() > 0 && subspace.cols() != n))
        throw SemanticError("coset count: inconsistent dimensions");
    if (!lam.spans(w))
        throw SemanticError("coset count: no multiple of the offset lies in the lattice");

    // w' = w + basis^T c with subspace·w' = 0.
    const QMatrix basis_t = to_rational(lam.basis()).transpose();
    QVector w_prime = w;
    if (subspace.rows() > 0)
    {
        QVector rhs = subspace * w;
        for (Rational& x : rhs)
            x = -x;
        auto c = solve_integer(subspace * basis_t, rhs);
        if (!c)
            return QuasiPolynomial::zero();
        QVector shift = basis_t * to_rational(*c);
        for (std::size_t i = 0; i < n; ++i)
            w_prime[i] += shift[i];
    }

    const Lattice lam_prime = lattice_intersect_subspace(lam, subspace);
    std::vector<Constraint> in_w;
    for (std::size_t r = 0; r < subspace.rows(); ++r)
        in_w.push_back({subspace.row(r), Rational(0), Relation::eq});
    const HalfOpenPolytope q_prime = q.with(in_w);
    return ehrhart_qp(q_prime.translate_back(w_prime), lam_prime);
}

QuasiPolynomial scale_by_torus_rank(const QuasiPolynomial& f, unsigned r)
{
    return QuasiPolynomial(f.period(), f.polys(), f.torus_exponent() + r);
}

}   // namespace pictau
