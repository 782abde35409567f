#pragma once

#include <cstddef>
#include <vector>
#include "pictau/geometry.hpp"
#include "pictau/parabolic.hpp"
#include "pictau/quasi_polynomial.hpp"
#include "pictau/strata.hpp"

namespace pictau {

/// Finite subgroup of Pic^τ(X,D) generated by torsion realizations.
class CharacterSubgroup
{
    public:
        /// Closes the generators under the group law; identity first, then BFS order.
        CharacterSubgroup(DivisorSetPtr divisors, std::vector<BoundaryRealization> generators);

        const DivisorSetPtr& divisors() const { return divisors_; }
        const std::vector<BoundaryRealization>& generators() const { return generators_; }
        const std::vector<BoundaryRealization>& elements() const { return elements_; }
        std::size_t order() const { return elements_.size(); }
        /// Invariant factors (all > 1) of the group.
        const ZVector& invariant_factors() const { return invariant_factors_; }
        /// Position of x in elements(), or order() if absent.
        std::size_t index_of(const BoundaryRealization& x) const;

    private:
        DivisorSetPtr divisors_;
        std::vector<BoundaryRealization> generators_;
        std::vector<BoundaryRealization> elements_;
        ZVector invariant_factors_;
};

struct BuildingData
{
    ZVector inertia;                             ///< m_i per component
    std::vector<ZVector> indices;                ///< ι_{χ,i} = m_i α_{χ,i}, per character
    std::vector<std::vector<ZVector>> epsilon;   ///< ε_{χ,χ'} ∈ {0,1}^S
};

/// Inertia orders, indices and ε table; verifies L_χ + L_χ' = L_χχ' + ε·D for every pair.
BuildingData building_data(const CharacterSubgroup& g);

/// Classes −L_χ on X, one per character.
std::vector<ZVector> pushforward_decomposition(const CharacterSubgroup& g);
/// Classes −μ*L_χ + ⌊e(α_χ)⌋·E on the resolution.
std::vector<ZVector> pushforward_decomposition(const CharacterSubgroup& g, const ResolutionData& r);

/// h^{q,0} of the cover: Σ_χ h^{n−q}(X, ω_X ⊗ L_χ ⊗ J(α_χ·D)).
Integer cover_hodge(const LogPair& pair, const CharacterSubgroup& g, int q);

/// h^q(N) of the congruence cover, summed over every N-torsion point.
Integer congruence_hodge(const LogPair& pair, int q, const Integer& n);
/// h^q(N) = Σ_{i≥1} #V^{n−q}_i[N] as a quasi-polynomial.
QuasiPolynomial congruence_hodge_qp(const LogPair& pair, int q);
QuasiPolynomial congruence_hodge_qp(const LogPair& pair, const StrataTable& t, int q);

/// Genus of the cover of P¹ from 2g − 2 = −2|G| + Σ_p (|G|/m_p)(m_p − 1).
Integer riemann_hurwitz_genus(const CurveModel& c, const CharacterSubgroup& g);

}   // namespace pictau
