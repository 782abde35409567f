#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>
#include "pictau/geometry.hpp"
#include "pictau/parabolic.hpp"
#include "pictau/quasi_polynomial.hpp"

namespace pictau {

/**
 * A boundary D ⊂ X together with its log resolution and the cohomology
 * oracle on the resolution. Built from a line arrangement (X = P²) or a
 * point configuration (X = P¹).
 */
class LogPair
{
    public:
        explicit LogPair(const LineArrangement& a);
        explicit LogPair(const CurveModel& c);

        int dimension() const { return dimension_; }
        const DivisorSetPtr& divisors() const { return resolution_.source; }
        const ResolutionData& resolution() const { return resolution_; }
        const std::optional<BlowupSurface>& surface() const { return surface_; }

        /// Canonical decomposition refined along the resolution.
        const BoundaryDecomposition& decomposition() const { return decomposition_; }

        /// Class of ω_Z ⊗ μ*L ⊗ O(−⌊e(α)⌋·E) on the resolution.
        ZVector adjoint_class(const BoundaryRealization& x) const;
        /// h^q(X, ω_X ⊗ L ⊗ J(α·D)), evaluated on the resolution.
        Integer hq(const BoundaryRealization& x, int q) const;
        Integer hq_of_class(const ZVector& cls, int q) const;

    private:
        int dimension_ = 0;
        std::optional<BlowupSurface> surface_;
        ResolutionData resolution_;
        BoundaryDecomposition decomposition_;

        struct Cache
        {
            std::mutex lock;
            std::map<std::pair<ZVector, int>, Integer> values;
        };
        std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct TorusDescriptor
{
    unsigned rank = 0;
    ZVector label;

    bool operator==(const TorusDescriptor&) const = default;
};

struct StratumRecord
{
    std::size_t piece = 0;
    TorusDescriptor torus;

    bool operator==(const StratumRecord&) const = default;
};

enum class RepresentativeChoice { barycenter, alternate };

struct StrataTable
{
    int q_max = 0;
    std::vector<BoundaryPiece> pieces;
    /// piece id -> (h^0, ..., h^q_max) at its representative
    std::map<std::size_t, std::vector<Integer>> hq_by_piece;
    /// (q, i) -> members of V^q_i; only nonempty strata are present
    std::map<std::pair<int, int>, std::vector<StratumRecord>> entries;

    /// Piece ids of V^q_i (empty when the stratum is empty).
    std::vector<std::size_t> members(int q, int i) const;
    /// Largest i with V^q_i nonempty (0 if none).
    int i_max(int q) const;
};

/// V^q_i for 0 <= q <= q_max (q_max < 0 means dim X).
StrataTable compute_strata(const LogPair& pair, int q_max = -1,
                           RepresentativeChoice choice = RepresentativeChoice::barycenter);

/// True iff ⌊e(α)⌋ agrees at the barycenter and at its midpoints towards each vertex.
bool floor_constancy_check(const HalfOpenPolytope& p, const ResolutionData& r);

/// #{α ∈ (1/n)Z^S in V^q_i} times n^r for records with torus rank r.
Integer count_stratum_torsion(const StrataTable& t, int q, int i, const Integer& n);
/// Quasi-polynomial N ↦ #V^q_i[N].
QuasiPolynomial stratum_torsion_qp(const StrataTable& t, const DivisorSet& d, int q, int i);
/// Quasi-polynomial N ↦ #(P ∩ (1/N)Z^S) for one piece with base class p.
QuasiPolynomial piece_torsion_qp(const BoundaryPiece& piece, const DivisorSet& d);

}   // namespace pictau
