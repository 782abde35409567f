#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>
#include "pictau/exact.hpp"
#include "pictau/polytope.hpp"

namespace pictau {

/// What we know about X: its Néron–Severi lattice, canonical class and Pic^τ(X).
struct VarietyModel
{
    std::string name;
    int dimension = 0;
    ZMatrix intersection_form;   ///< ns_rank x ns_rank, symmetric
    ZVector canonical_class;
    ZVector pic_tau_torsion;     ///< invariant factors of the finite part of Pic^τ(X)
    unsigned pic0_rank = 0;      ///< symbolic rank of the continuous part

    std::size_t ns_rank() const { return canonical_class.size(); }

    static VarietyModel p1();
    static VarietyModel p2();
    /// P² blown up at r distinct points, NS basis H, E_1..E_r.
    static VarietyModel p2_blown_up(std::size_t r);

    bool operator==(const VarietyModel&) const = default;
};

/// Components D_i of the boundary, by NS class.
class DivisorSet
{
    public:
        DivisorSet(VarietyModel variety, std::vector<ZVector> classes);

        const VarietyModel& variety() const { return variety_; }
        std::size_t size() const { return classes_.size(); }
        const std::vector<ZVector>& classes() const { return classes_; }
        /// NS rank x |S|, column i is [D_i].
        const ZMatrix& class_matrix() const { return class_matrix_; }
        /// Σ α_i [D_i]
        QVector c1(const QVector& alpha) const;
        ZVector combination(const ZVector& coeffs) const;

        bool operator==(const DivisorSet& other) const
        {
            return variety_ == other.variety_ && classes_ == other.classes_;
        }

    private:
        VarietyModel variety_;
        std::vector<ZVector> classes_;
        ZMatrix class_matrix_;
};

using DivisorSetPtr = std::shared_ptr<const DivisorSet>;

/**
 * A realization of boundary (L, α): L is recorded by its NS class plus a
 * label in the finite group Pic^τ(X), and c_1(L) = Σ α_i [D_i] holds exactly.
 */
class BoundaryRealization
{
    public:
        /// Validates α ∈ [0,1)^S and the c_1 equation; throws SemanticError.
        BoundaryRealization(DivisorSetPtr divisors, ZVector bundle, QVector alpha, ZVector torsion = {});

        static BoundaryRealization identity(DivisorSetPtr divisors);

        const DivisorSetPtr& divisors() const { return divisors_; }
        const ZVector& bundle() const { return bundle_; }
        const QVector& alpha() const { return alpha_; }
        const ZVector& torsion() const { return torsion_; }
        bool is_identity() const;

        bool operator==(const BoundaryRealization& other) const;

    private:
        DivisorSetPtr divisors_;
        ZVector bundle_;
        QVector alpha_;
        ZVector torsion_;
};

BoundaryRealization group_law(const BoundaryRealization& x, const BoundaryRealization& y);
BoundaryRealization inverse(const BoundaryRealization& x);
/// x^n for n >= 0 by repeated multiplication.
BoundaryRealization power(const BoundaryRealization& x, unsigned long n);
/// Least n >= 1 with x^n = 1.
Integer torsion_order(const BoundaryRealization& x);

struct BoundaryPiece
{
    std::size_t id = 0;
    std::size_t parent = 0;   ///< id in the canonical decomposition this piece refines
    HalfOpenPolytope polytope;
    ZVector base_class;       ///< p_k, the common value of Σ α_i [D_i] on the piece
    QVector interior_point;   ///< barycenter of the closure's vertices, a point of the piece
    std::optional<BoundaryRealization> representative;
    Integer order = 0;        ///< torsion order of the representative (0 when symbolic)

    /// The representative, or SymbolicOnlyError when pic0_rank > 0.
    const BoundaryRealization& realization() const;
};

/// Disjoint half-open polytopes covering the set of realizable boundaries.
struct BoundaryDecomposition
{
    DivisorSetPtr divisors;
    std::vector<BoundaryPiece> pieces;

    /// Piece containing α, if any.
    const BoundaryPiece* locate(const QVector& alpha) const;
};

BoundaryDecomposition decompose_boundaries(const DivisorSetPtr& d);

/**
 * A log resolution μ: Z → X as seen by NS classes. Target components are
 * the strict transforms of the source components (same order) followed by
 * the exceptional divisors; μ*[D_i] = Σ_j e_ij [E_j].
 */
struct ResolutionData
{
    DivisorSetPtr source;
    DivisorSetPtr target;
    ZMatrix e_matrix;   ///< |S| x |S'|
    ZMatrix pullback;   ///< ns(Z) x ns(X), μ* on NS classes

    /// Checks unit strict-transform columns, nonnegativity and μ*[D_i] = Σ e_ij [E_j].
    void validate() const;
    ZVector pull_back(const ZVector& cls) const { return pullback * cls; }
    /// e(α)_j = Σ_i e_ij α_i
    QVector e(const QVector& alpha) const;

    /// μ = id, for boundaries that are already simple normal crossings.
    static ResolutionData identity(const DivisorSetPtr& d);
};

/// Subdivides each piece so that ⌊e(α)⌋ is constant on every cell.
BoundaryDecomposition refine_by_resolution(const BoundaryDecomposition& b, const ResolutionData& r);

/// β_j = {e(α)_j}
QVector monodromy_pullback(const QVector& alpha, const ResolutionData& r);
/// (μ*L − ⌊e(α)⌋·E, {e(α)}) on Z.
BoundaryRealization pullback_parabolic(const BoundaryRealization& x, const ResolutionData& r);
/// μ*L + ⌊e(α)⌋·E, the class of the canonical Deligne extension on Z.
ZVector deligne_extension_class(const BoundaryRealization& x, const ResolutionData& r);

/// All x with x^n = 1, grouped by piece in decomposition order.
std::vector<BoundaryRealization> torsion_points(const BoundaryDecomposition& b, const Integer& n);

}   // namespace pictau
