#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pimsner/errors.hpp"

namespace pimsner {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// Default absolute tolerance for entrywise equality of elements.
inline constexpr double kDefaultTol = 1e-10;

// Guard for operations that enumerate all 2^k ideals.
inline constexpr int kMaxEnumerableBlocks  = 20;
inline constexpr int kMaxBruteForceBlocks  = 12;

/// A finite-dimensional C*-algebra M_{n_1} ⊕ ... ⊕ M_{n_k}, identified by
/// its ordered list of block sizes.  The zero algebra (k = 0) exists only
/// as a marker produced by quotienting by everything.
class BlockAlgebra {
public:
    /// Default-constructs the zero marker; real algebras go through
    /// make_algebra, which rejects empty block lists.
    BlockAlgebra() = default;
    explicit BlockAlgebra(std::vector<int> dims);

    // The k = 0 marker.  Not reachable through make_algebra.
    static BlockAlgebra zero();

    int block_count() const { return static_cast<int>(dims_.size()); }
    int block_dim(int i) const { return dims_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& block_dims() const { return dims_; }
    int total_dim() const { return total_; }
    bool is_zero() const { return dims_.empty(); }

    bool operator==(const BlockAlgebra& other) const { return dims_ == other.dims_; }
    bool operator!=(const BlockAlgebra& other) const { return !(*this == other); }

private:
    std::vector<int> dims_;
    int total_ = 0;
};

BlockAlgebra make_algebra(const std::vector<int>& block_dims);

/// Linear coordinates on a block algebra: the matrix units e_{i;pq},
/// ordered block-ascending, row-major inside each block.
struct UnitIndex {
    int block;
    int row;
    int col;
};

int matrix_unit_count(const BlockAlgebra& algebra);
std::vector<UnitIndex> matrix_units(const BlockAlgebra& algebra);

/// An element of a block algebra: one complex n_i x n_i matrix per block.
/// Values are immutable in spirit; all operations return fresh elements.
class AlgebraElement {
public:
    AlgebraElement() = default;     // element of the zero algebra
    AlgebraElement(BlockAlgebra owner, std::vector<Matrix> blocks);

    static AlgebraElement zero(const BlockAlgebra& algebra);
    static AlgebraElement unit(const BlockAlgebra& algebra);
    static AlgebraElement matrix_unit(const BlockAlgebra& algebra, int block, int row, int col);
    static AlgebraElement matrix_unit(const BlockAlgebra& algebra, const UnitIndex& u);
    static AlgebraElement random(const BlockAlgebra& algebra, std::mt19937_64& rng);

    const BlockAlgebra& owner() const { return owner_; }
    const Matrix& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
    Matrix& block(int i) { return blocks_.at(static_cast<std::size_t>(i)); }

    AlgebraElement adjoint() const;

    /// Operator norm: the largest singular value over all blocks.
    double norm() const;
    /// Entrywise sup norm, used for equality to absolute tolerance.
    double max_abs() const;

    bool approx_zero(double tol = kDefaultTol) const { return max_abs() <= tol; }
    bool approx_equal(const AlgebraElement& other, double tol = kDefaultTol) const;

    /// Coordinates in the matrix-unit order of matrix_units(owner()).
    Vector coords() const;
    static AlgebraElement from_coords(const BlockAlgebra& algebra, const Vector& coords);

    /// The identity representation on C^d: blocks placed on the diagonal.
    Matrix identity_rep() const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(Complex scalar);

    friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
    friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
    friend AlgebraElement operator*(AlgebraElement lhs, Complex scalar) { return lhs *= scalar; }
    friend AlgebraElement operator*(Complex scalar, AlgebraElement rhs) { return rhs *= scalar; }
    friend AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

private:
    BlockAlgebra owner_;
    std::vector<Matrix> blocks_;
};

/// A closed two-sided ideal.  In a block algebra these are exactly the
/// direct sums of a subset of the blocks, so an ideal is a support mask.
class Ideal {
public:
    Ideal() = default;              // zero ideal of the zero algebra
    Ideal(BlockAlgebra owner, std::uint32_t support_mask);

    static Ideal zero(const BlockAlgebra& algebra) { return Ideal(algebra, 0u); }
    static Ideal full(const BlockAlgebra& algebra);
    static Ideal from_indices(const BlockAlgebra& algebra, const std::vector<int>& indices);

    const BlockAlgebra& owner() const { return owner_; }
    std::uint32_t mask() const { return mask_; }
    std::vector<int> support() const;
    int support_size() const;

    bool contains_block(int i) const { return (mask_ >> i) & 1u; }
    bool is_zero() const { return mask_ == 0u; }
    bool is_full() const;

    bool contains(const Ideal& other) const;        // other ⊆ this
    Ideal intersect(const Ideal& other) const;
    Ideal join(const Ideal& other) const;           // the ideal I + L

    bool operator==(const Ideal& other) const;
    bool operator!=(const Ideal& other) const { return !(*this == other); }

    /// Membership up to tolerance: all blocks outside the support vanish.
    bool contains_element(const AlgebraElement& a, double tol = kDefaultTol) const;

    /// Matrix units of the supported blocks; a linear spanning set.
    std::vector<AlgebraElement> generators() const;

    /// A random element supported inside the ideal.
    AlgebraElement random_element(std::mt19937_64& rng) const;

private:
    BlockAlgebra owner_;
    std::uint32_t mask_ = 0;
};

/// hull(I) = the primitive ideals containing I.  Prim A is indexed by the
/// blocks; the kernel of the block-i irrep contains I_S iff i ∉ S.
std::vector<int> hull(const Ideal& ideal);

/// I^⊥, the largest ideal intersecting I trivially.
Ideal ortho_complement(const Ideal& ideal);

/// The quotient A/I: blocks outside the support, original order.
struct QuotientData {
    BlockAlgebra source;
    Ideal ideal;
    BlockAlgebra target;                 // zero marker when ideal = A
    std::vector<int> index_map;          // target block -> source block

    AlgebraElement map(const AlgebraElement& a) const;
    /// Image of an ideal of the source under the quotient map.
    Ideal map_ideal(const Ideal& i) const;
};

QuotientData quotient(const BlockAlgebra& algebra, const Ideal& ideal);

/// A1 ⊕ A2 with the two embeddings onto complementary ideals.
struct DirectSum {
    BlockAlgebra left;
    BlockAlgebra right;
    BlockAlgebra sum;

    AlgebraElement embed_left(const AlgebraElement& a) const;
    AlgebraElement embed_right(const AlgebraElement& a) const;
    Ideal left_ideal() const;
    Ideal right_ideal() const;
};

DirectSum direct_sum(const BlockAlgebra& a1, const BlockAlgebra& a2);

/// All 2^k ideals.  Guarded against blowup.
std::vector<Ideal> enumerate_ideals(const BlockAlgebra& algebra);

} // namespace pimsner
