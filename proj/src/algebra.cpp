#include "pimsner/algebra.hpp"

#include <algorithm>
#include <bit>

#include <Eigen/SVD>

namespace pimsner {

namespace {

void require_same_owner(const BlockAlgebra& a, const BlockAlgebra& b, const char* what) {
    if (a != b)
        throw input_error(std::string("ownership mismatch in ") + what);
}

} // namespace

BlockAlgebra::BlockAlgebra(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty())
        throw input_error("block algebra needs at least one block");
    for (int n : dims_) {
        if (n < 1)
            throw input_error("block dimensions must be positive");
        total_ += n;
    }
}

BlockAlgebra BlockAlgebra::zero() {
    return BlockAlgebra();
}

BlockAlgebra make_algebra(const std::vector<int>& block_dims) {
    return BlockAlgebra(block_dims);
}

int matrix_unit_count(const BlockAlgebra& algebra) {
    int count = 0;
    for (int n : algebra.block_dims())
        count += n * n;
    return count;
}

std::vector<UnitIndex> matrix_units(const BlockAlgebra& algebra) {
    std::vector<UnitIndex> units;
    units.reserve(static_cast<std::size_t>(matrix_unit_count(algebra)));
    for (int i = 0; i < algebra.block_count(); ++i)
        for (int p = 0; p < algebra.block_dim(i); ++p)
            for (int q = 0; q < algebra.block_dim(i); ++q)
                units.push_back({i, p, q});
    return units;
}

AlgebraElement::AlgebraElement(BlockAlgebra owner, std::vector<Matrix> blocks)
    : owner_(std::move(owner)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != owner_.block_count())
        throw input_error("element has wrong number of blocks");
    for (int i = 0; i < owner_.block_count(); ++i) {
        const int n = owner_.block_dim(i);
        if (blocks_[static_cast<std::size_t>(i)].rows() != n ||
            blocks_[static_cast<std::size_t>(i)].cols() != n)
            throw input_error("element block has wrong shape");
    }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& algebra) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(algebra.block_count()));
    for (int n : algebra.block_dims())
        blocks.push_back(Matrix::Zero(n, n));
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::unit(const BlockAlgebra& algebra) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(algebra.block_count()));
    for (int n : algebra.block_dims())
        blocks.push_back(Matrix::Identity(n, n));
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(const BlockAlgebra& algebra, int block, int row, int col) {
    auto a = zero(algebra);
    a.block(block)(row, col) = Complex(1.0, 0.0);
    return a;
}

AlgebraElement AlgebraElement::matrix_unit(const BlockAlgebra& algebra, const UnitIndex& u) {
    return matrix_unit(algebra, u.block, u.row, u.col);
}

AlgebraElement AlgebraElement::random(const BlockAlgebra& algebra, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto a = zero(algebra);
    for (int i = 0; i < algebra.block_count(); ++i)
        for (int p = 0; p < algebra.block_dim(i); ++p)
            for (int q = 0; q < algebra.block_dim(i); ++q)
                a.block(i)(p, q) = Complex(gauss(rng), gauss(rng));
    return a;
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<Matrix> blocks;
    blocks.reserve(blocks_.size());
    for (const auto& b : blocks_)
        blocks.push_back(b.adjoint());
    return AlgebraElement(owner_, std::move(blocks));
}

double AlgebraElement::norm() const {
    double best = 0.0;
    for (const auto& b : blocks_) {
        if (b.rows() == 0)
            continue;
        Eigen::JacobiSVD<Matrix> svd(b);
        best = std::max(best, svd.singularValues()(0));
    }
    return best;
}

double AlgebraElement::max_abs() const {
    double best = 0.0;
    for (const auto& b : blocks_)
        for (Eigen::Index r = 0; r < b.rows(); ++r)
            for (Eigen::Index c = 0; c < b.cols(); ++c)
                best = std::max(best, std::abs(b(r, c)));
    return best;
}

bool AlgebraElement::approx_equal(const AlgebraElement& other, double tol) const {
    require_same_owner(owner_, other.owner_, "approx_equal");
    return (*this - other).max_abs() <= tol;
}

Vector AlgebraElement::coords() const {
    Vector v(matrix_unit_count(owner_));
    Eigen::Index idx = 0;
    for (int i = 0; i < owner_.block_count(); ++i)
        for (int p = 0; p < owner_.block_dim(i); ++p)
            for (int q = 0; q < owner_.block_dim(i); ++q)
                v(idx++) = block(i)(p, q);
    return v;
}

AlgebraElement AlgebraElement::from_coords(const BlockAlgebra& algebra, const Vector& coords) {
    if (coords.size() != matrix_unit_count(algebra))
        throw input_error("coordinate vector has wrong length");
    auto a = zero(algebra);
    Eigen::Index idx = 0;
    for (int i = 0; i < algebra.block_count(); ++i)
        for (int p = 0; p < algebra.block_dim(i); ++p)
            for (int q = 0; q < algebra.block_dim(i); ++q)
                a.block(i)(p, q) = coords(idx++);
    return a;
}

Matrix AlgebraElement::identity_rep() const {
    const int d = owner_.total_dim();
    Matrix m = Matrix::Zero(d, d);
    int offset = 0;
    for (int i = 0; i < owner_.block_count(); ++i) {
        const int n = owner_.block_dim(i);
        m.block(offset, offset, n, n) = block(i);
        offset += n;
    }
    return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    require_same_owner(owner_, rhs.owner_, "operator+");
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        blocks_[i] += rhs.blocks_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    require_same_owner(owner_, rhs.owner_, "operator-");
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        blocks_[i] -= rhs.blocks_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
    for (auto& b : blocks_)
        b *= scalar;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    require_same_owner(lhs.owner_, rhs.owner_, "operator*");
    std::vector<Matrix> blocks;
    blocks.reserve(lhs.blocks_.size());
    for (std::size_t i = 0; i < lhs.blocks_.size(); ++i)
        blocks.push_back(lhs.blocks_[i] * rhs.blocks_[i]);
    return AlgebraElement(lhs.owner_, std::move(blocks));
}

Ideal::Ideal(BlockAlgebra owner, std::uint32_t support_mask)
    : owner_(std::move(owner)), mask_(support_mask) {
    if (owner_.block_count() > 32)
        throw input_error("ideal support masks handle at most 32 blocks");
    const std::uint32_t all =
        owner_.block_count() == 32 ? ~0u : ((1u << owner_.block_count()) - 1u);
    if ((mask_ & ~all) != 0u)
        throw input_error("ideal support outside the block range");
}

Ideal Ideal::full(const BlockAlgebra& algebra) {
    const int k = algebra.block_count();
    const std::uint32_t all = k == 32 ? ~0u : ((1u << k) - 1u);
    return Ideal(algebra, all);
}

Ideal Ideal::from_indices(const BlockAlgebra& algebra, const std::vector<int>& indices) {
    std::uint32_t mask = 0;
    for (int i : indices) {
        if (i < 0 || i >= algebra.block_count())
            throw input_error("ideal block index out of range");
        mask |= (1u << i);
    }
    return Ideal(algebra, mask);
}

std::vector<int> Ideal::support() const {
    std::vector<int> s;
    for (int i = 0; i < owner_.block_count(); ++i)
        if (contains_block(i))
            s.push_back(i);
    return s;
}

int Ideal::support_size() const {
    return std::popcount(mask_);
}

bool Ideal::is_full() const {
    return *this == Ideal::full(owner_);
}

bool Ideal::contains(const Ideal& other) const {
    require_same_owner(owner_, other.owner_, "Ideal::contains");
    return (other.mask_ & ~mask_) == 0u;
}

Ideal Ideal::intersect(const Ideal& other) const {
    require_same_owner(owner_, other.owner_, "Ideal::intersect");
    return Ideal(owner_, mask_ & other.mask_);
}

Ideal Ideal::join(const Ideal& other) const {
    require_same_owner(owner_, other.owner_, "Ideal::join");
    return Ideal(owner_, mask_ | other.mask_);
}

bool Ideal::operator==(const Ideal& other) const {
    require_same_owner(owner_, other.owner_, "Ideal::operator==");
    return mask_ == other.mask_;
}

bool Ideal::contains_element(const AlgebraElement& a, double tol) const {
    require_same_owner(owner_, a.owner(), "Ideal::contains_element");
    for (int i = 0; i < owner_.block_count(); ++i) {
        if (contains_block(i))
            continue;
        if (a.block(i).cwiseAbs().maxCoeff() > tol)
            return false;
    }
    return true;
}

std::vector<AlgebraElement> Ideal::generators() const {
    std::vector<AlgebraElement> gens;
    for (int i = 0; i < owner_.block_count(); ++i) {
        if (!contains_block(i))
            continue;
        for (int p = 0; p < owner_.block_dim(i); ++p)
            for (int q = 0; q < owner_.block_dim(i); ++q)
                gens.push_back(AlgebraElement::matrix_unit(owner_, i, p, q));
    }
    return gens;
}

AlgebraElement Ideal::random_element(std::mt19937_64& rng) const {
    auto a = AlgebraElement::random(owner_, rng);
    for (int i = 0; i < owner_.block_count(); ++i)
        if (!contains_block(i))
            a.block(i).setZero();
    return a;
}

std::vector<int> hull(const Ideal& ideal) {
    std::vector<int> h;
    for (int i = 0; i < ideal.owner().block_count(); ++i)
        if (!ideal.contains_block(i))
            h.push_back(i);
    return h;
}

Ideal ortho_complement(const Ideal& ideal) {
    return Ideal(ideal.owner(), Ideal::full(ideal.owner()).mask() & ~ideal.mask());
}

AlgebraElement QuotientData::map(const AlgebraElement& a) const {
    if (a.owner() != source)
        throw input_error("quotient map applied to foreign element");
    if (target.is_zero())
        return AlgebraElement(target, {});
    std::vector<Matrix> blocks;
    blocks.reserve(index_map.size());
    for (int src : index_map)
        blocks.push_back(a.block(src));
    return AlgebraElement(target, std::move(blocks));
}

Ideal QuotientData::map_ideal(const Ideal& i) const {
    if (i.owner() != source)
        throw input_error("quotient map applied to foreign ideal");
    std::uint32_t mask = 0;
    for (std::size_t t = 0; t < index_map.size(); ++t)
        if (i.contains_block(index_map[t]))
            mask |= (1u << t);
    return Ideal(target, mask);
}

QuotientData quotient(const BlockAlgebra& algebra, const Ideal& ideal) {
    if (ideal.owner() != algebra)
        throw input_error("quotient by a foreign ideal");
    std::vector<int> dims;
    std::vector<int> index_map;
    for (int i = 0; i < algebra.block_count(); ++i) {
        if (ideal.contains_block(i))
            continue;
        dims.push_back(algebra.block_dim(i));
        index_map.push_back(i);
    }
    BlockAlgebra target = dims.empty() ? BlockAlgebra::zero() : BlockAlgebra(dims);
    return QuotientData{algebra, ideal, std::move(target), std::move(index_map)};
}

AlgebraElement DirectSum::embed_left(const AlgebraElement& a) const {
    if (a.owner() != left)
        throw input_error("embed_left applied to foreign element");
    auto out = AlgebraElement::zero(sum);
    for (int i = 0; i < left.block_count(); ++i)
        out.block(i) = a.block(i);
    return out;
}

AlgebraElement DirectSum::embed_right(const AlgebraElement& a) const {
    if (a.owner() != right)
        throw input_error("embed_right applied to foreign element");
    auto out = AlgebraElement::zero(sum);
    for (int i = 0; i < right.block_count(); ++i)
        out.block(left.block_count() + i) = a.block(i);
    return out;
}

Ideal DirectSum::left_ideal() const {
    const std::uint32_t mask =
        left.block_count() == 0 ? 0u : ((1u << left.block_count()) - 1u);
    return Ideal(sum, mask);
}

Ideal DirectSum::right_ideal() const {
    return ortho_complement(left_ideal());
}

DirectSum direct_sum(const BlockAlgebra& a1, const BlockAlgebra& a2) {
    std::vector<int> dims = a1.block_dims();
    dims.insert(dims.end(), a2.block_dims().begin(), a2.block_dims().end());
    BlockAlgebra sum = dims.empty() ? BlockAlgebra::zero() : BlockAlgebra(dims);
    return DirectSum{a1, a2, std::move(sum)};
}

std::vector<Ideal> enumerate_ideals(const BlockAlgebra& algebra) {
    const int k = algebra.block_count();
    if (k > kMaxEnumerableBlocks)
        throw resource_error("refusing to enumerate 2^k ideals for k > 20");
    std::vector<Ideal> all;
    all.reserve(std::size_t{1} << k);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask)
        all.emplace_back(algebra, mask);
    return all;
}

} // namespace pimsner
