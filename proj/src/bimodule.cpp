#include "pimsner/bimodule.hpp"

namespace pimsner {

CorrespondenceShape::CorrespondenceShape(BlockAlgebra owner, std::vector<std::uint32_t> rows)
    : owner_(std::move(owner)), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != owner_.block_count())
        throw input_error("correspondence shape must have one row per block");
    const std::uint32_t all = owner_.block_count() == 0
                                  ? 0u
                                  : ((owner_.block_count() == 32 ? 0u : (1u << owner_.block_count())) - 1u);
    for (auto r : rows_)
        if ((r & ~all) != 0u)
            throw input_error("correspondence shape row outside the block range");
}

CorrespondenceShape shape_from_dynamics(const Endomorphism& endo) {
    const int k = endo.owner().block_count();
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(k), 0u);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i)
            if (endo.mult()(i, j) != 0)
                rows[static_cast<std::size_t>(j)] |= (1u << i);
    return CorrespondenceShape(endo.owner(), std::move(rows));
}

Ideal left_kernel(const CorrespondenceShape& shape) {
    std::uint32_t mask = 0;
    for (int i = 0; i < shape.owner().block_count(); ++i)
        if (shape.row(i) == 0u)
            mask |= (1u << i);
    return Ideal(shape.owner(), mask);
}

Ideal j_of_e(const CorrespondenceShape& shape) {
    return Ideal::full(shape.owner());
}

Ideal suggested_ideal(const CorrespondenceShape& shape) {
    return ortho_complement(left_kernel(shape)).intersect(j_of_e(shape));
}

Ideal acts_into(const CorrespondenceShape& shape, const Ideal& target) {
    if (target.owner() != shape.owner())
        throw input_error("acts_into with a foreign ideal");
    std::uint32_t mask = 0;
    for (int i = 0; i < shape.owner().block_count(); ++i)
        if ((shape.row(i) & ~target.mask()) == 0u)
            mask |= (1u << i);
    return Ideal(shape.owner(), mask);
}

bool is_invariant(const CorrespondenceShape& shape, const Ideal& ideal) {
    return acts_into(shape, ideal).contains(ideal);
}

CorrespondenceShape quotient_shape(const CorrespondenceShape& shape, const Ideal& ideal) {
    if (!is_invariant(shape, ideal))
        throw input_error("quotient bimodule needs an E-invariant ideal");
    auto q = quotient(shape.owner(), ideal);
    std::vector<std::uint32_t> rows;
    rows.reserve(q.index_map.size());
    for (int src : q.index_map) {
        std::uint32_t row = 0;
        for (std::size_t t = 0; t < q.index_map.size(); ++t)
            if (shape.acts(src, q.index_map[t]))
                row |= (1u << t);
        rows.push_back(row);
    }
    return CorrespondenceShape(q.target, std::move(rows));
}

} // namespace pimsner
