#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdp/errors.hpp"
#include "spdp/matrix.hpp"
#include "spdp/poly.hpp"

namespace spdp {

// Partition of the variable index range [0, nvars) into disjoint blocks.
class BlockPartition {
public:
    BlockPartition(uint32_t nvars, std::vector<std::vector<uint32_t>> blocks)
        : nvars_(nvars), blocks_(std::move(blocks)) {
        std::vector<bool> seen(nvars, false);
        for (const auto& b : blocks_) {
            if (b.empty()) throw std::domain_error("BlockPartition: empty block");
            for (uint32_t v : b) {
                if (v >= nvars) throw std::domain_error("BlockPartition: index out of range");
                if (seen[v]) throw std::domain_error("BlockPartition: blocks overlap");
                seen[v] = true;
            }
        }
        for (uint32_t v = 0; v < nvars; ++v)
            if (!seen[v]) throw std::domain_error("BlockPartition: blocks must cover all variables");
        block_of_.assign(nvars, 0);
        for (uint32_t b = 0; b < blocks_.size(); ++b)
            for (uint32_t v : blocks_[b]) block_of_[v] = b;
    }

    static BlockPartition trivial(uint32_t nvars) {
        std::vector<std::vector<uint32_t>> blocks;
        blocks.reserve(nvars);
        for (uint32_t v = 0; v < nvars; ++v) blocks.push_back({v});
        return BlockPartition(nvars, std::move(blocks));
    }

    uint32_t nvars() const { return nvars_; }
    const std::vector<std::vector<uint32_t>>& blocks() const { return blocks_; }
    uint32_t block_of(uint32_t var) const { return block_of_[var]; }

    uint32_t max_block_size() const {
        size_t m = 0;
        for (const auto& b : blocks_) m = std::max(m, b.size());
        return static_cast<uint32_t>(m);
    }

private:
    uint32_t nvars_;
    std::vector<std::vector<uint32_t>> blocks_;
    std::vector<uint32_t> block_of_;
};

// Invertible linear map plus offset for one block: x |-> A x + c, where x is
// the vector of the block's variables in block order.
struct BlockAffineMap {
    std::vector<std::vector<uint64_t>> matrix;  // size b x b
    std::vector<uint64_t> offset;               // size b

    static BlockAffineMap identity(size_t b) {
        BlockAffineMap m;
        m.matrix.assign(b, std::vector<uint64_t>(b, 0));
        for (size_t i = 0; i < b; ++i) m.matrix[i][i] = 1;
        m.offset.assign(b, 0);
        return m;
    }
};

// Compose p with the block-local affine substitution. Each block's matrix
// must be invertible over the field.
inline SparsePoly block_affine(const SparsePoly& p, const BlockPartition& part,
                               const std::vector<BlockAffineMap>& maps) {
    if (part.nvars() != p.nvars())
        throw std::domain_error("block_affine: partition does not match variable count");
    if (maps.size() != part.blocks().size())
        throw std::domain_error("block_affine: need one map per block");

    const FieldCtx& F = p.ctx();
    for (size_t b = 0; b < maps.size(); ++b) {
        size_t sz = part.blocks()[b].size();
        if (maps[b].matrix.size() != sz || maps[b].offset.size() != sz)
            throw std::domain_error("block_affine: map shape does not match block size");
        ModMatrix A(F, sz, sz);
        for (size_t i = 0; i < sz; ++i) {
            if (maps[b].matrix[i].size() != sz)
                throw std::domain_error("block_affine: map shape does not match block size");
            for (size_t j = 0; j < sz; ++j) A.at(i, j) = F.reduce_u(maps[b].matrix[i][j]);
        }
        if (A.rank() != sz)
            throw InvalidTransform("block_affine: singular matrix in block " + std::to_string(b));
    }

    std::vector<SparsePoly> images;
    images.reserve(p.nvars());
    for (uint32_t v = 0; v < p.nvars(); ++v)
        images.push_back(SparsePoly::zero(F, p.nvars()));
    for (size_t b = 0; b < maps.size(); ++b) {
        const auto& block = part.blocks()[b];
        for (size_t i = 0; i < block.size(); ++i) {
            SparsePoly img(F, p.nvars());
            for (size_t j = 0; j < block.size(); ++j)
                img.add_term(Monomial::var(block[j]), F.reduce_u(maps[b].matrix[i][j]));
            img.add_term(Monomial::one(), F.reduce_u(maps[b].offset[i]));
            images[block[i]] = img;
        }
    }
    return p.compose(images);
}

}  // namespace spdp
