#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "spdp/errors.hpp"

namespace spdp {

struct Comparator {
    uint32_t lo, hi;  // lo < hi

    bool operator==(const Comparator& o) const { return lo == o.lo && hi == o.hi; }
};

// Comparator network as a layered schedule; comparators within one layer
// touch disjoint wires.
struct SortingNetwork {
    uint32_t wires = 0;
    std::vector<std::vector<Comparator>> layers;

    size_t comparator_count() const {
        size_t n = 0;
        for (const auto& l : layers) n += l.size();
        return n;
    }

    void validate() const {
        for (const auto& layer : layers) {
            std::vector<bool> used(wires, false);
            for (const Comparator& c : layer) {
                if (c.lo >= c.hi || c.hi >= wires)
                    throw std::domain_error("SortingNetwork: bad comparator");
                if (used[c.lo] || used[c.hi])
                    throw std::domain_error("SortingNetwork: layer comparators overlap");
                used[c.lo] = used[c.hi] = true;
            }
        }
    }

    template <typename T>
    void apply(std::vector<T>& v) const {
        for (const auto& layer : layers)
            for (const Comparator& c : layer)
                if (v[c.hi] < v[c.lo]) std::swap(v[c.lo], v[c.hi]);
    }
};

// Batcher odd-even merge sort. Comparators are emitted in dependency order
// and packed greedily into the earliest layer whose wires are free, which
// reproduces the classic depth log2(n)*(log2(n)+1)/2.
inline SortingNetwork batcher(uint32_t wires, uint32_t cap = 64) {
    if (wires < 2 || (wires & (wires - 1)) != 0)
        throw std::domain_error("batcher: wire count must be a power of two >= 2");
    if (wires > cap) throw SizeError("batcher: wire count exceeds cap");

    std::vector<Comparator> seq;
    // odd-even merge of the two sorted halves of [lo, lo+n) at stride r
    std::function<void(uint32_t, uint32_t, uint32_t)> merge = [&](uint32_t lo, uint32_t n,
                                                                  uint32_t r) {
        uint32_t step = 2 * r;
        if (step < n) {
            merge(lo, n, step);
            merge(lo + r, n, step);
            for (uint32_t i = lo + r; i + r < lo + n; i += step)
                seq.push_back(Comparator{i, i + r});
        } else {
            seq.push_back(Comparator{lo, lo + r});
        }
    };
    std::function<void(uint32_t, uint32_t)> sort_rec = [&](uint32_t lo, uint32_t n) {
        if (n <= 1) return;
        uint32_t half = n / 2;
        sort_rec(lo, half);
        sort_rec(lo + half, half);
        merge(lo, n, 1);
    };
    sort_rec(0, wires);

    SortingNetwork net{wires, {}};
    std::vector<size_t> wire_free_at(wires, 0);  // earliest layer each wire is free in
    for (const Comparator& c : seq) {
        size_t layer = std::max(wire_free_at[c.lo], wire_free_at[c.hi]);
        if (layer >= net.layers.size()) net.layers.resize(layer + 1);
        net.layers[layer].push_back(c);
        wire_free_at[c.lo] = wire_free_at[c.hi] = layer + 1;
    }
    net.validate();
    return net;
}

// 0-1 principle check: exhaustively sorts every Boolean input.
inline bool sorts_all_01(const SortingNetwork& net, uint32_t wire_cap = 16) {
    if (net.wires > wire_cap) throw SizeError("sorts_all_01: too many wires for exhaustion");
    uint64_t total = 1ULL << net.wires;
    std::vector<int> v(net.wires);
    for (uint64_t x = 0; x < total; ++x) {
        for (uint32_t i = 0; i < net.wires; ++i) v[i] = (x >> i) & 1;
        net.apply(v);
        for (uint32_t i = 1; i < net.wires; ++i)
            if (v[i - 1] > v[i]) return false;
    }
    return true;
}

// Per-layer straddle counts: for every vertical wire cut (between wire c-1
// and c) and every layer, the number of comparators with lo < c <= hi.
struct CutReport {
    std::vector<std::vector<uint32_t>> counts;  // [layer][cut-1]
    std::vector<uint32_t> per_layer_max;
    uint32_t global_max = 0;
};

inline CutReport cut_accounting(const SortingNetwork& net) {
    CutReport rep;
    uint32_t ncuts = net.wires > 0 ? net.wires - 1 : 0;
    for (const auto& layer : net.layers) {
        std::vector<uint32_t> row(ncuts, 0);
        for (uint32_t cut = 1; cut <= ncuts; ++cut)
            for (const Comparator& c : layer)
                if (c.lo < cut && cut <= c.hi) ++row[cut - 1];
        uint32_t mx = 0;
        for (uint32_t v : row) mx = std::max(mx, v);
        rep.per_layer_max.push_back(mx);
        rep.global_max = std::max(rep.global_max, mx);
        rep.counts.push_back(std::move(row));
    }
    return rep;
}

// One line per layer, comparators as "lo:hi" pairs.
inline void dump_network(const SortingNetwork& net, std::ostream& os) {
    for (const auto& layer : net.layers) {
        for (size_t k = 0; k < layer.size(); ++k)
            os << (k ? " " : "") << layer[k].lo << ":" << layer[k].hi;
        os << "\n";
    }
}

}  // namespace spdp
