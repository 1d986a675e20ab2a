#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "spdp/block.hpp"
#include "spdp/errors.hpp"
#include "spdp/matrix.hpp"
#include "spdp/poly.hpp"
#include "spdp/util.hpp"

namespace spdp {

// Coefficient-space convention for rows and columns. PlainRing keeps exact
// exponents; BooleanMultilinear works modulo <x_i^2 - x_i> with square-free
// shift monomials.
enum class Ambient { PlainRing, BooleanMultilinear };

// Shift monomials are degree-bounded (<= ell) by default; Exact restricts to
// degree == ell.
enum class ShiftDegree { UpTo, Exact };

struct SpdpParams {
    uint32_t kappa = 0;
    uint32_t ell = 0;
    bool cumulative = false;  // rows over |S| <= kappa instead of |S| == kappa
    std::optional<BlockPartition> partition;
    Ambient ambient = Ambient::PlainRing;
    ShiftDegree shift_degree = ShiftDegree::UpTo;
    // Restrict shift supports to the derivative set S. This is the convention
    // under which the row-count bound binom(N,l)*2^l holds; with global
    // shifts the bound is false (small counterexamples exist).
    bool shifts_within_derivative_set = false;
    uint64_t row_cap = 2'000'000;
};

// Row descriptor: derivative set S plus shift monomial u.
struct SpdpRow {
    std::vector<uint32_t> s;
    Monomial u;

    bool operator==(const SpdpRow& o) const { return s == o.s && u == o.u; }
};

namespace detail {

// Enumerate monomials of degree <= ell (or == ell) over nvars variables,
// with repetition allowed unless squarefree is set.
inline void for_each_shift_monomial(uint32_t nvars, uint32_t ell, bool squarefree,
                                    ShiftDegree mode,
                                    const std::function<void(const Monomial&)>& fn) {
    std::vector<std::pair<uint32_t, uint32_t>> stack;
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t next_var, uint32_t remaining) {
        uint32_t deg_so_far = ell - remaining;
        bool admissible = (mode == ShiftDegree::UpTo) ? true : (deg_so_far == ell);
        if (admissible) {
            Monomial m;
            for (const auto& [v, e] : stack) m = m.mul(Monomial::var(v, e));
            fn(m);
        }
        if (remaining == 0) return;
        for (uint32_t v = next_var; v < nvars; ++v) {
            uint32_t max_e = squarefree ? 1 : remaining;
            for (uint32_t e = 1; e <= max_e; ++e) {
                stack.emplace_back(v, e);
                rec(v + 1, remaining - e);
                stack.pop_back();
            }
        }
    };
    rec(0, ell);
}

inline uint64_t shift_monomial_count(uint32_t nvars, uint32_t ell, bool squarefree,
                                     ShiftDegree mode) {
    uint64_t total = 0;
    uint32_t lo = (mode == ShiftDegree::Exact) ? ell : 0;
    for (uint32_t d = lo; d <= ell; ++d)
        total += squarefree ? binomial(nvars, d) : binomial(nvars + d - 1, d);
    return total;
}

inline uint32_t blocks_touched(const BlockPartition& part, const std::vector<uint32_t>& s) {
    std::set<uint32_t> blocks;
    for (uint32_t v : s) blocks.insert(part.block_of(v));
    return static_cast<uint32_t>(blocks.size());
}

}  // namespace detail

// Number of rows build_matrix would materialize (before the cap check).
inline uint64_t spdp_row_count(uint32_t nvars, const SpdpParams& prm) {
    bool squarefree = (prm.ambient == Ambient::BooleanMultilinear);
    uint64_t total = 0;
    uint32_t klo = prm.cumulative ? 0 : prm.kappa;
    for (uint32_t k = klo; k <= prm.kappa; ++k) {
        if (k > nvars) continue;
        uint64_t subsets = binomial(nvars, k);
        uint64_t shifts = prm.shifts_within_derivative_set
                              ? detail::shift_monomial_count(k, prm.ell, true, prm.shift_degree)
                              : detail::shift_monomial_count(nvars, prm.ell, squarefree, prm.shift_degree);
        total += subsets * shifts;
    }
    return total;
}

// The SPDP matrix: one row per admissible (S, u) pair holding the coefficient
// vector of u * d_S p; columns are the monomials occurring in any row, in the
// fixed monomial order. Zero columns of the ambient space are dropped (rank
// is unchanged); rows, including zero rows, are all kept so that row
// descriptors stay addressable.
class SpdpMatrix {
public:
    const std::vector<SpdpRow>& row_meta() const { return rows_; }
    const std::vector<Monomial>& col_basis() const { return cols_; }
    const ModMatrix& data() const { return data_; }
    const SpdpParams& params() const { return params_; }
    bool degree_guarded() const { return degree_guarded_; }

    size_t n_rows() const { return rows_.size(); }
    size_t n_cols() const { return cols_.size(); }
    bool empty() const { return cols_.empty(); }

    size_t rank() const { return empty() ? 0 : data_.rank(); }

    std::optional<size_t> find_row(const std::vector<uint32_t>& s, const Monomial& u) const {
        std::vector<uint32_t> key = s;
        std::sort(key.begin(), key.end());
        for (size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].s == key && rows_[i].u == u) return i;
        return std::nullopt;
    }

    std::optional<size_t> find_col(const Monomial& m) const {
        auto it = std::lower_bound(cols_.begin(), cols_.end(), m);
        if (it != cols_.end() && *it == m) return static_cast<size_t>(it - cols_.begin());
        return std::nullopt;
    }

    size_t submatrix_rank(const std::vector<size_t>& row_idx,
                          const std::vector<size_t>& col_idx) const {
        if (empty()) {
            if (!row_idx.empty() || !col_idx.empty())
                throw std::domain_error("submatrix_rank: index into empty matrix");
            return 0;
        }
        return data_.submatrix(row_idx, col_idx).rank();
    }

    // CSV dump: header of column monomials, then one row per (S, u) pair.
    void dump_csv(std::ostream& os) const {
        os << "S,u";
        for (const auto& m : cols_) os << "," << m.str();
        os << "\n";
        for (size_t r = 0; r < rows_.size(); ++r) {
            os << "[";
            for (size_t i = 0; i < rows_[r].s.size(); ++i)
                os << (i ? " " : "") << rows_[r].s[i];
            os << "]," << rows_[r].u.str();
            for (size_t c = 0; c < cols_.size(); ++c) os << "," << data_.at(r, c);
            os << "\n";
        }
    }

    friend SpdpMatrix build_matrix(const SparsePoly& p, const SpdpParams& prm);

private:
    SpdpMatrix(FieldCtx ctx, SpdpParams prm)
        : params_(std::move(prm)), data_(ctx, 0, 0) {}

    SpdpParams params_;
    std::vector<SpdpRow> rows_;
    std::vector<Monomial> cols_;
    ModMatrix data_;
    bool degree_guarded_ = false;
};

inline SpdpMatrix build_matrix(const SparsePoly& p, const SpdpParams& prm) {
    if (prm.partition && prm.partition->nvars() != p.nvars())
        throw std::domain_error("build_matrix: partition does not match variable count");

    SpdpMatrix M(p.ctx(), prm);
    const bool boolean = (prm.ambient == Ambient::BooleanMultilinear);
    const SparsePoly base = boolean ? p.multilinear_reduce() : p;

    // Degree guard: deg(p) - kappa + ell < 0 means the matrix is empty; the
    // zero polynomial is guarded unconditionally.
    if (base.is_zero() ||
        static_cast<int64_t>(base.degree()) - static_cast<int64_t>(prm.kappa) +
                static_cast<int64_t>(prm.ell) < 0) {
        M.degree_guarded_ = true;
        return M;
    }

    uint64_t would_be = spdp_row_count(p.nvars(), prm);
    if (would_be > prm.row_cap)
        throw SizeError("build_matrix: refusing to materialize " + std::to_string(would_be) +
                        " rows (cap " + std::to_string(prm.row_cap) + ")");

    std::vector<SparsePoly> row_polys;
    auto emit_rows_for = [&](const std::vector<uint32_t>& s) {
        if (prm.partition && detail::blocks_touched(*prm.partition, s) > prm.kappa)
            return;  // block-admissibility; vacuous for |S| <= kappa but kept literal
        SparsePoly ds = base.derive(s);
        auto emit = [&](const Monomial& u) {
            M.rows_.push_back(SpdpRow{s, u});
            row_polys.push_back(ds.shift(u, boolean));
        };
        if (prm.shifts_within_derivative_set) {
            uint32_t k = static_cast<uint32_t>(s.size());
            detail::for_each_shift_monomial(k, prm.ell, true, prm.shift_degree,
                                            [&](const Monomial& local) {
                                                // local indices refer to positions in s
                                                Monomial u;
                                                for (const auto& [pos, e] : local.terms())
                                                    u = u.mul(Monomial::var(s[pos], e));
                                                emit(u);
                                            });
        } else {
            detail::for_each_shift_monomial(p.nvars(), prm.ell, boolean, prm.shift_degree, emit);
        }
    };

    if (prm.cumulative)
        for_each_subset_le(p.nvars(), prm.kappa, emit_rows_for);
    else
        for_each_subset(p.nvars(), prm.kappa, emit_rows_for);

    std::set<Monomial> col_set;
    for (const auto& rp : row_polys)
        for (const auto& [m, c] : rp.terms()) col_set.insert(m);
    M.cols_.assign(col_set.begin(), col_set.end());

    std::map<Monomial, size_t> col_index;
    for (size_t i = 0; i < M.cols_.size(); ++i) col_index.emplace(M.cols_[i], i);

    M.data_ = ModMatrix(p.ctx(), M.rows_.size(), M.cols_.size());
    for (size_t r = 0; r < row_polys.size(); ++r)
        for (const auto& [m, c] : row_polys[r].terms())
            M.data_.at(r, col_index.at(m)) = c;
    return M;
}

// Gamma = rank of the SPDP matrix.
inline uint64_t gamma(const SparsePoly& p, const SpdpParams& prm) {
    return build_matrix(p, prm).rank();
}

// One transform in the rank-monotone pipeline.
struct PipelineStep {
    enum class Kind { Restrict, Project, BlockAffine, BlockBasis };

    Kind kind;
    std::map<uint32_t, uint64_t> assignment;    // Restrict
    std::vector<uint32_t> keep_vars;            // Project: the rest are set to 0
    std::optional<BlockPartition> partition;    // BlockAffine / BlockBasis
    std::vector<BlockAffineMap> maps;
    std::string label;

    static PipelineStep restrict_step(std::map<uint32_t, uint64_t> rho, std::string label = "restrict") {
        PipelineStep s;
        s.kind = Kind::Restrict;
        s.assignment = std::move(rho);
        s.label = std::move(label);
        return s;
    }

    static PipelineStep project_step(std::vector<uint32_t> keep, std::string label = "project") {
        PipelineStep s;
        s.kind = Kind::Project;
        s.keep_vars = std::move(keep);
        s.label = std::move(label);
        return s;
    }

    static PipelineStep affine_step(BlockPartition part, std::vector<BlockAffineMap> maps,
                                    std::string label = "block_affine") {
        PipelineStep s;
        s.kind = Kind::BlockAffine;
        s.partition = std::move(part);
        s.maps = std::move(maps);
        s.label = std::move(label);
        return s;
    }

    static PipelineStep basis_step(BlockPartition part, std::vector<BlockAffineMap> maps,
                                   std::string label = "block_basis") {
        PipelineStep s;
        s.kind = Kind::BlockBasis;
        s.partition = std::move(part);
        s.maps = std::move(maps);
        s.label = std::move(label);
        return s;
    }
};

struct PipelineTrace {
    std::vector<uint64_t> gamma_values;  // gamma before any step, then after each
    std::vector<std::string> labels;
    SparsePoly final_poly;
};

// Apply the steps in order, recording gamma after each. Gamma must be
// non-increasing at restrict/project steps and exactly preserved at
// affine/basis steps; a violation is an implementation bug, so it raises
// logic_error rather than returning a status.
inline PipelineTrace verify_monotone_pipeline(const SparsePoly& p, const SpdpParams& prm,
                                              const std::vector<PipelineStep>& steps) {
    SparsePoly cur = p;
    PipelineTrace trace{{gamma(cur, prm)}, {"start"}, cur};
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        switch (st.kind) {
            case PipelineStep::Kind::Restrict:
                cur = cur.restrict(st.assignment);
                break;
            case PipelineStep::Kind::Project: {
                std::set<uint32_t> keep(st.keep_vars.begin(), st.keep_vars.end());
                std::map<uint32_t, uint64_t> rho;
                for (uint32_t v = 0; v < cur.nvars(); ++v)
                    if (!keep.count(v)) rho[v] = 0;
                cur = cur.restrict(rho);
                break;
            }
            case PipelineStep::Kind::BlockBasis:
                for (const auto& m : st.maps)
                    for (uint64_t c : m.offset)
                        if (c != 0)
                            throw std::domain_error("block_basis step must have zero offsets");
                [[fallthrough]];
            case PipelineStep::Kind::BlockAffine:
                cur = block_affine(cur, *st.partition, st.maps);
                break;
        }
        uint64_t g = gamma(cur, prm);
        uint64_t prev = trace.gamma_values.back();
        bool exact = (st.kind == PipelineStep::Kind::BlockAffine ||
                      st.kind == PipelineStep::Kind::BlockBasis);
        if (exact && g != prev)
            throw std::logic_error("monotone pipeline: step " + std::to_string(i) + " (" + st.label +
                                   ") changed gamma " + std::to_string(prev) + " -> " + std::to_string(g));
        if (!exact && g > prev)
            throw std::logic_error("monotone pipeline: step " + std::to_string(i) + " (" + st.label +
                                   ") increased gamma " + std::to_string(prev) + " -> " + std::to_string(g));
        trace.gamma_values.push_back(g);
        trace.labels.push_back(st.label);
    }
    trace.final_poly = cur;
    return trace;
}

}  // namespace spdp
