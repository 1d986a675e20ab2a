#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spdp/cnf.hpp"
#include "spdp/errors.hpp"
#include "spdp/matrix.hpp"
#include "spdp/restriction.hpp"
#include "spdp/spdp.hpp"
#include "spdp/util.hpp"
#include "spdp/workloads.hpp"

namespace spdp {

enum class Regime { Raw, Weak, Full };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Raw: return "RAW";
        case Regime::Weak: return "WEAK";
        case Regime::Full: return "FULL";
    }
    return "?";
}

inline Regime parse_regime(const std::string& s) {
    if (s == "RAW") return Regime::Raw;
    if (s == "WEAK") return Regime::Weak;
    if (s == "FULL") return Regime::Full;
    throw std::domain_error("unknown regime: " + s);
}

struct AblationRecord {
    std::string family;
    Regime regime = Regime::Raw;
    uint32_t n = 0;         // instance scale
    uint32_t live = 0;      // live variables in the selected window
    uint32_t profiles = 0;  // observed profile types
    uint64_t cols = 0;      // ambient column dimension
    uint64_t rank = 0;
    double ratio = 0.0;
    uint64_t seed = 0;
    bool error = false;
    std::string error_msg;
};

struct AblationParams {
    uint32_t kappa = 2;
    uint32_t ell = 2;
    double star_rate = 0.45;
    uint64_t prime = FieldCtx::kDefaultPrime;
    uint32_t max_window_clauses = 8;
    size_t term_cap = 1u << 18;
    uint32_t live_cap = 24;
};

namespace detail {

// Occurrence signature of a variable over the window clauses: how often it
// appears positively and negatively. Interface identities are not recorded.
using VarType = std::pair<uint32_t, uint32_t>;

inline std::map<uint32_t, VarType> window_var_types(const CnfFormula& f,
                                                    const std::vector<size_t>& window) {
    std::map<uint32_t, VarType> types;
    for (size_t j : window)
        for (const Lit& l : f.clauses[j]) {
            auto& t = types[l.var];
            if (l.positive) ++t.first;
            else ++t.second;
        }
    return types;
}

}  // namespace detail

// Tseitin parity CNF on a seeded 3-regular graph, sized so the variable count
// is about `n`. The family name registry understands "tseitin_rand3_n<N>".
inline CnfFormula make_family_instance(const std::string& family, uint64_t seed, uint32_t* n_out) {
    const std::string prefix = "tseitin_rand3_n";
    if (family.rfind(prefix, 0) == 0) {
        uint32_t n = static_cast<uint32_t>(std::stoul(family.substr(prefix.size())));
        // 3-regular graph has 3V/2 edges; pick V so the edge count is ~n
        uint32_t verts = std::max<uint32_t>(4, (2 * n / 3) & ~1u);
        Graph g = Graph::cubic_ring(verts, hash_pair(seed, 0xA11CE));
        std::vector<bool> charge(verts);
        for (uint32_t v = 0; v < verts; ++v) charge[v] = hash_pair(seed, 0xC0FFEE + v) & 1;
        if (n_out) *n_out = n;
        return tseitin_cnf(g, charge);
    }
    throw std::domain_error("unknown family: " + family);
}

// One ablation measurement: restrict the instance, select the clause window
// around the lowest-indexed live variable, canonicalize per the regime, and
// take the exact rank of the degree-truncated coefficient matrix.
//
// The matrix here is the column-submatrix of the boolean-ambient construction
// keeping monomials of degree <= ell; cols is the full ambient dimension of
// that truncation. Submatrix rank keeps every monotonicity guarantee.
inline AblationRecord ablate_one(const std::string& family, const CnfFormula& instance,
                                 uint32_t n, Regime regime, uint64_t seed,
                                 const AblationParams& prm) {
    AblationRecord rec;
    rec.family = family;
    rec.regime = regime;
    rec.n = n;
    rec.seed = seed;
    try {
        FieldCtx ctx(prm.prime);
        Restriction rho = Restriction::generate(instance.nvars, prm.star_rate, hash_pair(seed, 1));
        CnfFormula reduced = apply_restriction(instance, rho);

        // surviving clauses with at least one live literal
        std::vector<size_t> alive;
        for (size_t j = 0; j < reduced.clauses.size(); ++j)
            if (!reduced.clauses[j].empty()) alive.push_back(j);
        if (alive.empty()) throw SizeError("restriction left no live clauses");

        // window: the clause containing the lowest live variable, plus every
        // clause sharing a variable with it (radius 1 in the clause graph)
        uint32_t lowest = UINT32_MAX;
        for (size_t j : alive)
            for (const Lit& l : reduced.clauses[j]) lowest = std::min(lowest, l.var);
        size_t anchor = SIZE_MAX;
        for (size_t j : alive) {
            for (const Lit& l : reduced.clauses[j])
                if (l.var == lowest) { anchor = j; break; }
            if (anchor != SIZE_MAX) break;
        }
        std::set<uint32_t> anchor_vars;
        for (const Lit& l : reduced.clauses[anchor]) anchor_vars.insert(l.var);
        std::vector<size_t> window{anchor};
        for (size_t j : alive) {
            if (j == anchor) continue;
            bool touches = false;
            for (const Lit& l : reduced.clauses[j]) touches |= anchor_vars.count(l.var) > 0;
            if (touches) window.push_back(j);
            if (window.size() >= prm.max_window_clauses) break;
        }

        auto types = detail::window_var_types(reduced, window);
        std::set<detail::VarType> distinct;
        for (const auto& [v, t] : types) distinct.insert(t);
        rec.profiles = static_cast<uint32_t>(distinct.size());

        // regime renaming over the window variables
        std::vector<uint32_t> vars;
        for (const auto& [v, t] : types) vars.push_back(v);
        std::sort(vars.begin(), vars.end());
        std::map<uint32_t, uint32_t> to_dense;
        uint32_t live;
        if (regime == Regime::Full) {
            // identify variables of equal type: interface-anonymous quotient
            std::map<detail::VarType, uint32_t> type_index;
            for (const auto& t : distinct)
                type_index.emplace(t, static_cast<uint32_t>(type_index.size()));
            for (uint32_t v : vars) to_dense[v] = type_index.at(types.at(v));
            live = static_cast<uint32_t>(type_index.size());
        } else {
            // RAW keeps identities; WEAK canonically renames. Both produce the
            // same dense indexing for the matrix, which is exactly the
            // renaming invariance of the rank.
            for (uint32_t v : vars) to_dense[v] = static_cast<uint32_t>(to_dense.size());
            live = static_cast<uint32_t>(vars.size());
        }
        rec.live = live;
        if (live > prm.live_cap) throw SizeError("window has too many live variables");

        // window polynomial: product of clause sums in the dense space
        SparsePoly p = SparsePoly::constant(ctx, live, 1);
        for (size_t j : window) {
            Clause dense_clause;
            for (const Lit& l : reduced.clauses[j])
                dense_clause.push_back(Lit{to_dense.at(l.var), l.positive});
            p = p.mul(clause_sum(ctx, live, dense_clause), /*boolean_reduce=*/true);
            if (p.term_count() > prm.term_cap) throw SizeError("window polynomial too large");
        }

        // ambient truncated column space: square-free monomials of degree <= ell
        uint64_t cols = 0;
        for (uint32_t d = 0; d <= prm.ell; ++d) cols += binomial(live, d);
        rec.cols = cols;

        std::vector<Monomial> col_list;
        std::map<Monomial, size_t> col_index;
        spdp::detail::for_each_shift_monomial(live, prm.ell, true, ShiftDegree::UpTo,
                                              [&](const Monomial& m) {
                                                  col_index.emplace(m, col_list.size());
                                                  col_list.push_back(m);
                                              });

        RowReducer reducer(ctx, col_list.size());
        for_each_subset(live, prm.kappa, [&](const std::vector<uint32_t>& s) {
            if (reducer.saturated()) return;
            SparsePoly ds = p.derive(s);
            if (ds.is_zero()) return;
            spdp::detail::for_each_shift_monomial(
                live, prm.ell, true, ShiftDegree::UpTo, [&](const Monomial& u) {
                    if (reducer.saturated()) return;
                    SparsePoly row = ds.shift(u, true);
                    std::vector<uint64_t> vec(col_list.size(), 0);
                    bool any = false;
                    for (const auto& [m, c] : row.terms()) {
                        auto it = col_index.find(m);
                        if (it != col_index.end()) { vec[it->second] = c; any = true; }
                    }
                    if (any) reducer.insert(std::move(vec));
                });
        });
        rec.rank = reducer.rank();
        rec.ratio = cols ? static_cast<double>(rec.rank) / static_cast<double>(cols) : 0.0;
    } catch (const std::exception& e) {
        rec.error = true;
        rec.error_msg = e.what();
    }
    return rec;
}

inline std::vector<AblationRecord> run_ablation(const std::string& family,
                                                const std::vector<Regime>& regimes,
                                                const std::vector<uint64_t>& seeds,
                                                const AblationParams& prm = {}) {
    std::vector<AblationRecord> out;
    for (uint64_t seed : seeds) {
        uint32_t n = 0;
        CnfFormula instance = make_family_instance(family, seed, &n);
        for (Regime r : regimes) out.push_back(ablate_one(family, instance, n, r, seed, prm));
    }
    std::sort(out.begin(), out.end(), [](const AblationRecord& a, const AblationRecord& b) {
        if (a.family != b.family) return a.family < b.family;
        if (a.regime != b.regime) return static_cast<int>(a.regime) < static_cast<int>(b.regime);
        return a.seed < b.seed;
    });
    return out;
}

// E_tau: fraction of RAW-regime records with rank/cols <= tau.
inline double emergence_score(const std::vector<AblationRecord>& records, double tau) {
    size_t raw = 0, hit = 0;
    for (const auto& r : records) {
        if (r.regime != Regime::Raw || r.error) continue;
        ++raw;
        if (r.ratio <= tau) ++hit;
    }
    if (raw == 0) throw UndefinedScore("emergence_score: no RAW records");
    return static_cast<double>(hit) / static_cast<double>(raw);
}

inline const char* kAblationCsvHeader = "family,regime,n,L,P,cols,rank,ratio,seed";

inline void write_ablation_csv(const std::vector<AblationRecord>& records, std::ostream& os) {
    os << kAblationCsvHeader << "\n";
    os.precision(17);
    for (const auto& r : records) {
        if (r.error) continue;  // error records stay in memory only
        os << r.family << "," << regime_name(r.regime) << "," << r.n << "," << r.live << ","
           << r.profiles << "," << r.cols << "," << r.rank << "," << r.ratio << "," << r.seed
           << "\n";
    }
}

inline std::vector<AblationRecord> read_ablation_csv(std::istream& is) {
    std::vector<AblationRecord> out;
    std::string line;
    if (!std::getline(is, line) || line != kAblationCsvHeader)
        throw std::domain_error("read_ablation_csv: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        AblationRecord r;
        std::getline(ss, r.family, ',');
        std::getline(ss, field, ',');
        r.regime = parse_regime(field);
        std::getline(ss, field, ','); r.n = static_cast<uint32_t>(std::stoul(field));
        std::getline(ss, field, ','); r.live = static_cast<uint32_t>(std::stoul(field));
        std::getline(ss, field, ','); r.profiles = static_cast<uint32_t>(std::stoul(field));
        std::getline(ss, field, ','); r.cols = std::stoull(field);
        std::getline(ss, field, ','); r.rank = std::stoull(field);
        std::getline(ss, field, ','); r.ratio = std::stod(field);
        std::getline(ss, field, ','); r.seed = std::stoull(field);
        out.push_back(std::move(r));
    }
    return out;
}

// LaTeX table mirroring the CSV schema, mean +/- SD per (family, regime).
inline void write_ablation_latex(const std::vector<AblationRecord>& records, std::ostream& os) {
    struct Agg {
        std::vector<double> live, profiles, cols, rank, ratio;
    };
    std::map<std::pair<std::string, Regime>, Agg> groups;
    for (const auto& r : records) {
        if (r.error) continue;
        auto& g = groups[{r.family, r.regime}];
        g.live.push_back(r.live);
        g.profiles.push_back(r.profiles);
        g.cols.push_back(static_cast<double>(r.cols));
        g.rank.push_back(static_cast<double>(r.rank));
        g.ratio.push_back(r.ratio);
    }
    auto mean_sd = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m += x;
        m /= v.empty() ? 1 : v.size();
        double s = 0;
        for (double x : v) s += (x - m) * (x - m);
        s = v.size() > 1 ? std::sqrt(s / (v.size() - 1)) : 0.0;
        return std::make_pair(m, s);
    };
    os << "\\begin{tabular}{llrrrrr}\n\\toprule\n"
       << "Family & Regime & $L$ & $P$ & cols & $r$ & $r/\\mathrm{cols}$ \\\\\n\\midrule\n";
    char buf[256];
    for (const auto& [key, g] : groups) {
        auto [lm, ls] = mean_sd(g.live);
        auto [pm, ps] = mean_sd(g.profiles);
        auto [cm, csd] = mean_sd(g.cols);
        auto [rm, rs] = mean_sd(g.rank);
        auto [qm, qs] = mean_sd(g.ratio);
        std::snprintf(buf, sizeof(buf),
                      "%s & %s & %.1f$\\pm$%.1f & %.1f$\\pm$%.1f & %.0f & %.1f$\\pm$%.1f & %.3f \\\\\n",
                      key.first.c_str(), regime_name(key.second), lm, ls, pm, ps, cm, rm, rs, qm);
        (void)qs;
        os << buf;
    }
    os << "\\bottomrule\n\\end{tabular}\n";
}

}  // namespace spdp
