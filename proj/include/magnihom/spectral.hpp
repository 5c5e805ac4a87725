#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magnihom/chain_complex.hpp"
#include "magnihom/matrix.hpp"
#include "magnihom/metric_space.hpp"
#include "magnihom/simplicial.hpp"

namespace magnihom {

/// One (l, a, b) summand of the magnitude complex together with its
/// smoothness filtration: bases of every degree up to max_degree, the
/// smoothness count of each basis chain, and the full boundary matrices.
///
/// F_p C_n is the coordinate sublattice spanned by chains with sigma <= p;
/// the boundary carries F_p into F_{p-1} because deleting a smooth point
/// never makes a neighbour smooth.
struct FilteredComplex {
    FiniteMetricSpace space;
    Rational length;
    PointId a = 0, b = 0;
    std::size_t max_degree = 0;

    struct Degree {
        ChainBasis basis;
        std::vector<std::size_t> sigma;
        IntMatrix boundary;  // into degree - 1
    };
    std::vector<Degree> degrees;

    const Degree& at(std::size_t n) const { return degrees[n]; }

    /// Z^r_{p,q} = { x in F_p C_n : dx in F_{p-r} C_{n-1} } with n = p + q,
    /// returned as a lattice basis in chain coordinates of degree n.
    /// Filtration levels below zero mean the zero subgroup.
    IntMatrix z_lattice(std::size_t n, std::ptrdiff_t p, std::ptrdiff_t r) const {
        const Degree& deg = degrees[n];
        const std::size_t dim = deg.basis.size();
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < dim; ++j)
            if (static_cast<std::ptrdiff_t>(deg.sigma[j]) <= p) cols.push_back(j);
        if (cols.empty()) return IntMatrix(dim, 0);

        std::vector<std::size_t> rows;
        if (n > 0) {
            const Degree& below = degrees[n - 1];
            for (std::size_t i = 0; i < below.basis.size(); ++i)
                if (static_cast<std::ptrdiff_t>(below.sigma[i]) > p - r) rows.push_back(i);
        }
        IntMatrix restricted(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                restricted.at(i, j) = deg.boundary.at(rows[i], cols[j]);
        const IntMatrix k = kernel_basis(restricted);
        IntMatrix embedded(dim, k.cols);
        for (std::size_t j = 0; j < k.cols; ++j)
            for (std::size_t i = 0; i < cols.size(); ++i)
                embedded.at(cols[i], j) = k.at(i, j);
        return embedded;
    }
};

inline std::shared_ptr<const FilteredComplex> build_filtered_complex(
    const FiniteMetricSpace& m, const Rational& length, PointId a, PointId b,
    std::size_t max_degree) {
    auto fc = std::make_shared<FilteredComplex>();
    fc->space = m;
    fc->length = length;
    fc->a = a;
    fc->b = b;
    fc->max_degree = max_degree;
    fc->degrees.resize(max_degree + 1);
    for (std::size_t n = 0; n <= max_degree; ++n) {
        auto& deg = fc->degrees[n];
        deg.basis = enumerate_chains(m, n, length, a, b);
        deg.sigma.reserve(deg.basis.size());
        for (const Chain& c : deg.basis.chains) deg.sigma.push_back(smoothness_count(m, c));
        if (n == 0)
            deg.boundary = IntMatrix(0, deg.basis.size());
        else
            deg.boundary = boundary_matrix(m, deg.basis, fc->degrees[n - 1].basis);
    }
    return fc;
}

/// One (p,q) spot of a page: the subquotient Z^r / (Z^{r-1} + d Z^{r-1})
/// presented by an explicit generator lattice and relation coordinates.
struct PageEntry {
    std::size_t p = 0, q = 0;
    std::size_t rank = 0;
    std::vector<Int> torsion;
    IntMatrix generators;  // columns in chain coordinates of degree p+q
    SmithResult gen_snf;
    IntMatrix relations;  // relation columns, in generator coordinates
    SmithResult rel_snf;
};

struct SpectralPage {
    std::shared_ptr<const FilteredComplex> complex;
    std::size_t r = 1;
    std::size_t max_n = 0;  // entries cover p + q <= max_n
    std::map<std::pair<std::size_t, std::size_t>, PageEntry> entries;
    // d^r out of each (p,q), expressed in the generator coordinates of the
    // target entry (p-r, q+r-1); present only when both entries exist
    std::map<std::pair<std::size_t, std::size_t>, IntMatrix> differentials;

    const PageEntry& entry(std::size_t p, std::size_t q) const { return entries.at({p, q}); }
};

namespace detail {

inline IntMatrix concat_cols(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols == 0) return y;
    if (y.cols == 0) return x;
    IntMatrix out(x.rows, x.cols + y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
        for (std::size_t j = 0; j < y.cols; ++j) out.at(i, x.cols + j) = y.at(i, j);
    }
    return out;
}

inline PageEntry compute_entry(const FilteredComplex& fc, std::size_t r, std::size_t p,
                               std::size_t q) {
    PageEntry e;
    e.p = p;
    e.q = q;
    const std::size_t n = p + q;
    const auto sp = static_cast<std::ptrdiff_t>(p);
    const auto sr = static_cast<std::ptrdiff_t>(r);

    e.generators = fc.z_lattice(n, sp, sr);
    if (e.generators.cols == 0) {
        e.relations = IntMatrix(0, 0);
        return e;
    }
    const IntMatrix b_low = fc.z_lattice(n, sp - 1, sr - 1);
    const IntMatrix b_pre = fc.z_lattice(n + 1, sp + sr - 1, sr - 1);
    const IntMatrix b_img = fc.degrees[n + 1].boundary.multiply(b_pre);
    const IntMatrix b_all = concat_cols(b_low, b_img);

    e.gen_snf = smith_normal_form(e.generators);
    e.relations = IntMatrix(e.generators.cols, b_all.cols);
    for (std::size_t j = 0; j < b_all.cols; ++j) {
        auto coords = lattice_solve(e.gen_snf, b_all.column(j));
        if (!coords)
            throw std::logic_error("spectral page: boundary escapes the expected filtration");
        for (std::size_t i = 0; i < e.generators.cols; ++i) e.relations.at(i, j) = (*coords)[i];
    }
    e.rel_snf = smith_normal_form(e.relations);
    e.rank = e.generators.cols - e.rel_snf.rank;
    for (const Int& f : e.rel_snf.invariant_factors)
        if (f > 1) e.torsion.push_back(f);
    e.torsion = normalize_torsion(e.torsion);
    return e;
}

}  // namespace detail

/// Assembles page r of the spectral sequence directly from the filtered
/// complex, as the subquotients Z^r / (Z^{r-1} + d Z^{r-1}) with integer
/// presentations, together with the d^r matrices induced by the boundary
/// on representatives.
inline SpectralPage assemble_page(std::shared_ptr<const FilteredComplex> fc, std::size_t r,
                                  std::size_t max_n) {
    if (max_n + 1 > fc->max_degree)
        throw std::invalid_argument("assemble_page: filtered complex is too shallow");
    SpectralPage page;
    page.complex = fc;
    page.r = r;
    page.max_n = max_n;
    for (std::size_t n = 0; n <= max_n; ++n)
        for (std::size_t p = 0; p <= n; ++p)
            page.entries[{p, n - p}] = detail::compute_entry(*fc, r, p, n - p);

    for (auto& [key, src] : page.entries) {
        const auto [p, q] = key;
        if (p < r || p + q == 0) continue;
        auto tgt_it = page.entries.find({p - r, q + r - 1});
        if (tgt_it == page.entries.end()) continue;  // target degree not tracked
        const PageEntry& tgt = tgt_it->second;
        IntMatrix d(tgt.generators.cols, src.generators.cols);
        if (src.generators.cols > 0 && tgt.generators.cols > 0) {
            const std::size_t n = p + q;
            for (std::size_t j = 0; j < src.generators.cols; ++j) {
                const auto v = fc->degrees[n].boundary.apply(src.generators.column(j));
                auto coords = lattice_solve(tgt.gen_snf, v);
                if (!coords)
                    throw std::logic_error(
                        "spectral page: representative boundary misses the target lattice");
                for (std::size_t i = 0; i < tgt.generators.cols; ++i) d.at(i, j) = (*coords)[i];
            }
        }
        page.differentials[key] = std::move(d);
    }
    return page;
}

/// The E^1 page: E^1_{p,q} is free on the proper (p+q)-chains of length l
/// with exactly p smooth points.
inline SpectralPage e1_page(const FiniteMetricSpace& m, const Rational& length, PointId a,
                            PointId b, std::size_t max_n) {
    return assemble_page(build_filtered_complex(m, length, a, b, max_n + 1), 1, max_n);
}

inline SpectralPage page_advance(const SpectralPage& page) {
    return assemble_page(page.complex, page.r + 1, page.max_n);
}

/// Indices (into the degree p+q basis) of the chains with sigma = p; these
/// are the natural generators of E^1_{p,q}.
inline std::vector<std::size_t> sigma_chain_indices(const FilteredComplex& fc, std::size_t p,
                                                    std::size_t q) {
    std::vector<std::size_t> out;
    const auto& deg = fc.degrees[p + q];
    for (std::size_t j = 0; j < deg.basis.size(); ++j)
        if (deg.sigma[j] == p) out.push_back(j);
    return out;
}

/// The first differential on the sigma = p generators: faces obtained by
/// deleting a smooth point that land at sigma = p - 1, with sign (-1)^i.
/// Rows index the sigma = p - 1 chains of degree p + q - 1.
inline IntMatrix d1_matrix(const SpectralPage& page, std::size_t p, std::size_t q) {
    if (page.r != 1) throw std::invalid_argument("d1_matrix: not an E^1 page");
    const FilteredComplex& fc = *page.complex;
    const auto cols = sigma_chain_indices(fc, p, q);
    if (p + q == 0 || p == 0)
        return IntMatrix(0, cols.size());
    const auto rows = sigma_chain_indices(fc, p - 1, q);
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;

    const auto& deg = fc.degrees[p + q];
    const auto& below = fc.degrees[p + q - 1];
    IntMatrix out(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Chain& c = deg.basis.chains[cols[j]];
        for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
            if (!between(fc.space, c.points[i - 1], c.points[i], c.points[i + 1])) continue;
            const Chain f = c.face(i);
            const auto idx = below.basis.index_of(f);
            if (!idx) throw std::logic_error("d1_matrix: face missing from basis");
            auto it = row_of.find(*idx);
            if (it == row_of.end()) continue;  // face has sigma < p - 1
            out.at(it->second, j) += (i % 2 == 0) ? 1 : -1;
        }
    }
    return out;
}

/// Frame-and-length-tuple block structure of E^1_{p,q}: chains grouped by
/// their frame and by the arc lengths between consecutive frame points.
struct FrameBlock {
    Chain frame_chain;
    std::vector<Rational> length_tuple;
    std::vector<std::size_t> chain_indices;  // into the degree p+q basis
};

inline std::vector<Rational> block_length_tuple(const FiniteMetricSpace& m, const Chain& c) {
    std::vector<Rational> tuple;
    Rational acc = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        acc += m.distance(c.points[i - 1], c.points[i]);
        const bool smooth = i + 1 < c.points.size() &&
                            between(m, c.points[i - 1], c.points[i], c.points[i + 1]);
        if (!smooth) {  // singular point closes the current block
            tuple.push_back(acc);
            acc = 0;
        }
    }
    return tuple;
}

inline std::vector<FrameBlock> frame_blocks(const FilteredComplex& fc, std::size_t p,
                                            std::size_t q) {
    std::map<std::pair<Chain, std::vector<Rational>>, std::vector<std::size_t>> groups;
    const auto& deg = fc.degrees[p + q];
    for (std::size_t j : sigma_chain_indices(fc, p, q)) {
        const Chain& c = deg.basis.chains[j];
        groups[{frame(fc.space, c), block_length_tuple(fc.space, c)}].push_back(j);
    }
    std::vector<FrameBlock> out;
    for (auto& [key, idx] : groups) out.push_back({key.first, key.second, std::move(idx)});
    return out;
}

/// Compares the stabilized graded ranks of the spectral sequence with the
/// directly computed magnitude homology.  A mismatch would be a bug, not a
/// finding; the report records both sides for each degree.
struct ConvergenceReport {
    struct Row {
        std::size_t n = 0;
        std::size_t graded_rank_sum = 0;
        std::size_t direct_rank = 0;
        bool match = true;
    };
    bool ok = true;
    std::vector<Row> rows;
};

inline std::size_t e_infinity_rank(const FilteredComplex& fc, std::size_t p, std::size_t q) {
    // differentials touching (p,q) vanish once r exceeds both p and
    // (p+q+1) - p, so this page equals E^infinity there
    return detail::compute_entry(fc, p + q + 2, p, q).rank;
}

inline ConvergenceReport convergence_check(const FiniteMetricSpace& m, const Rational& length,
                                           PointId a, PointId b, std::size_t max_n) {
    const auto fc = build_filtered_complex(m, length, a, b, max_n + 1);
    ConvergenceReport report;
    for (std::size_t n = 0; n <= max_n; ++n) {
        ConvergenceReport::Row row;
        row.n = n;
        for (std::size_t p = 0; p <= n; ++p) row.graded_rank_sum += e_infinity_rank(*fc, p, n - p);
        row.direct_rank = homology(m, n, length, a, b).group.rank;
        row.match = row.graded_rank_sum == row.direct_rank;
        report.ok = report.ok && row.match;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace magnihom
