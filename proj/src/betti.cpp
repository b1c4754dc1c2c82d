#include "vreslab/betti.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "vreslab/diff_calculus.hpp"

namespace vreslab {

// ---------------------------------------------------------------------------
// GradedModulePresentation

GradedModulePresentation::GradedModulePresentation(CoxRing ring, FieldPrime field, BiDegree window)
    : ring_(ring), field_(field), window_(window) {
    if (!nonnegative(window)) throw std::invalid_argument("presentation: negative window");
    active_.resize(ring.num_vars());
    std::iota(active_.begin(), active_.end(), 0);
    const auto cells = static_cast<std::size_t>(window.i + 1) * (window.j + 1);
    dims_.assign(cells, 0);
    mults_.assign(cells, std::vector<FpMatrix>(ring.num_vars()));
}

std::size_t GradedModulePresentation::index(BiDegree d) const {
    if (!nonnegative(d) || !leq(d, window_))
        throw std::out_of_range("presentation: degree " + to_string(d) + " outside window " +
                                to_string(window_));
    return static_cast<std::size_t>(d.i) * (window_.j + 1) + d.j;
}

std::size_t GradedModulePresentation::dim(BiDegree d) const {
    if (!nonnegative(d)) return 0;
    return dims_[index(d)];
}

const FpMatrix& GradedModulePresentation::mult(int var, BiDegree src) const {
    return mults_[index(src)].at(var);
}

void GradedModulePresentation::set_dim(BiDegree d, std::size_t dim) { dims_[index(d)] = dim; }

void GradedModulePresentation::set_mult(int var, BiDegree src, FpMatrix map) {
    const BiDegree tgt = src + ring_.degree_of(var);
    if (map.rows() != dim(tgt) || map.cols() != dim(src))
        throw std::invalid_argument("presentation: multiplication matrix has wrong shape at " +
                                    to_string(src));
    mults_[index(src)].at(var) = std::move(map);
}

HilbertMatrix GradedModulePresentation::hilbert() const {
    HilbertMatrix h(window_.i, window_.j);
    for (int i = 0; i <= window_.i; ++i)
        for (int j = 0; j <= window_.j; ++j) h(i, j) = static_cast<std::int64_t>(dim({i, j}));
    return h;
}

bool GradedModulePresentation::maps_commute() const {
    for (int i = 0; i <= window_.i; ++i) {
        for (int j = 0; j <= window_.j; ++j) {
            const BiDegree d{i, j};
            for (std::size_t a = 0; a < active_.size(); ++a) {
                for (std::size_t b = a + 1; b < active_.size(); ++b) {
                    const int u = active_[a], v = active_[b];
                    const BiDegree du = d + ring_.degree_of(u), dv = d + ring_.degree_of(v);
                    const BiDegree duv = du + ring_.degree_of(v);
                    if (!leq(duv, window_)) continue;
                    if (!(mult(v, du) * mult(u, d) == mult(u, dv) * mult(v, d))) return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Presentations

namespace {

// Coordinates of `w` in the quotient F^dim / rowspace(basis): reduce, then read
// the non-pivot entries in increasing column order.
std::vector<Residue> quotient_coordinates(const EchelonBasis& sub, const std::vector<std::size_t>& free_cols,
                                          std::vector<Residue> w) {
    sub.reduce(w);
    std::vector<Residue> c(free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) c[k] = w[free_cols[k]];
    return c;
}

std::vector<std::size_t> free_columns(const EchelonBasis& sub) {
    std::vector<bool> piv(sub.dim(), false);
    for (auto p : sub.pivots()) piv[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < sub.dim(); ++c)
        if (!piv[c]) out.push_back(c);
    return out;
}

template <class F>
void for_each_degree(BiDegree window, F&& fn) {
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j) fn(BiDegree{i, j});
}

}  // namespace

GradedModulePresentation quotient_presentation(const IdealPieces& pieces, CoxRing ring,
                                               FieldPrime field, BiDegree window) {
    GradedModulePresentation pres(ring, field, window);
    const auto cells = static_cast<std::size_t>(window.i + 1) * (window.j + 1);
    std::vector<EchelonBasis> ideal;
    std::vector<std::vector<std::size_t>> free;
    ideal.reserve(cells);
    auto idx = [&](BiDegree d) { return static_cast<std::size_t>(d.i) * (window.j + 1) + d.j; };

    for_each_degree(window, [&](BiDegree d) {
        const auto dim = static_cast<std::size_t>(ring.dim(d));
        EchelonBasis basis(dim, field);
        FpMatrix rows = pieces(d);
        if (rows.cols() != dim)
            throw std::invalid_argument("quotient_presentation: ideal piece at " + to_string(d) +
                                        " has the wrong width");
        for (std::size_t r = 0; r < rows.rows(); ++r) basis.insert(rows.row(r));
        free.push_back(free_columns(basis));
        pres.set_dim(d, free.back().size());
        ideal.push_back(std::move(basis));
    });

    for_each_degree(window, [&](BiDegree d) {
        for (int v = 0; v < ring.num_vars(); ++v) {
            const BiDegree e = d + ring.degree_of(v);
            if (!leq(e, window)) continue;
            const auto image = mult_index_map(v, d, ring.n, ring.m);
            const auto& src = ideal[idx(d)];
            const auto& tgt = ideal[idx(e)];
            const auto tdim = static_cast<std::size_t>(ring.dim(e));
            // Closure: v * J_d inside J_e.
            std::vector<Residue> w(tdim);
            for (std::size_t r = 0; r < src.rank(); ++r) {
                std::fill(w.begin(), w.end(), 0);
                auto row = src.row(r);
                for (std::size_t k = 0; k < row.size(); ++k) w[image[k]] = row[k];
                if (!tgt.reduce(w))
                    throw ClosureViolated("quotient_presentation: " + ring.var_name(v) + " * J" +
                                          to_string(d) + " is not inside J" + to_string(e));
            }
            const auto& fd = free[idx(d)];
            FpMatrix m(free[idx(e)].size(), fd.size(), field);
            for (std::size_t c = 0; c < fd.size(); ++c) {
                std::vector<Residue> u(tdim, 0);
                u[image[fd[c]]] = 1;
                auto coords = quotient_coordinates(tgt, free[idx(e)], std::move(u));
                for (std::size_t r = 0; r < coords.size(); ++r) m(r, c) = coords[r];
            }
            pres.set_mult(v, d, std::move(m));
        }
    });
    return pres;
}

GradedModulePresentation point_module_presentation(const PointSet& pts, int t, BiDegree window) {
    if (t < 0) throw std::invalid_argument("point_module_presentation: t must be nonnegative");
    const auto& ring = pts.ring();
    const auto& f = pts.field();
    GradedModulePresentation pres(ring, f, window);
    EvaluationSpaces spaces(pts, window);
    std::vector<std::vector<Residue>> values(ring.num_vars());
    for (int v = 0; v < ring.num_vars(); ++v) values[v] = pts.variable_values(v);

    for_each_degree(window, [&](BiDegree d) {
        pres.set_dim(d, d.i >= t ? spaces.at(d).rank() : static_cast<std::size_t>(ring.dim(d)));
    });

    for_each_degree(window, [&](BiDegree d) {
        for (int v = 0; v < ring.num_vars(); ++v) {
            const BiDegree e = d + ring.degree_of(v);
            if (!leq(e, window)) continue;
            FpMatrix m(pres.dim(e), pres.dim(d), f);
            if (d.i >= t) {
                const auto& src = spaces.at(d);
                const auto& tgt = spaces.at(e);
                std::vector<Residue> w(pts.size());
                for (std::size_t c = 0; c < src.rank(); ++c) {
                    auto row = src.row(c);
                    for (std::size_t s = 0; s < w.size(); ++s) w[s] = f.mul(row[s], values[v][s]);
                    auto coords = tgt.coordinates(w);
                    for (std::size_t r = 0; r < coords.size(); ++r) m(r, c) = coords[r];
                }
            } else if (e.i < t) {
                m = mult_map(v, d, ring.n, ring.m, f);
            } else {
                // Crossing into the evaluated range: x_v * mu evaluated at the points.
                const auto image = mult_index_map(v, d, ring.n, ring.m);
                const FpMatrix ev = evaluation_matrix(pts, e);
                const auto& tgt = spaces.at(e);
                std::vector<Residue> w(pts.size());
                for (std::size_t c = 0; c < image.size(); ++c) {
                    for (std::size_t s = 0; s < w.size(); ++s) w[s] = ev(s, image[c]);
                    auto coords = tgt.coordinates(w);
                    for (std::size_t r = 0; r < coords.size(); ++r) m(r, c) = coords[r];
                }
            }
            pres.set_mult(v, d, std::move(m));
        }
    });
    return pres;
}

GradedModulePresentation reduce_by_regular_variable(const GradedModulePresentation& pres, int var) {
    const auto& ring = pres.ring();
    const auto& f = pres.field();
    const BiDegree window = pres.window();
    const BiDegree step = ring.degree_of(var);
    const auto& active = pres.active_vars();
    if (std::find(active.begin(), active.end(), var) == active.end())
        throw std::invalid_argument("reduce_by_regular_variable: variable is not active");

    GradedModulePresentation out(ring, f, window);
    std::vector<int> rest;
    for (int v : active)
        if (v != var) rest.push_back(v);
    out.set_active_vars(rest);

    const auto cells = static_cast<std::size_t>(window.i + 1) * (window.j + 1);
    std::vector<EchelonBasis> image;
    std::vector<std::vector<std::size_t>> free;
    image.reserve(cells);
    auto idx = [&](BiDegree d) { return static_cast<std::size_t>(d.i) * (window.j + 1) + d.j; };

    for_each_degree(window, [&](BiDegree d) {
        EchelonBasis img(pres.dim(d), f);
        const BiDegree src = d - step;
        if (nonnegative(src)) {
            const FpMatrix& m = pres.mult(var, src);
            std::vector<Residue> col(m.rows());
            for (std::size_t c = 0; c < m.cols(); ++c) {
                for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m(r, c);
                img.insert(col);
            }
            if (img.rank() != m.cols())
                throw NotRegular("reduce_by_regular_variable: " + ring.var_name(var) +
                                 " is a zero divisor in degree " + to_string(src));
        }
        free.push_back(free_columns(img));
        out.set_dim(d, free.back().size());
        image.push_back(std::move(img));
    });

    for_each_degree(window, [&](BiDegree d) {
        for (int v : rest) {
            const BiDegree e = d + ring.degree_of(v);
            if (!leq(e, window)) continue;
            const FpMatrix& m = pres.mult(v, d);
            const auto& fd = free[idx(d)];
            FpMatrix q(free[idx(e)].size(), fd.size(), f);
            for (std::size_t c = 0; c < fd.size(); ++c) {
                std::vector<Residue> w(m.rows());
                for (std::size_t r = 0; r < m.rows(); ++r) w[r] = m(r, fd[c]);
                auto coords = quotient_coordinates(image[idx(e)], free[idx(e)], std::move(w));
                for (std::size_t r = 0; r < coords.size(); ++r) q(r, c) = coords[r];
            }
            out.set_mult(v, d, std::move(q));
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// BettiTable

std::int64_t BettiTable::at(int k, BiDegree d) const {
    auto it = entries_.find({k, d});
    return it == entries_.end() ? 0 : it->second;
}

void BettiTable::set(int k, BiDegree d, std::int64_t beta) {
    if (beta < 0) throw std::invalid_argument("BettiTable: negative Betti number");
    if (beta == 0)
        entries_.erase({k, d});
    else
        entries_[{k, d}] = beta;
}

int BettiTable::max_stage() const {
    int k = -1;
    for (const auto& [key, beta] : entries_) k = std::max(k, key.first);
    return k;
}

std::vector<std::int64_t> BettiTable::totals() const {
    std::vector<std::int64_t> t(static_cast<std::size_t>(max_stage() + 1), 0);
    for (const auto& [key, beta] : entries_) t[key.first] += beta;
    return t;
}

IntMatrix BettiTable::alternating_collapse() const {
    IntMatrix b(window_.i, window_.j);
    for (const auto& [key, beta] : entries_) {
        const auto& [k, d] = key;
        b(d.i, d.j) += (k % 2 == 0 ? beta : -beta);
    }
    return b;
}

std::map<BiDegree, std::int64_t> BettiTable::stage(int k) const {
    std::map<BiDegree, std::int64_t> out;
    for (const auto& [key, beta] : entries_)
        if (key.first == k) out[key.second] = beta;
    return out;
}

// ---------------------------------------------------------------------------
// Koszul homology

namespace {

struct Block {
    unsigned subset;   // bitmask over positions in the active variable list
    BiDegree degree;   // degree of the module piece sitting in this block
    std::size_t offset;
    std::size_t dim;
};

// Blocks of the degree-d strand of K_k(vars) (x) M.
std::vector<Block> strand_blocks(const GradedModulePresentation& pres, const std::vector<int>& vars,
                                 const std::vector<std::vector<unsigned>>& subsets, int k, BiDegree d,
                                 std::size_t& total) {
    std::vector<Block> blocks;
    total = 0;
    const auto& ring = pres.ring();
    for (unsigned s : subsets[k]) {
        BiDegree shift{0, 0};
        for (std::size_t a = 0; a < vars.size(); ++a)
            if (s & (1u << a)) shift = shift + ring.degree_of(vars[a]);
        const BiDegree src = d - shift;
        const std::size_t dim = nonnegative(src) ? pres.dim(src) : 0;
        if (dim == 0) continue;
        blocks.push_back({s, src, total, dim});
        total += dim;
    }
    return blocks;
}

}  // namespace

BettiTable betti_numbers(const GradedModulePresentation& pres, BettiOptions opts) {
    const auto& vars = pres.active_vars();
    const auto& f = pres.field();
    const int nv = static_cast<int>(vars.size());
    const BiDegree window = pres.window();
    const int top = opts.max_stage < 0 ? nv : std::min(opts.max_stage, nv);

    // Subsets by size, increasing bitmask order.
    std::vector<std::vector<unsigned>> subsets(nv + 1);
    for (unsigned s = 0; s < (1u << nv); ++s) subsets[std::popcount(s)].push_back(s);

    BettiTable table(window);
    for_each_degree(window, [&](BiDegree d) {
        // Stage dims and differential ranks for k = 0..top+1.
        std::vector<std::size_t> dims(nv + 2, 0);
        std::vector<std::vector<Block>> blocks(nv + 2);
        const int last = std::min(top + 1, nv);
        for (int k = 0; k <= last; ++k) blocks[k] = strand_blocks(pres, vars, subsets, k, d, dims[k]);

        std::vector<std::size_t> ranks(nv + 2, 0);  // ranks[k] = rank of d_k : C_k -> C_{k-1}
        for (int k = 1; k <= last; ++k) {
            if (dims[k] == 0 || dims[k - 1] == 0) continue;
            FpMatrix dk(dims[k - 1], dims[k], f);
            for (const Block& b : blocks[k]) {
                int pos = 0;
                for (int a = 0; a < nv; ++a) {
                    if (!(b.subset & (1u << a))) continue;
                    const unsigned smaller = b.subset & ~(1u << a);
                    auto it = std::find_if(blocks[k - 1].begin(), blocks[k - 1].end(),
                                           [&](const Block& c) { return c.subset == smaller; });
                    if (it != blocks[k - 1].end()) {
                        const FpMatrix& m = pres.mult(vars[a], b.degree);
                        const bool negate = pos % 2 == 1;
                        for (std::size_t r = 0; r < m.rows(); ++r)
                            for (std::size_t c = 0; c < m.cols(); ++c) {
                                const Residue val = m(r, c);
                                if (val != 0) dk(it->offset + r, b.offset + c) = negate ? f.neg(val) : val;
                            }
                    }
                    ++pos;
                }
            }
            ranks[k] = rank(std::move(dk));
        }
        for (int k = 0; k <= top; ++k) {
            const auto beta = static_cast<std::int64_t>(dims[k]) - static_cast<std::int64_t>(ranks[k]) -
                              static_cast<std::int64_t>(ranks[k + 1]);
            table.set(k, d, beta);
        }
    });

    bool clean = true;
    for (const auto& [key, beta] : table.entries()) {
        const BiDegree d = key.second;
        if (d.i == window.i || d.j == window.j) clean = false;
    }
    table.set_boundary_clean(clean);
    return table;
}

BiDegree default_betti_window(const PointSet& pts) {
    const int count = static_cast<int>(pts.size());
    return {count + pts.n(), saturation_y_degree(count, pts.m()) + pts.m() + 2};
}

BiDegree default_intersection_window(const PointSet& pts, int t) {
    const int count = static_cast<int>(pts.size());
    // S/<x>^t alone has its last syzygy in x-degree t + n, so keep that off the strip.
    return {std::max(count, t + 1) + pts.n(), saturation_y_degree(count, pts.m()) + pts.m() + 2};
}

BettiTable point_betti_numbers(const PointSet& pts, int t, BiDegree window, BettiOptions opts) {
    auto pres = point_module_presentation(pts, t, window);
    try {
        return betti_numbers(reduce_by_regular_variable(pres, pts.ring().y0()), opts);
    } catch (const NotRegular&) {
        return betti_numbers(pres, opts);
    }
}

std::map<BiDegree, std::int64_t> beta1_table(const PointSet& pts, BiDegree window) {
    const auto& ring = pts.ring();
    const auto& f = pts.field();
    const auto cells = static_cast<std::size_t>(window.i + 1) * (window.j + 1);
    std::vector<FpMatrix> pieces;
    pieces.reserve(cells);
    for_each_degree(window, [&](BiDegree d) { pieces.push_back(ideal_piece(pts, d)); });
    auto idx = [&](BiDegree d) { return static_cast<std::size_t>(d.i) * (window.j + 1) + d.j; };

    std::map<BiDegree, std::int64_t> out;
    for_each_degree(window, [&](BiDegree d) {
        const FpMatrix& jd = pieces[idx(d)];
        if (jd.rows() == 0) return;
        FpMatrix generated(0, jd.cols(), f);
        std::vector<Residue> w(jd.cols());
        for (int v = 0; v < ring.num_vars(); ++v) {
            const BiDegree src = d - ring.degree_of(v);
            if (!nonnegative(src)) continue;
            const FpMatrix& js = pieces[idx(src)];
            const auto image = mult_index_map(v, src, ring.n, ring.m);
            for (std::size_t r = 0; r < js.rows(); ++r) {
                std::fill(w.begin(), w.end(), 0);
                for (std::size_t c = 0; c < js.cols(); ++c) w[image[c]] = js(r, c);
                generated.append_row(w);
            }
        }
        const auto beta = static_cast<std::int64_t>(jd.rows()) -
                          static_cast<std::int64_t>(rank(std::move(generated)));
        if (beta > 0) out[d] = beta;
    });
    return out;
}

int pdim(const BettiTable& bt) {
    if (!bt.boundary_clean())
        throw DirtyBoundary("pdim: Betti table has entries on the window boundary");
    return bt.max_stage();
}

MrcReport mrc_check(const PointSet& pts, BiDegree window) {
    MrcReport report;
    report.generic = is_generic_hilbert(pts);
    if (!report.generic) return report;

    const HilbertMatrix h = hilbert_matrix(pts, window);
    const IntMatrix dh = alternating_betti_from_hilbert(h, pts.n(), pts.m());
    const BettiTable bt = point_betti_numbers(pts, 0, window, BettiOptions{1});
    report.boundary_clean = bt.boundary_clean();
    report.beta1_support = bt.stage(1);

    // nonpositive(i,j): DH <= 0 on every (i',j') <= (i,j) other than the origin.
    IntMatrix all_nonpositive(window.i, window.j);
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j) {
            bool ok = (i == 0 && j == 0) || dh.at(i, j) <= 0;
            if (i > 0) ok = ok && all_nonpositive.at(i - 1, j) != 0;
            if (j > 0) ok = ok && all_nonpositive.at(i, j - 1) != 0;
            all_nonpositive(i, j) = ok ? 1 : 0;
        }

    report.passed = report.boundary_clean;
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j) {
            if (i == 0 && j == 0) continue;
            MrcCell cell{{i, j}, dh.at(i, j), false, bt.at(1, {i, j}), true};
            cell.predicted = dh.at(i, j) < 0 && all_nonpositive.at(i, j) != 0;
            cell.ok = (cell.beta1 > 0) == cell.predicted && (!cell.predicted || cell.beta1 == -cell.dh);
            report.passed = report.passed && cell.ok;
            report.cells.push_back(cell);
        }
    return report;
}

MrcReport mrc_check(const PointSet& pts) { return mrc_check(pts, default_betti_window(pts)); }

}  // namespace vreslab
