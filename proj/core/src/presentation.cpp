#include "perfval/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace perfval {

ElementMatrix::ElementMatrix(RingDescriptor desc, std::vector<std::vector<RingElement>> grid)
    : desc_(std::move(desc)) {
    rows_ = grid.size();
    cols_ = rows_ ? grid[0].size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto& row : grid) {
        if (row.size() != cols_) throw InvalidInput("ragged matrix");
        for (auto& e : row) {
            if (!(e.descriptor() == desc_)) throw DescriptorMismatch("matrix entry");
            data_.push_back(std::move(e));
        }
    }
}

ElementMatrix ElementMatrix::identity(const RingDescriptor& d, std::size_t n) {
    ElementMatrix m(d, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElement::one(d);
    return m;
}

ElementMatrix ElementMatrix::diagonal(const RingDescriptor& d,
                                      const std::vector<RingElement>& entries) {
    ElementMatrix m(d, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

ElementMatrix ElementMatrix::transpose() const {
    ElementMatrix m(desc_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

std::string ElementMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

ElementMatrix operator*(const ElementMatrix& a, const ElementMatrix& b) {
    if (!(a.descriptor() == b.descriptor())) throw DescriptorMismatch();
    if (a.cols() != b.rows()) throw InvalidInput("matrix shape mismatch");
    ElementMatrix c(a.descriptor(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            RingElement s = RingElement::zero(a.descriptor());
            for (std::size_t k = 0; k < a.cols(); ++k) s = add(s, mul(a.at(i, k), b.at(k, j)));
            c.at(i, j) = s;
        }
    return c;
}

ElementMatrix operator+(const ElementMatrix& a, const ElementMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix shape mismatch");
    ElementMatrix c(a.descriptor(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = add(a.at(i, j), b.at(i, j));
    return c;
}

ElementMatrix operator-(const ElementMatrix& a, const ElementMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix shape mismatch");
    ElementMatrix c(a.descriptor(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = sub(a.at(i, j), b.at(i, j));
    return c;
}

ElementMatrix scalar_mul(const RingElement& c, const ElementMatrix& a) {
    ElementMatrix m(a.descriptor(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = mul(c, a.at(i, j));
    return m;
}

bool matrix_equals_below(const ElementMatrix& a, const ElementMatrix& b, const Exponent& cap) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!equals_below(a.at(i, j), b.at(i, j), cap)) return false;
    return true;
}

PresentationMatrix::PresentationMatrix(ElementMatrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() == 0) throw InvalidInput("presentation needs at least one generator");
    if (mat_.cols() < mat_.rows())
        throw NotTorsion("fewer relations than generators");
}

namespace {
RingDescriptor grid_descriptor(const std::vector<std::vector<RingElement>>& grid) {
    if (grid.empty() || grid[0].empty()) throw InvalidInput("empty presentation grid");
    return grid[0][0].descriptor();
}
}  // namespace

PresentationMatrix::PresentationMatrix(std::vector<std::vector<RingElement>> grid)
    : PresentationMatrix(ElementMatrix(grid_descriptor(grid), std::move(grid))) {}

namespace {

/// Diagonalization worker shared by the divisor-only and transform-tracking
/// entry points.
struct SmithWorker {
    ElementMatrix a;
    bool track;
    ElementMatrix u, w;

    explicit SmithWorker(const ElementMatrix& m, bool track_transforms)
        : a(m),
          track(track_transforms),
          u(ElementMatrix::identity(m.descriptor(), m.rows())),
          w(ElementMatrix::identity(m.descriptor(), m.cols())) {}

    void swap_rows(std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
        if (track)
            for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(r1, j), u.at(r2, j));
    }
    void swap_cols(std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
        if (track)
            for (std::size_t i = 0; i < w.rows(); ++i) std::swap(w.at(i, c1), w.at(i, c2));
    }
    // row r1 -= q * row r2
    void row_sub(std::size_t r1, std::size_t r2, const RingElement& q) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            a.at(r1, j) = sub(a.at(r1, j), mul(q, a.at(r2, j)));
        if (track)
            for (std::size_t j = 0; j < u.cols(); ++j)
                u.at(r1, j) = sub(u.at(r1, j), mul(q, u.at(r2, j)));
    }
    // col c1 -= q * col c2
    void col_sub(std::size_t c1, std::size_t c2, const RingElement& q) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            a.at(i, c1) = sub(a.at(i, c1), mul(q, a.at(i, c2)));
        if (track)
            for (std::size_t i = 0; i < w.rows(); ++i)
                w.at(i, c1) = sub(w.at(i, c1), mul(q, w.at(i, c2)));
    }

    std::vector<RingElement> run() {
        std::vector<RingElement> pivots;
        const std::size_t steps = a.rows();
        for (std::size_t k = 0; k < steps; ++k) {
            // minimal exact valuation in the active block, ties row-major
            std::optional<Exponent> best;
            std::size_t bi = 0, bj = 0;
            bool any_nonzero_class = false;
            for (std::size_t i = k; i < a.rows(); ++i)
                for (std::size_t j = k; j < a.cols(); ++j) {
                    const RingElement& e = a.at(i, j);
                    if (e.is_zero()) {
                        if (e.flagged()) any_nonzero_class = true;
                        continue;
                    }
                    any_nonzero_class = true;
                    Exponent v = e.valuation().value();
                    if (!best || v < *best) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (!best) {
                if (any_nonzero_class)
                    throw PrecisionExhausted("pivot needs data at exponent >= N");
                throw NotTorsion("active block is exactly zero at stage " + std::to_string(k));
            }
            swap_rows(k, bi);
            swap_cols(k, bj);
            const RingElement pivot = a.at(k, k);
            for (std::size_t i = k + 1; i < a.rows(); ++i) {
                if (a.at(i, k).is_zero() && !a.at(i, k).flagged()) continue;
                row_sub(i, k, divide(a.at(i, k), pivot));
            }
            for (std::size_t j = k + 1; j < a.cols(); ++j) {
                if (a.at(k, j).is_zero() && !a.at(k, j).flagged()) continue;
                col_sub(j, k, divide(a.at(k, j), pivot));
            }
            pivots.push_back(pivot);
        }
        return pivots;
    }
};

}  // namespace

ElementaryDivisors smith_reduce(const PresentationMatrix& p) {
    SmithWorker worker(p.matrix(), false);
    std::vector<RingElement> pivots = worker.run();
    ElementaryDivisors d;
    d.valuations.reserve(pivots.size());
    for (const auto& e : pivots) d.valuations.push_back(e.valuation().value());
    std::sort(d.valuations.begin(), d.valuations.end());
    return d;
}

SmithTransforms smith_with_transforms(const ElementMatrix& a) {
    SmithWorker worker(a, true);
    std::vector<RingElement> pivots = worker.run();
    return SmithTransforms{std::move(worker.u), std::move(worker.w), std::move(pivots)};
}

namespace {

/// All dets of the top-|S| rows against every column subset S, |S| <= s,
/// by subset dynamic programming (Laplace expansion along the last row of
/// the block, subresults shared across minors).
std::vector<RingElement> minor_dp(const ElementMatrix& a, std::size_t s,
                                  const std::vector<std::size_t>& rows) {
    const std::size_t m = a.cols();
    if (m > 20) throw InvalidInput("minor expansion capped at 20 columns");
    std::vector<RingElement> det(std::size_t(1) << m, RingElement::zero(a.descriptor()));
    det[0] = RingElement::one(a.descriptor());
    // masks ordered by increasing popcount via repeated passes
    for (std::size_t k = 1; k <= s; ++k) {
        // iterate masks with popcount k in increasing numeric order
        for (std::size_t mask = 1; mask < det.size(); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
            RingElement acc = RingElement::zero(a.descriptor());
            std::size_t t = 0;  // index of j within the sorted subset
            for (std::size_t j = 0; j < m; ++j) {
                if (!(mask & (std::size_t(1) << j))) continue;
                RingElement term = mul(a.at(rows[k - 1], j), det[mask ^ (std::size_t(1) << j)]);
                bool negative = ((k - 1) + t) % 2 != 0;
                acc = negative ? sub(acc, term) : add(acc, term);
                ++t;
            }
            det[mask] = acc;
        }
    }
    return det;
}

struct MinorScan {
    std::optional<Exponent> best;
    bool any_nonzero_class = false;

    void feed(const RingElement& d) {
        if (d.is_zero()) {
            if (d.flagged()) any_nonzero_class = true;
            return;
        }
        any_nonzero_class = true;
        Exponent v = d.valuation().value();
        if (!best || v < *best) best = v;
    }
};

}  // namespace

CutIdeal fitting_f0(const PresentationMatrix& p) {
    const ElementMatrix& a = p.matrix();
    const std::size_t n = a.rows();
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    std::vector<RingElement> det = minor_dp(a, n, rows);

    MinorScan scan;
    for (std::size_t mask = 0; mask < det.size(); ++mask)
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) == n) scan.feed(det[mask]);
    if (!scan.best) {
        if (scan.any_nonzero_class)
            throw PrecisionExhausted("all maximal minors vanish below precision");
        throw NotTorsion();
    }
    return CutIdeal{*scan.best, false};
}

std::optional<Exponent> fitting_minor_valuation(const ElementMatrix& a, std::size_t s) {
    if (s == 0) return Exponent(0);
    if (s > a.rows() || s > a.cols()) return std::nullopt;
    // enumerate row subsets of size s, run the column DP per subset
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    MinorScan scan;
    bool more = true;
    while (more) {
        std::vector<RingElement> det = minor_dp(a, s, idx);
        for (std::size_t mask = 0; mask < det.size(); ++mask)
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) == s) scan.feed(det[mask]);
        // next combination
        more = false;
        for (std::size_t i = s; i-- > 0;) {
            if (idx[i] + (s - i) < a.rows()) {
                ++idx[i];
                for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                more = true;
                break;
            }
        }
    }
    if (!scan.best && scan.any_nonzero_class)
        throw PrecisionExhausted("all minors of the requested size vanish below precision");
    return scan.best;
}

CutModule cyclic_decomposition(const PresentationMatrix& p) {
    ElementaryDivisors d = smith_reduce(p);
    std::vector<CutIdeal> cuts;
    for (const auto& v : d.valuations)
        if (v > Exponent(0)) cuts.push_back(CutIdeal{v, false});
    return CutModule(p.descriptor(), std::move(cuts));
}

}  // namespace perfval
