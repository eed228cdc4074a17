#pragma once

#include <optional>
#include <vector>

#include "perfval/cutmod.hpp"
#include "perfval/ring.hpp"

namespace perfval {

/// Dense matrix of ring elements (row-major).
class ElementMatrix {
public:
    ElementMatrix(RingDescriptor desc, std::size_t rows, std::size_t cols)
        : desc_(std::move(desc)), rows_(rows), cols_(cols),
          data_(rows * cols, RingElement::zero(desc_)) {}
    ElementMatrix(RingDescriptor desc, std::vector<std::vector<RingElement>> grid);

    static ElementMatrix identity(const RingDescriptor& d, std::size_t n);
    static ElementMatrix diagonal(const RingDescriptor& d, const std::vector<RingElement>& entries);

    const RingDescriptor& descriptor() const { return desc_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const RingElement& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    RingElement& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    ElementMatrix transpose() const;
    std::string str() const;

    friend ElementMatrix operator*(const ElementMatrix& a, const ElementMatrix& b);
    friend ElementMatrix operator+(const ElementMatrix& a, const ElementMatrix& b);
    friend ElementMatrix operator-(const ElementMatrix& a, const ElementMatrix& b);

private:
    RingDescriptor desc_;
    std::size_t rows_, cols_;
    std::vector<RingElement> data_;
};

ElementMatrix scalar_mul(const RingElement& c, const ElementMatrix& a);
bool matrix_equals_below(const ElementMatrix& a, const ElementMatrix& b, const Exponent& cap);

/// Presentation of a finitely presented torsion module: n generators
/// (rows), m >= n relations (columns), M = V^n / (column span).  Torsion
/// is certified by an n x n minor with exact valuation below N; a
/// presentation without one is rejected by the reductions below rather
/// than silently treated as infinite length.
class PresentationMatrix {
public:
    PresentationMatrix(ElementMatrix mat);
    explicit PresentationMatrix(std::vector<std::vector<RingElement>> grid);

    const ElementMatrix& matrix() const { return mat_; }
    const RingDescriptor& descriptor() const { return mat_.descriptor(); }
    std::size_t generators() const { return mat_.rows(); }
    std::size_t relations() const { return mat_.cols(); }

private:
    ElementMatrix mat_;
};

struct ElementaryDivisors {
    std::vector<Exponent> valuations;  // ascending, all < N
    Exponent sum() const {
        Exponent s(0);
        for (const auto& v : valuations) s += v;
        return s;
    }
};

/// Diagonalization over the valuation ring: pivot on a minimal-valuation
/// entry (ties by lowest (row, col)), clear its row and column with exact
/// divisions (always legal: divisibility is valuation comparison), recurse.
ElementaryDivisors smith_reduce(const PresentationMatrix& a);

/// Same reduction with accumulated transforms: u * A * w is diagonal with
/// the returned pivots in the top-left block.
struct SmithTransforms {
    ElementMatrix u;               // rows x rows, invertible
    ElementMatrix w;               // cols x cols, invertible
    std::vector<RingElement> pivots;  // diagonal entries, ascending valuation
};
SmithTransforms smith_with_transforms(const ElementMatrix& a);

/// 0-th Fitting ideal: the closed cut at the minimal valuation over all
/// n x n minors, computed by exact expansion (no division anywhere).
CutIdeal fitting_f0(const PresentationMatrix& a);

/// Minimal valuation over all s x s minors (row and column subsets), used
/// as a division-free oracle route; std::nullopt when every s-minor is an
/// exact zero.
std::optional<Exponent> fitting_minor_valuation(const ElementMatrix& a, std::size_t s);

/// M as a direct sum of cyclic quotients by closed cuts at the elementary
/// divisor valuations.
CutModule cyclic_decomposition(const PresentationMatrix& a);

}  // namespace perfval
