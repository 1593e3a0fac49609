#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zinbiel/algebra.hpp"
#include "zinbiel/matrix.hpp"

namespace zinbiel {

/// Descending chain A^1 = A, A^{k+1} = A o A^k, listed until the first zero
/// subspace or until index dim+1.
struct PowerSeries {
    std::vector<Subspace> subspaces;
    std::vector<std::size_t> dims;
};

inline PowerSeries power_series(const Algebra& a) {
    const std::size_t n = a.dim();
    PowerSeries ps;
    ps.subspaces.push_back(Subspace::full(n));
    ps.dims.push_back(n);
    while (!ps.subspaces.back().is_zero() && ps.subspaces.size() < n + 1) {
        const Subspace& prev = ps.subspaces.back();
        QMatrix products(0, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Scalar> ei(n);
            ei[i] = Scalar(1);
            for (std::size_t r = 0; r < prev.dim(); ++r) {
                products.append_row(a.multiply(ei, prev.basis().row(r)));
            }
        }
        Subspace next = Subspace::span(n, products);
        ps.subspaces.push_back(next);
        ps.dims.push_back(next.dim());
    }
    return ps;
}

/// Minimal s with A^s = 0; an n-dimensional nilpotent algebra reaches zero by
/// index n+1, so a chain still nonzero there is not nilpotent.
inline std::size_t nilindex(const Algebra& a) {
    PowerSeries ps = power_series(a);
    for (std::size_t s = 0; s < ps.dims.size(); ++s) {
        if (ps.dims[s] == 0) return s + 1;
    }
    throw NotNilpotent();
}

inline bool is_nilpotent(const Algebra& a) {
    PowerSeries ps = power_series(a);
    return ps.dims.back() == 0;
}

enum class Shape { NulFiliform, Filiform, Other };

inline std::string shape_name(Shape s) {
    switch (s) {
        case Shape::NulFiliform: return "nul-filiform";
        case Shape::Filiform: return "filiform";
        default: return "other";
    }
}

/// Nul-filiform: dim A^i = (n+1)-i for all i; filiform: dim A^i = n-i for
/// 2 <= i <= n.
inline Shape classify_shape(const Algebra& a) {
    const std::size_t n = a.dim();
    PowerSeries ps = power_series(a);
    auto dim_at = [&](std::size_t i) -> std::size_t {
        // i is 1-based; beyond the computed list the chain has stabilized.
        if (i <= ps.dims.size()) return ps.dims[i - 1];
        return ps.dims.back();
    };
    bool nul = true;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (dim_at(i) != n + 1 - i) {
            nul = false;
            break;
        }
    }
    if (nul) return Shape::NulFiliform;
    bool fil = true;
    for (std::size_t i = 2; i <= n; ++i) {
        if (dim_at(i) != n - i) {
            fil = false;
            break;
        }
    }
    if (fil && n >= 2) return Shape::Filiform;
    return Shape::Other;
}

/// (dim A^2, dim A^3, dim A^4), padded with the stabilized value.
inline std::array<std::size_t, 3> signature(const Algebra& a) {
    PowerSeries ps = power_series(a);
    auto dim_at = [&](std::size_t i) -> std::size_t {
        if (i <= ps.dims.size()) return ps.dims[i - 1];
        return ps.dims.back();
    };
    return {dim_at(2), dim_at(3), dim_at(4)};
}

/// Minimal generating set size of a nilpotent algebra: dim A - dim A^2.
inline std::size_t generator_count(const Algebra& a) {
    PowerSeries ps = power_series(a);
    if (ps.dims.back() != 0) throw NotNilpotent();
    std::size_t dim_sq = ps.dims.size() > 1 ? ps.dims[1] : 0;
    return a.dim() - dim_sq;
}

enum class AnnihilatorSide { Left, Right, TwoSided };

/// Kernel of x -> (x e_j)_j (left), x -> (e_i x)_i (right), or of both maps
/// stacked (two-sided).
inline Subspace annihilator(const Algebra& a, AnnihilatorSide side) {
    const std::size_t n = a.dim();
    std::size_t cols = (side == AnnihilatorSide::TwoSided) ? 2 * n * n : n * n;
    QMatrix m(n, cols);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t col = 0;
        if (side != AnnihilatorSide::Right) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) m(x, col++) = a.c(x, j, k);
            }
        }
        if (side != AnnihilatorSide::Left) {
            if (side == AnnihilatorSide::TwoSided) col = n * n;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) m(x, col++) = a.c(i, x, k);
            }
        }
    }
    return Subspace::span(n, m.left_kernel());
}

/// Rank-based isomorphism invariants. Every component is the rank of a
/// matrix defined over Q, so it survives field extension and transport;
/// equal fingerprints are necessary but not sufficient for isomorphism.
struct Fingerprint {
    std::size_t dim = 0;
    std::vector<std::size_t> power_dims;
    std::size_t left_ann = 0;
    std::size_t right_ann = 0;
    std::size_t two_sided_ann = 0;
    std::size_t sym_rank = 0;
    std::size_t antisym_rank = 0;
    std::size_t generators = 0;

    friend bool operator==(const Fingerprint& x, const Fingerprint& y) = default;
};

/// Name of the first differing component, in a fixed report order.
inline std::optional<std::string> fingerprint_difference(const Fingerprint& x,
                                                         const Fingerprint& y) {
    if (x.dim != y.dim) return "dim";
    if (x.power_dims != y.power_dims) return "power_dims";
    if (x.left_ann != y.left_ann) return "left_ann";
    if (x.right_ann != y.right_ann) return "right_ann";
    if (x.two_sided_ann != y.two_sided_ann) return "two_sided_ann";
    if (x.sym_rank != y.sym_rank) return "sym_rank";
    if (x.antisym_rank != y.antisym_rank) return "antisym_rank";
    if (x.generators != y.generators) return "generators";
    return std::nullopt;
}

inline Fingerprint fingerprint(const Algebra& a) {
    const std::size_t n = a.dim();
    Fingerprint fp;
    fp.dim = n;
    fp.power_dims = power_series(a).dims;
    fp.left_ann = annihilator(a, AnnihilatorSide::Left).dim();
    fp.right_ann = annihilator(a, AnnihilatorSide::Right).dim();
    fp.two_sided_ann = annihilator(a, AnnihilatorSide::TwoSided).dim();
    QMatrix sym(0, n);
    QMatrix antisym(0, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Scalar> plus(n), minus(n);
            for (std::size_t k = 0; k < n; ++k) {
                plus[k] = a.c(i, j, k) + a.c(j, i, k);
                minus[k] = a.c(i, j, k) - a.c(j, i, k);
            }
            sym.append_row(plus);
            if (i != j) antisym.append_row(minus);
        }
    }
    fp.sym_rank = sym.rank();
    fp.antisym_rank = antisym.rank();
    std::size_t dim_sq = fp.power_dims.size() > 1 ? fp.power_dims[1] : 0;
    fp.generators = n - dim_sq;
    return fp;
}

/// Algebra in an adapted basis together with the filtration degree of each
/// basis vector; products respect degree(k) = degree(i) + degree(j).
struct GradedAlgebra {
    Algebra algebra;
    std::vector<std::size_t> degrees;
};

/// Associated graded algebra of the power filtration. Representatives of
/// A^i / A^{i+1} are chosen by greedy pivot extension over the rref basis of
/// A^i (standard basis vectors first, index order), then arranged by pivot so
/// already-adapted tables come back unchanged.
inline GradedAlgebra natural_grading(const Algebra& a) {
    const std::size_t n = a.dim();
    PowerSeries ps = power_series(a);
    if (ps.dims.back() != 0) throw NotNilpotent();

    struct Rep {
        std::vector<Scalar> v;
        std::size_t degree;
        std::size_t pivot;
    };
    std::vector<Rep> reps;
    for (std::size_t level = 0; level + 1 < ps.subspaces.size(); ++level) {
        const Subspace& here = ps.subspaces[level];
        const Subspace& next = ps.subspaces[level + 1];
        QMatrix current = next.basis();
        std::size_t rank = current.rows();
        for (std::size_t r = 0; r < here.dim(); ++r) {
            std::vector<Scalar> v = here.basis().row(r);
            QMatrix trial = current;
            trial.append_row(v);
            if (trial.rank() > rank) {
                current.append_row(v);
                ++rank;
                std::size_t pivot = 0;
                while (pivot < n && v[pivot].is_zero()) ++pivot;
                reps.push_back({std::move(v), level + 1, pivot});
            }
        }
    }
    std::sort(reps.begin(), reps.end(), [](const Rep& x, const Rep& y) {
        if (x.pivot != y.pivot) return x.pivot < y.pivot;
        return x.degree < y.degree;
    });

    QMatrix basis(0, n);
    std::vector<std::size_t> degrees;
    for (const Rep& r : reps) {
        basis.append_row(r.v);
        degrees.push_back(r.degree);
    }
    QMatrix inv = basis.inverse();

    GradedAlgebra out{Algebra(n), degrees};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> w = a.multiply(basis.row(i), basis.row(j));
            std::vector<Scalar> coords = vec_times_matrix(w, inv);
            for (std::size_t k = 0; k < n; ++k) {
                if (degrees[k] == degrees[i] + degrees[j]) {
                    out.algebra.set_c(i, j, k, std::move(coords[k]));
                }
            }
        }
    }
    return out;
}

/// Structural check of the graded-multiplication constraint on a tensor.
inline bool grading_is_consistent(const GradedAlgebra& g) {
    const std::size_t n = g.algebra.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!g.algebra.c(i, j, k).is_zero() &&
                    g.degrees[k] != g.degrees[i] + g.degrees[j]) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace zinbiel
