#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zinbiel/errors.hpp"
#include "zinbiel/matrix.hpp"
#include "zinbiel/scalar.hpp"

namespace zinbiel {

/// Finite-dimensional algebra presented by structure constants:
/// e_i * e_j = sum_k c(i,j,k) e_k over basis e_1..e_n (indices 0-based in
/// code, 1-based in files and reports). Nothing is assumed about the product;
/// the Zinbiel identity is checked, never presumed.
class Algebra {
public:
    Algebra() = default;
    explicit Algebra(std::size_t dim)
        : n_(dim), c_(dim * dim * dim) {
        labels_.reserve(dim);
        for (std::size_t i = 1; i <= dim; ++i) labels_.push_back("e" + std::to_string(i));
    }

    std::size_t dim() const { return n_; }

    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * n_ + j) * n_ + k];
    }
    void set_c(std::size_t i, std::size_t j, std::size_t k, Scalar v) {
        c_[(i * n_ + j) * n_ + k] = std::move(v);
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        if (labels.size() != n_) throw DimensionMismatch("label count mismatch");
        labels_ = std::move(labels);
    }

    /// Row vector of coordinates of e_i * e_j.
    std::vector<Scalar> basis_product(std::size_t i, std::size_t j) const {
        return std::vector<Scalar>(c_.begin() + (i * n_ + j) * n_,
                                   c_.begin() + (i * n_ + j + 1) * n_);
    }

    /// Bilinear extension of the structure tensor to coefficient vectors.
    std::vector<Scalar> multiply(const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& y) const {
        if (x.size() != n_ || y.size() != n_) {
            throw DimensionMismatch("multiply: coefficient vector length != dim");
        }
        std::vector<Scalar> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (y[j].is_zero()) continue;
                Scalar f = x[i] * y[j];
                const Scalar* row = &c_[(i * n_ + j) * n_];
                for (std::size_t k = 0; k < n_; ++k) {
                    if (!row[k].is_zero()) out[k] += f * row[k];
                }
            }
        }
        return out;
    }

    bool has_extension_entries() const {
        for (const Scalar& v : c_) {
            if (!v.is_rational()) return true;
        }
        return false;
    }

    /// Tensor equality (labels are cosmetic and ignored).
    friend bool operator==(const Algebra& x, const Algebra& y) {
        return x.n_ == y.n_ && x.c_ == y.c_;
    }
    friend bool operator!=(const Algebra& x, const Algebra& y) { return !(x == y); }

private:
    std::size_t n_ = 0;
    std::vector<Scalar> c_;
    std::vector<std::string> labels_;
};

struct ZinbielViolation {
    std::size_t i, j, k;              // 1-based basis indices
    std::vector<Scalar> residual;     // (ei ej) ek - ei (ej ek) - ei (ek ej)
};

struct ZinbielReport {
    bool holds = true;
    std::vector<ZinbielViolation> violations;
};

/// Exhaustive residual scan of the defining identity over all basis triples.
/// Bilinearity makes a clean scan a proof for the whole algebra.
inline ZinbielReport zinbiel_check(const Algebra& a) {
    const std::size_t n = a.dim();
    ZinbielReport report;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Scalar> residual(n);
                // (e_i e_j) e_k = sum_u c(i,j,u) e_u e_k
                for (std::size_t u = 0; u < n; ++u) {
                    const Scalar& f = a.c(i, j, u);
                    if (f.is_zero()) continue;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (!a.c(u, k, t).is_zero()) residual[t] += f * a.c(u, k, t);
                    }
                }
                // - e_i (e_j e_k) - e_i (e_k e_j)
                for (std::size_t v = 0; v < n; ++v) {
                    Scalar f = a.c(j, k, v) + a.c(k, j, v);
                    if (f.is_zero()) continue;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (!a.c(i, v, t).is_zero()) residual[t] -= f * a.c(i, v, t);
                    }
                }
                bool zero = true;
                for (const Scalar& s : residual) {
                    if (!s.is_zero()) {
                        zero = false;
                        break;
                    }
                }
                if (!zero) {
                    report.holds = false;
                    report.violations.push_back({i + 1, j + 1, k + 1, std::move(residual)});
                }
            }
        }
    }
    return report;
}

/// Invertible change of basis; row i holds the coordinates of the new basis
/// vector e'_i in the old basis.
class BasisChange {
public:
    explicit BasisChange(QMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw DimensionMismatch("basis change must be square");
        if (m_.rank() != m_.rows()) throw SingularMatrix();
    }

    static BasisChange identity(std::size_t n) { return BasisChange(QMatrix::identity(n)); }

    std::size_t dim() const { return m_.rows(); }
    const QMatrix& matrix() const { return m_; }
    QMatrix inverse_matrix() const { return m_.inverse(); }

    BasisChange inverse() const { return BasisChange(m_.inverse()); }

    friend bool operator==(const BasisChange& x, const BasisChange& y) {
        return x.m_ == y.m_;
    }

private:
    QMatrix m_;
};

/// Structure constants of the same product expressed in the new basis.
inline Algebra transport(const Algebra& a, const BasisChange& p) {
    const std::size_t n = a.dim();
    if (p.dim() != n) throw DimensionMismatch("basis change size != algebra dim");
    QMatrix q = p.inverse_matrix();
    Algebra out(n);
    out.set_labels(a.labels());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Scalar> ei = p.matrix().row(i);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> w = a.multiply(ei, p.matrix().row(j));
            std::vector<Scalar> coords = vec_times_matrix(w, q);
            for (std::size_t k = 0; k < n; ++k) out.set_c(i, j, k, std::move(coords[k]));
        }
    }
    return out;
}

/// Block-diagonal sum: both summands become ideals with zero cross products.
inline Algebra direct_sum(const Algebra& a, const Algebra& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    Algebra out(na + nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < na; ++k) out.set_c(i, j, k, a.c(i, j, k));
        }
    }
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            for (std::size_t k = 0; k < nb; ++k) out.set_c(na + i, na + j, na + k, b.c(i, j, k));
        }
    }
    return out;
}

} // namespace zinbiel
