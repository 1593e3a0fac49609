#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zinbiel/algebra.hpp"
#include "zinbiel/errors.hpp"

namespace zinbiel {

inline std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    a = mod_norm(a, p);
    if (a == 0) throw DivisionByZero();
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return mod_norm(t, p);
}

inline bool is_small_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

/// Dense matrix over F_p.
struct FpMat {
    std::int64_t p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> d;

    FpMat() = default;
    FpMat(std::int64_t p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), d(r * c, 0) {}

    static FpMat identity(std::int64_t p, std::size_t n) {
        FpMat m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return d[i * cols + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return d[i * cols + j]; }

    std::vector<std::int64_t> row(std::size_t i) const {
        return std::vector<std::int64_t>(d.begin() + i * cols, d.begin() + (i + 1) * cols);
    }
    void set_row(std::size_t i, const std::vector<std::int64_t>& v) {
        for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = mod_norm(v[j], p);
    }
    void append_row(const std::vector<std::int64_t>& v) {
        if (rows == 0 && cols == 0) cols = v.size();
        for (std::int64_t x : v) d.push_back(mod_norm(x, p));
        ++rows;
    }

    std::size_t rref() {
        std::size_t lead = 0, r = 0;
        for (; r < rows && lead < cols; ++lead) {
            std::size_t piv = r;
            while (piv < rows && (*this)(piv, lead) == 0) ++piv;
            if (piv == rows) continue;
            if (piv != r) {
                for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(piv, j), (*this)(r, j));
            }
            std::int64_t inv = mod_inv((*this)(r, lead), p);
            for (std::size_t j = lead; j < cols; ++j) {
                (*this)(r, j) = mod_norm((*this)(r, j) * inv, p);
            }
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || (*this)(i, lead) == 0) continue;
                std::int64_t f = (*this)(i, lead);
                for (std::size_t j = lead; j < cols; ++j) {
                    (*this)(i, j) = mod_norm((*this)(i, j) - f * (*this)(r, j), p);
                }
            }
            ++r;
        }
        return r;
    }

    std::size_t rank() const {
        FpMat copy = *this;
        return copy.rref();
    }

    FpMat inverse() const {
        FpMat aug(p, rows, 2 * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols + i) = 1;
        }
        if (aug.rref() < rows) throw SingularMatrix();
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < rows; ++j) {
                if (aug(i, j) != (i == j ? 1 : 0)) throw SingularMatrix();
            }
        }
        FpMat out(p, rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) out(i, j) = aug(i, cols + j);
        }
        return out;
    }

    FpMat operator*(const FpMat& o) const {
        FpMat out(p, rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::int64_t a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols; ++j) {
                    out(i, j) = mod_norm(out(i, j) + a * o(k, j), p);
                }
            }
        }
        return out;
    }

    friend bool operator==(const FpMat& x, const FpMat& y) {
        return x.p == y.p && x.rows == y.rows && x.cols == y.cols && x.d == y.d;
    }
};

/// Membership of v in the row space of an rref basis.
inline bool fp_in_span(const FpMat& rref_basis, std::vector<std::int64_t> v) {
    const std::int64_t p = rref_basis.p;
    for (std::size_t r = 0; r < rref_basis.rows; ++r) {
        std::size_t c = 0;
        while (c < rref_basis.cols && rref_basis(r, c) == 0) ++c;
        if (c == rref_basis.cols) continue;
        if (v[c] != 0) {
            std::int64_t f = v[c];
            for (std::size_t j = c; j < rref_basis.cols; ++j) {
                v[j] = mod_norm(v[j] - f * rref_basis(r, j), p);
            }
        }
    }
    for (std::int64_t x : v) {
        if (x != 0) return false;
    }
    return true;
}

/// Finite-field shadow of an algebra: structure constants reduced mod p.
struct ModularAlgebra {
    std::int64_t p = 2;
    std::size_t n = 0;
    std::vector<std::int64_t> c;

    ModularAlgebra() = default;
    ModularAlgebra(std::int64_t p_, std::size_t n_) : p(p_), n(n_), c(n_ * n_ * n_, 0) {}

    std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const {
        return c[(i * n + j) * n + k];
    }
    std::int64_t& at(std::size_t i, std::size_t j, std::size_t k) {
        return c[(i * n + j) * n + k];
    }

    std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& x,
                                       const std::vector<std::int64_t>& y) const {
        std::vector<std::int64_t> out(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                std::int64_t f = mod_norm(x[i] * y[j], p);
                if (f == 0) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    out[k] = mod_norm(out[k] + f * at(i, j, k), p);
                }
            }
        }
        return out;
    }

    /// Row space of all products, i.e. the square of the algebra.
    FpMat square_subspace() const {
        FpMat rows(p, 0, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<std::int64_t> v(n);
                for (std::size_t k = 0; k < n; ++k) v[k] = at(i, j, k);
                rows.append_row(v);
            }
        }
        std::size_t rank = rows.rref();
        FpMat out(p, 0, n);
        for (std::size_t r = 0; r < rank; ++r) out.append_row(rows.row(r));
        return out;
    }

    friend bool operator==(const ModularAlgebra& x, const ModularAlgebra& y) {
        return x.p == y.p && x.n == y.n && x.c == y.c;
    }
};

/// Entrywise residue of the structure constants. Requires every denominator
/// to be coprime to p; rejects quadratic-extension entries.
inline ModularAlgebra reduce_mod_p(const Algebra& a, std::int64_t p) {
    if (!is_small_prime(p)) throw InvalidParameter("modulus " + std::to_string(p) + " is not prime");
    ModularAlgebra out(p, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < a.dim(); ++k) {
                const Scalar& v = a.c(i, j, k);
                if (!v.is_rational()) {
                    throw DenominatorDivisibleByP(
                        "entry c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ") = " + v.str() + " is not rational");
                }
                const Rational& q = v.as_rational();
                Int den_mod = denominator(q) % p;
                if (den_mod == 0) {
                    throw DenominatorDivisibleByP(
                        "denominator of entry c(" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "," + std::to_string(k + 1) + ") = " +
                        format_rational(q) + " is divisible by " + std::to_string(p));
                }
                std::int64_t num = static_cast<std::int64_t>(numerator(q) % p);
                std::int64_t den = static_cast<std::int64_t>(den_mod);
                out.at(i, j, k) = mod_norm(num * mod_inv(den, p), p);
            }
        }
    }
    return out;
}

/// All d-dimensional subspaces of F_p^n as rref bases, in a fixed order:
/// pivot-column sets lexicographically, free entries counting up in base p.
inline std::vector<FpMat> enumerate_rref_subspaces(std::size_t n, std::size_t d, std::int64_t p) {
    std::vector<FpMat> out;
    if (d == 0 || d > n) return out;
    std::vector<std::size_t> pivots(d);
    for (std::size_t i = 0; i < d; ++i) pivots[i] = i;
    while (true) {
        // Free slots: (r, c) with c > pivots[r] and c not a pivot column.
        std::vector<std::pair<std::size_t, std::size_t>> free_slots;
        std::vector<bool> is_pivot(n, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = pivots[r] + 1; c < n; ++c) {
                if (!is_pivot[c]) free_slots.emplace_back(r, c);
            }
        }
        std::vector<std::int64_t> digits(free_slots.size(), 0);
        while (true) {
            FpMat m(p, d, n);
            for (std::size_t r = 0; r < d; ++r) m(r, pivots[r]) = 1;
            for (std::size_t s = 0; s < free_slots.size(); ++s) {
                m(free_slots[s].first, free_slots[s].second) = digits[s];
            }
            out.push_back(std::move(m));
            std::size_t s = 0;
            for (; s < digits.size(); ++s) {
                if (++digits[s] < p) break;
                digits[s] = 0;
            }
            if (s == digits.size()) break;
        }
        // Next pivot combination in lex order.
        bool advanced = false;
        for (std::size_t i = d; i > 0;) {
            --i;
            if (pivots[i] + (d - i) < n) {
                ++pivots[i];
                for (std::size_t j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

} // namespace zinbiel
