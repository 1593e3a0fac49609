#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zinbiel/algebra.hpp"
#include "zinbiel/analysis.hpp"
#include "zinbiel/errors.hpp"
#include "zinbiel/scalar.hpp"

namespace zinbiel {

/// Exact binomial coefficient; zero when k > m.
inline Int binomial(std::size_t m, std::size_t k) {
    if (k > m) return 0;
    if (k > m - k) k = m - k;
    Int out = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        out *= Int(m - k + i);
        out /= Int(i);
    }
    return out;
}

/// Dimension-n algebra with e_i e_j = C(i+j-1, j) e_{i+j} for i+j <= n.
/// This is the unique maximal-nilindex table in each dimension.
inline Algebra make_nf(std::size_t n) {
    if (n < 1) throw DimensionTooSmall("NF requires dimension >= 1");
    Algebra a(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; i + j <= n; ++j) {
            a.set_c(i - 1, j - 1, i + j - 1, Scalar(Rational(binomial(i + j - 1, j))));
        }
    }
    return a;
}

/// Filiform table with two tail parameters: the NF_{n-1} block on e_1..e_{n-1}
/// plus e_n e_1 = alpha e_{n-1} and e_n e_n = beta e_{n-1}.
inline Algebra make_filiform(std::size_t n, const Scalar& alpha, const Scalar& beta) {
    if (n < 5) throw DimensionTooSmall("filiform constructors require dimension >= 5");
    Algebra a(n);
    for (std::size_t i = 1; i + 1 <= n; ++i) {
        for (std::size_t j = 1; i + j <= n - 1; ++j) {
            a.set_c(i - 1, j - 1, i + j - 1, Scalar(Rational(binomial(i + j - 1, j))));
        }
    }
    a.set_c(n - 1, 0, n - 2, alpha);
    a.set_c(n - 1, n - 1, n - 2, beta);
    return a;
}

inline Algebra make_f1(std::size_t n) { return make_filiform(n, Scalar(0), Scalar(0)); }
inline Algebra make_f2(std::size_t n) { return make_filiform(n, Scalar(1), Scalar(0)); }
inline Algebra make_f3(std::size_t n) { return make_filiform(n, Scalar(0), Scalar(1)); }

enum class CatalogTag {
    NF, F1, F2, F3, FAB,
    A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13, A14, A15, A16,
};

inline bool tag_is_dim4(CatalogTag t) {
    return static_cast<int>(t) >= static_cast<int>(CatalogTag::A1);
}

inline bool tag_has_alpha(CatalogTag t) {
    return t == CatalogTag::FAB || t == CatalogTag::A8 || t == CatalogTag::A9 ||
           t == CatalogTag::A15;
}

/// Name of a catalog member; dimension-4 entries are numbered A1..A16,
/// parametrized families carry their parameter values.
struct CatalogId {
    CatalogTag tag;
    std::size_t n = 4;
    Scalar alpha;
    Scalar beta;

    std::string name() const {
        switch (tag) {
            case CatalogTag::NF: return "NF(" + std::to_string(n) + ")";
            case CatalogTag::F1: return "F1(" + std::to_string(n) + ")";
            case CatalogTag::F2: return "F2(" + std::to_string(n) + ")";
            case CatalogTag::F3: return "F3(" + std::to_string(n) + ")";
            case CatalogTag::FAB:
                return "FAB(" + std::to_string(n) + "," + alpha.str() + "," + beta.str() + ")";
            default: {
                int k = static_cast<int>(tag) - static_cast<int>(CatalogTag::A1) + 1;
                std::string s = "A" + std::to_string(k);
                if (tag_has_alpha(tag)) s += "(" + alpha.str() + ")";
                return s;
            }
        }
    }
};

/// The sixteen dimension-4 tables, listed entry by entry.
inline Algebra make_dim4(const CatalogId& id) {
    if (!tag_is_dim4(id.tag)) throw InvalidParameter("not a dimension-4 catalog tag");
    Algebra a(4);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, Scalar v) {
        a.set_c(i - 1, j - 1, k - 1, std::move(v));
    };
    const Scalar one(1);
    switch (id.tag) {
        case CatalogTag::A1:
            set(1, 1, 2, 1);
            set(1, 2, 3, 1);
            set(2, 1, 3, 2);
            set(1, 3, 4, 1);
            set(2, 2, 4, 3);
            set(3, 1, 4, 3);
            break;
        case CatalogTag::A2:
            set(1, 1, 3, 1);
            set(1, 2, 4, 1);
            set(1, 3, 4, 1);
            set(3, 1, 4, 2);
            break;
        case CatalogTag::A3:
            set(1, 1, 3, 1);
            set(1, 3, 4, 1);
            set(2, 2, 4, 1);
            set(3, 1, 4, 2);
            break;
        case CatalogTag::A4:
            set(1, 2, 3, 1);
            set(1, 3, 4, 1);
            set(2, 1, 3, -one);
            break;
        case CatalogTag::A5:
            set(1, 2, 3, 1);
            set(1, 3, 4, 1);
            set(2, 1, 3, -one);
            set(2, 2, 4, 1);
            break;
        case CatalogTag::A6:
            set(1, 1, 4, 1);
            set(1, 2, 3, 1);
            set(2, 1, 3, -one);
            set(2, 2, 3, Scalar(-2));
            set(2, 2, 4, 1);
            break;
        case CatalogTag::A7:
            set(1, 2, 3, 1);
            set(2, 1, 4, 1);
            set(2, 2, 3, -one);
            break;
        case CatalogTag::A8:
            set(1, 1, 3, 1);
            set(1, 2, 4, 1);
            set(2, 1, 3, -id.alpha);
            set(2, 2, 4, -one);
            break;
        case CatalogTag::A9:
            set(1, 1, 4, 1);
            set(1, 2, 4, id.alpha);
            set(2, 1, 4, -id.alpha);
            set(2, 2, 4, 1);
            set(3, 3, 4, 1);
            break;
        case CatalogTag::A10:
            set(1, 2, 4, 1);
            set(1, 3, 4, 1);
            set(2, 1, 4, -one);
            set(2, 2, 4, 1);
            set(3, 1, 4, 1);
            break;
        case CatalogTag::A11:
            set(1, 1, 4, 1);
            set(1, 2, 4, 1);
            set(2, 1, 4, -one);
            set(3, 3, 4, 1);
            break;
        case CatalogTag::A12:
            set(1, 2, 3, 1);
            set(2, 1, 4, 1);
            break;
        case CatalogTag::A13:
            set(1, 2, 3, 1);
            set(2, 1, 3, -one);
            set(2, 2, 4, 1);
            break;
        case CatalogTag::A14:
            set(2, 1, 4, 1);
            set(2, 2, 3, 1);
            break;
        case CatalogTag::A15: {
            if (id.alpha == Scalar(1)) {
                throw InvalidParameter("A15 requires alpha != 1");
            }
            set(1, 2, 4, 1);
            set(2, 2, 3, 1);
            set(2, 1, 4, (Scalar(1) + id.alpha) / (Scalar(1) - id.alpha));
            break;
        }
        case CatalogTag::A16:
            set(1, 2, 4, 1);
            set(2, 1, 4, -one);
            set(3, 3, 4, 1);
            break;
        default:
            break;
    }
    return a;
}

/// Construct any catalog member from its id.
inline Algebra make(const CatalogId& id) {
    switch (id.tag) {
        case CatalogTag::NF: return make_nf(id.n);
        case CatalogTag::F1: return make_f1(id.n);
        case CatalogTag::F2: return make_f2(id.n);
        case CatalogTag::F3: return make_f3(id.n);
        case CatalogTag::FAB: return make_filiform(id.n, id.alpha, id.beta);
        default: return make_dim4(id);
    }
}

inline CatalogTag dim4_tag(int k) {
    if (k < 1 || k > 16) throw InvalidParameter("dimension-4 tags are A1..A16");
    return static_cast<CatalogTag>(static_cast<int>(CatalogTag::A1) + k - 1);
}

/// One shipped fixture: file name, algebra name, how to rebuild it, and the
/// expected shape and signature used by catalog verification.
struct CatalogEntry {
    std::string file;
    std::string name;
    CatalogId id;
    Shape shape;
    std::array<std::size_t, 3> sig;
};

/// Canonical fixture set: every dimension-4 class, parametrized families at
/// alpha in {0, 1/2, 2}.
inline std::vector<CatalogEntry> dim4_manifest() {
    std::vector<CatalogEntry> out;
    auto shape_of = [](int k) {
        if (k == 1) return Shape::NulFiliform;
        if (k <= 5) return Shape::Filiform;
        return Shape::Other;
    };
    auto sig_of = [](int k) -> std::array<std::size_t, 3> {
        if (k == 1) return {3, 2, 1};
        if (k <= 5) return {2, 1, 0};
        if (k == 9 || k == 10 || k == 11 || k == 16) return {1, 0, 0};
        return {2, 0, 0};
    };
    const std::vector<std::pair<Rational, std::string>> alphas = {
        {Rational(0), "0"}, {Rational(1, 2), "1o2"}, {Rational(2), "2"}};
    for (int k = 1; k <= 16; ++k) {
        CatalogTag tag = dim4_tag(k);
        if (tag_has_alpha(tag)) {
            for (const auto& [value, token] : alphas) {
                CatalogId id{tag, 4, Scalar(value), Scalar(0)};
                std::string base = "a" + std::to_string(k) + "_alpha_" + token;
                out.push_back({base + ".zb", "A" + std::to_string(k) + "_alpha_" + token, id,
                               shape_of(k), sig_of(k)});
            }
        } else {
            CatalogId id{tag, 4, Scalar(0), Scalar(0)};
            out.push_back({"a" + std::to_string(k) + ".zb", "A" + std::to_string(k), id,
                           shape_of(k), sig_of(k)});
        }
    }
    return out;
}

/// A1..A16 at one fixed parameter value, for pairwise-distinction runs.
inline std::vector<std::pair<std::string, Algebra>> dim4_representatives(const Scalar& alpha) {
    std::vector<std::pair<std::string, Algebra>> out;
    for (int k = 1; k <= 16; ++k) {
        CatalogId id{dim4_tag(k), 4, alpha, Scalar(0)};
        out.emplace_back(id.name(), make_dim4(id));
    }
    return out;
}

} // namespace zinbiel
