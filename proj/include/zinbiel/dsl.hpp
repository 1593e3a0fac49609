#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zinbiel/algebra.hpp"
#include "zinbiel/errors.hpp"
#include "zinbiel/scalar.hpp"

namespace zinbiel {

// Algebra definition files (.zb) are line based:
//
//   algebra <name>
//   dim <n>
//   param <ident> = <rational>        # zero or more
//   table
//   e<i> * e<j> = <term> { + <term> } # term: [<rational>] e<k> | <ident> e<k>
//   end
//
// '#' starts a comment, omitted (i,j) lines denote a zero product.

struct DocTerm {
    bool is_param = false;
    Rational coeff = 1;     // used when is_param is false
    std::string param;      // used when is_param is true
    std::size_t k = 0;      // 1-based basis index

    friend bool operator==(const DocTerm&, const DocTerm&) = default;
};

struct DocProduct {
    std::size_t i = 0, j = 0;   // 1-based
    std::vector<DocTerm> terms;

    friend bool operator==(const DocProduct&, const DocProduct&) = default;
};

struct AlgebraDoc {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::pair<std::string, Rational>> params;
    std::vector<DocProduct> products;

    friend bool operator==(const AlgebraDoc&, const AlgebraDoc&) = default;
};

/// Rational literal: optional '-', digits, optional '/<positive digits>'.
inline Rational parse_rational(const std::string& tok, int line = 0) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < tok.size() && tok[pos] == '-') {
        negative = true;
        ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == digits_start) throw BadRational(line, "bad rational literal '" + tok + "'");
    Int num(tok.substr(digits_start, pos - digits_start));
    Int den = 1;
    if (pos < tok.size()) {
        if (tok[pos] != '/') throw BadRational(line, "bad rational literal '" + tok + "'");
        ++pos;
        std::size_t den_start = pos;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos == den_start || pos != tok.size()) {
            throw BadRational(line, "bad rational literal '" + tok + "'");
        }
        den = Int(tok.substr(den_start));
        if (den == 0) throw BadRational(line, "zero denominator in '" + tok + "'");
    }
    if (negative) num = -num;
    return Rational(num, den);
}

namespace detail {

inline bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

inline bool parse_basis_token(const std::string& s, std::size_t* index) {
    if (s.size() < 2 || s[0] != 'e') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    *index = std::stoul(s.substr(1));
    return true;
}

inline std::vector<std::string> tokenize(const std::string& line) {
    std::string padded;
    for (char c : line) {
        if (c == '*' || c == '=' || c == '+') {
            padded += ' ';
            padded += c;
            padded += ' ';
        } else {
            padded += c;
        }
    }
    std::istringstream in(padded);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

} // namespace detail

/// Parse .zb text into a document. Reported line numbers are 1-based.
inline AlgebraDoc parse_dsl(const std::string& text) {
    enum class State { Header, Dim, Params, Table, Done };
    State state = State::Header;
    AlgebraDoc doc;
    std::vector<std::pair<std::size_t, std::size_t>> seen;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::vector<std::string> toks = detail::tokenize(line);
        if (toks.empty()) continue;

        switch (state) {
            case State::Header: {
                if (toks.size() != 2 || toks[0] != "algebra") {
                    throw SyntaxError(line_no, "expected 'algebra <name>'");
                }
                doc.name = toks[1];
                state = State::Dim;
                break;
            }
            case State::Dim: {
                if (toks.size() != 2 || toks[0] != "dim") {
                    throw SyntaxError(line_no, "expected 'dim <n>'");
                }
                Rational n = parse_rational(toks[1], line_no);
                if (denominator(n) != 1 || n < 1) {
                    throw SyntaxError(line_no, "dimension must be a positive integer");
                }
                doc.dim = static_cast<std::size_t>(numerator(n));
                state = State::Params;
                break;
            }
            case State::Params: {
                if (toks[0] == "param") {
                    if (toks.size() != 4 || toks[2] != "=") {
                        throw SyntaxError(line_no, "expected 'param <ident> = <rational>'");
                    }
                    std::size_t ignored;
                    if (!detail::is_ident(toks[1]) || detail::parse_basis_token(toks[1], &ignored)) {
                        throw SyntaxError(line_no, "bad parameter name '" + toks[1] + "'");
                    }
                    for (const auto& [name, value] : doc.params) {
                        if (name == toks[1]) {
                            throw SyntaxError(line_no, "parameter '" + toks[1] + "' declared twice");
                        }
                    }
                    doc.params.emplace_back(toks[1], parse_rational(toks[3], line_no));
                } else if (toks.size() == 1 && toks[0] == "table") {
                    state = State::Table;
                } else {
                    throw SyntaxError(line_no, "expected 'param ...' or 'table'");
                }
                break;
            }
            case State::Table: {
                if (toks.size() == 1 && toks[0] == "end") {
                    state = State::Done;
                    break;
                }
                // e<i> * e<j> = term { + term }
                DocProduct prod;
                if (toks.size() < 5 || toks[1] != "*" || toks[3] != "=" ||
                    !detail::parse_basis_token(toks[0], &prod.i) ||
                    !detail::parse_basis_token(toks[2], &prod.j)) {
                    throw SyntaxError(line_no, "expected 'e<i> * e<j> = <terms>'");
                }
                if (prod.i < 1 || prod.i > doc.dim || prod.j < 1 || prod.j > doc.dim) {
                    throw IndexOutOfRange(line_no, "basis index out of range in product head");
                }
                for (const auto& [i, j] : seen) {
                    if (i == prod.i && j == prod.j) {
                        throw DuplicateProduct(line_no, "duplicate product e" + std::to_string(prod.i) +
                                                            " * e" + std::to_string(prod.j));
                    }
                }
                seen.emplace_back(prod.i, prod.j);

                std::vector<std::vector<std::string>> term_toks(1);
                for (std::size_t t = 4; t < toks.size(); ++t) {
                    if (toks[t] == "+") {
                        term_toks.emplace_back();
                    } else {
                        term_toks.back().push_back(toks[t]);
                    }
                }
                for (const auto& tt : term_toks) {
                    DocTerm term;
                    if (tt.size() == 1) {
                        if (!detail::parse_basis_token(tt[0], &term.k)) {
                            throw SyntaxError(line_no, "expected basis vector, got '" + tt[0] + "'");
                        }
                    } else if (tt.size() == 2) {
                        if (!detail::parse_basis_token(tt[1], &term.k)) {
                            throw SyntaxError(line_no, "expected basis vector, got '" + tt[1] + "'");
                        }
                        if (std::isdigit(static_cast<unsigned char>(tt[0][0])) || tt[0][0] == '-') {
                            term.coeff = parse_rational(tt[0], line_no);
                        } else if (detail::is_ident(tt[0])) {
                            std::size_t ignored;
                            if (detail::parse_basis_token(tt[0], &ignored)) {
                                throw SyntaxError(line_no, "missing '+' between terms");
                            }
                            term.is_param = true;
                            term.param = tt[0];
                        } else {
                            throw SyntaxError(line_no, "bad term '" + tt[0] + " " + tt[1] + "'");
                        }
                    } else {
                        throw SyntaxError(line_no, "bad term");
                    }
                    if (term.k < 1 || term.k > doc.dim) {
                        throw IndexOutOfRange(line_no, "basis index e" + std::to_string(term.k) +
                                                           " out of range");
                    }
                    prod.terms.push_back(std::move(term));
                }
                doc.products.push_back(std::move(prod));
                break;
            }
            case State::Done:
                throw SyntaxError(line_no, "content after 'end'");
        }
    }
    if (state != State::Done) {
        throw SyntaxError(line_no + 1, "unexpected end of file");
    }
    return doc;
}

/// Substitute parameters (bindings override document values) and build the
/// structure tensor. Unresolved parameter references are an error.
inline Algebra instantiate(const AlgebraDoc& doc,
                           const std::map<std::string, Rational>& bindings = {}) {
    std::map<std::string, Rational> values(doc.params.begin(), doc.params.end());
    for (const auto& [name, value] : bindings) values[name] = value;
    Algebra a(doc.dim);
    for (const DocProduct& prod : doc.products) {
        std::vector<Scalar> row(doc.dim);
        for (const DocTerm& term : prod.terms) {
            Rational coeff;
            if (term.is_param) {
                auto it = values.find(term.param);
                if (it == values.end()) {
                    throw UnboundParameter("parameter '" + term.param + "' has no value");
                }
                coeff = it->second;
            } else {
                coeff = term.coeff;
            }
            row[term.k - 1] += Scalar(coeff);
        }
        for (std::size_t k = 0; k < doc.dim; ++k) {
            a.set_c(prod.i - 1, prod.j - 1, k, std::move(row[k]));
        }
    }
    return a;
}

/// Deterministic canonical text: products sorted by (i,j), terms by basis
/// index, numeric terms merged, zero terms dropped.
inline std::string serialize(const AlgebraDoc& doc) {
    std::ostringstream out;
    out << "algebra " << doc.name << "\n";
    out << "dim " << doc.dim << "\n";
    for (const auto& [name, value] : doc.params) {
        out << "param " << name << " = " << format_rational(value) << "\n";
    }
    out << "table\n";

    std::vector<DocProduct> products = doc.products;
    std::sort(products.begin(), products.end(), [](const DocProduct& x, const DocProduct& y) {
        return std::pair(x.i, x.j) < std::pair(y.i, y.j);
    });
    for (const DocProduct& prod : products) {
        std::map<std::size_t, Rational> numeric;
        std::vector<DocTerm> symbolic;
        for (const DocTerm& term : prod.terms) {
            if (term.is_param) {
                symbolic.push_back(term);
            } else {
                numeric[term.k] += term.coeff;
            }
        }
        std::stable_sort(symbolic.begin(), symbolic.end(), [](const DocTerm& x, const DocTerm& y) {
            return std::pair(x.k, x.param) < std::pair(y.k, y.param);
        });
        std::vector<std::string> rendered;
        auto sym = symbolic.begin();
        for (std::size_t k = 1; k <= doc.dim; ++k) {
            auto it = numeric.find(k);
            if (it != numeric.end() && it->second != 0) {
                if (it->second == 1) {
                    rendered.push_back("e" + std::to_string(k));
                } else {
                    rendered.push_back(format_rational(it->second) + " e" + std::to_string(k));
                }
            }
            for (; sym != symbolic.end() && sym->k == k; ++sym) {
                rendered.push_back(sym->param + " e" + std::to_string(k));
            }
        }
        if (rendered.empty()) continue;
        out << "e" << prod.i << " * e" << prod.j << " = ";
        for (std::size_t t = 0; t < rendered.size(); ++t) {
            if (t) out << " + ";
            out << rendered[t];
        }
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

/// Document form of a concrete algebra (rational entries only).
inline AlgebraDoc doc_from_algebra(const Algebra& a, const std::string& name) {
    AlgebraDoc doc;
    doc.name = name;
    doc.dim = a.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            DocProduct prod{i + 1, j + 1, {}};
            for (std::size_t k = 0; k < a.dim(); ++k) {
                const Scalar& v = a.c(i, j, k);
                if (v.is_zero()) continue;
                if (!v.is_rational()) {
                    throw ExtensionScalarNotSerializable(
                        "entry c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ") = " + v.str() + " cannot appear in a .zb file");
                }
                prod.terms.push_back({false, v.as_rational(), "", k + 1});
            }
            if (!prod.terms.empty()) doc.products.push_back(std::move(prod));
        }
    }
    return doc;
}

inline std::string serialize(const Algebra& a, const std::string& name = "A") {
    return serialize(doc_from_algebra(a, name));
}

} // namespace zinbiel
