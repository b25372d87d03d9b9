#pragma once

// The form catalog: every named modular object the engine knows about.
// Definitions are data, loaded from a structured text file that mirrors the
// basis table and the newform expressions (see docs/file-formats.md).
//
// A form is defined either by a closed-form expression (eta products,
// Eisenstein combinations, previously defined forms, derivatives) or by a
// truncated coefficient list. List-defined forms are Hecke eigenforms: their
// coefficients extend multiplicatively, and indices that would need a(p) for
// a prime beyond the listed range are reported as unavailable unless the
// catalog also carries a certified closed-form extension.

#include <qconv/divisor.hpp>
#include <qconv/eisenstein.hpp>
#include <qconv/form_expr.hpp>
#include <qconv/linalg.hpp>
#include <qconv/qseries.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qconv {

struct PartialResultError : std::runtime_error {
    PartialResultError(std::string form_name, long index)
        : std::runtime_error("coefficient a(" + std::to_string(index) + ") of " + form_name +
                             " is unavailable from the truncated data"),
          form(std::move(form_name)),
          first_unavailable(index) {}
    std::string form;
    long first_unavailable;
};

struct UnsupportedSpaceError : std::runtime_error {
    UnsupportedSpaceError(int k, int n)
        : std::runtime_error("no basis available for weight " + std::to_string(k) + ", level " +
                             std::to_string(n)),
          weight(k),
          level(n) {}
    int weight;
    int level;
};

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

// index of Gamma_0(N) in SL(2,Z): N * prod_{p|N} (1 + 1/p)
inline long gamma0_index(int level) {
    if (level < 1) throw std::invalid_argument("gamma0_index: level must be positive");
    long idx = level;
    for (auto [p, e] : factorize(level)) idx = idx / p * (p + 1);
    return idx;
}

// Number of leading coefficients (exponents 0 .. bound-1 at least) whose
// agreement certifies equality of two forms in M_k(Gamma_0(N)):
// floor(k * index / 12) + 1.
inline int sturm_bound(int weight, int level) {
    long idx = gamma0_index(level);
    return static_cast<int>((static_cast<long>(weight) * idx) / 12) + 1;
}

// n-th coefficient of E_k (k = 2 means the quasimodular E_2)
inline Rational eisenstein_coefficient(int k, long n) {
    if (n == 0) return Rational(1);
    if (k == 2) return Rational(-24) * Rational(sigma(1, Integer(n)));
    return Rational(-2L * k) / bernoulli(k) * Rational(sigma(k - 1, Integer(n)));
}

// ---------------------------------------------------------------------------
// Hecke extension of a truncated eigenform

class HeckeExtender {
public:
    HeckeExtender() = default;

    HeckeExtender(std::string name, int weight, int level, std::vector<Integer> listed)
        : name_(std::move(name)), weight_(weight), level_(level), listed_(std::move(listed)) {
        if (listed_.empty() || listed_[0] != 1)
            throw std::invalid_argument("hecke: " + name_ + " must be normalized (a(1) = 1)");
        // the recursion needs a(p) for every prime p in the listed range
        verify_listed_consistency();
    }

    long listed_through() const { return static_cast<long>(listed_.size()); }

    // nullopt when the index would require a(p) for an unlisted prime
    std::optional<Integer> coeff(long n) const {
        if (n < 0) throw std::invalid_argument("hecke: negative index");
        if (n == 0) return Integer(0);
        if (n <= listed_through()) return listed_[static_cast<size_t>(n - 1)];
        Integer result = 1;
        bool missing = false;
        for (auto [p, e] : factorize(n)) {
            auto ppow = prime_power(p, e);
            if (!ppow) {
                missing = true;
                continue;
            }
            if (*ppow == 0) return Integer(0);  // a zero factor settles the product
            result *= *ppow;
        }
        if (missing) return std::nullopt;
        return result;
    }

    long first_unavailable_below(long prec) const {
        for (long n = 1; n < prec; ++n)
            if (!coeff(n)) return n;
        return -1;
    }

private:
    std::optional<Integer> prime_power(long p, int e) const {
        if (p > listed_through()) return std::nullopt;
        Integer ap = listed_[static_cast<size_t>(p - 1)];
        if (e == 1) return ap;
        if (level_ % p == 0) {
            Integer r;
            mpz_pow_ui(r.get_mpz_t(), ap.get_mpz_t(), static_cast<unsigned long>(e));
            return r;
        }
        Integer pk;  // p^{k-1}
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(weight_ - 1));
        Integer prev = 1, cur = ap;
        for (int r = 1; r < e; ++r) {
            Integer next = ap * cur - pk * prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }

    void verify_listed_consistency() const {
        // every composite listed index must match the multiplicative recursion
        for (long n = 2; n <= listed_through(); ++n) {
            auto f = factorize(n);
            if (f.size() == 1 && f[0].second == 1) continue;  // primes are the seed data
            Integer expect = 1;
            for (auto [p, e] : f) {
                auto v = prime_power(p, e);
                if (!v) throw std::invalid_argument("hecke: " + name_ + " list too short for index " +
                                                    std::to_string(n));
                expect *= *v;
            }
            if (expect != listed_[static_cast<size_t>(n - 1)])
                throw std::invalid_argument("hecke: " + name_ + " listed a(" + std::to_string(n) +
                                            ") contradicts the eigenform recursion");
        }
    }

    std::string name_;
    int weight_ = 0;
    int level_ = 1;
    std::vector<Integer> listed_;
};

// ---------------------------------------------------------------------------
// Catalog definitions

struct FormDef {
    std::string name;
    int weight = 0;
    int level = 1;
    std::string expr;             // closed form, when present
    std::vector<Integer> listed;  // a(1)..a(L), when list-defined
    std::string extend;           // certified closed-form extension of a list

    bool list_defined() const { return !listed.empty(); }
};

struct BasisSpec {
    bool eisenstein = false;
    int eis_weight = 0;
    std::string form;  // when !eisenstein
    int dilation = 1;
};

struct BasisElement {
    BasisSpec spec;
    int effective_level = 1;
    std::string display;
    QSeries series{1};
};

struct SpaceDescriptor {
    int weight = 0;
    int level = 1;
    int sturm = 0;
    std::vector<BasisElement> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

// pretty name: Delta_10_3_1 with dilation 2 -> "Delta_{10,3;1}(2z)"
inline std::string display_name(const BasisSpec& s) {
    std::string base;
    if (s.eisenstein) {
        base = "E" + std::to_string(s.eis_weight);
    } else {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s.form + "_") {
            if (c == '_') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        base = parts[0];
        if (parts.size() == 3)
            base += "_{" + parts[1] + "," + parts[2] + "}";
        else if (parts.size() == 4)
            base += "_{" + parts[1] + "," + parts[2] + ";" + parts[3] + "}";
    }
    std::string arg = s.dilation == 1 ? "z" : std::to_string(s.dilation) + "z";
    return base + "(" + arg + ")";
}

class FormCatalog {
public:
    static FormCatalog parse(const std::string& text) {
        FormCatalog cat;
        cat.parse_text(text);
        return cat;
    }

    static FormCatalog load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open catalog file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    bool has_form(const std::string& name) const { return forms_.count(name) != 0; }

    const FormDef& form(const std::string& name) const {
        auto it = forms_.find(name);
        if (it == forms_.end()) throw std::invalid_argument("unknown catalog form: " + name);
        return it->second;
    }

    const std::vector<std::string>& form_names() const { return form_order_; }

    // q-expansion to the requested precision
    QSeries newform(const std::string& name, int prec) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        std::set<std::string> stack;
        return materialize(name, prec, stack);
    }

    // single coefficient, clip-aware: nullopt when the truncated data cannot
    // reach the index
    std::optional<Rational> coefficient(const std::string& name, long n) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        const FormDef& def = form(name);
        if (n < 0) return Rational(0);
        if (def.list_defined() && def.extend.empty()) {
            if (n == 0) return Rational(0);
            auto v = hecke_.at(name).coeff(n);
            if (!v) return std::nullopt;
            return Rational(*v);
        }
        int need = static_cast<int>(n) + 1;
        auto it = cache_.find(name);
        if (it == cache_.end() || it->second.precision() < need) {
            int target = std::max(need, 64);
            if (it != cache_.end()) target = std::max(target, 2 * it->second.precision());
            std::set<std::string> stack;
            materialize(name, target, stack);
        }
        return cache_.at(name).at(static_cast<int>(n));
    }

    bool space_listed(int weight, int level) const { return spaces_.count({weight, level}) != 0; }

    bool space_supported(int weight, int level) const {
        if (space_listed(weight, level)) return true;
        return !find_covering_row(weight, level).empty();
    }

    // Basis exactly in the catalog's listed order; for a level that is a
    // divisor of a listed row, the subset of elements whose effective level
    // divides it. Construction checks full row rank on exponents 0..sturm.
    std::shared_ptr<const SpaceDescriptor> space_basis(int weight, int level, int prec) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        int sturm = sturm_bound(weight, level);
        int need = std::max(prec, sturm + 2);
        auto key = std::make_pair(weight, level);
        auto it = space_cache_.find(key);
        if (it != space_cache_.end() && !it->second->basis.empty() &&
            it->second->basis[0].series.precision() >= need)
            return it->second;

        std::vector<BasisSpec> specs = resolve_specs(weight, level);
        auto sd = std::make_shared<SpaceDescriptor>();
        sd->weight = weight;
        sd->level = level;
        sd->sturm = sturm;
        for (const auto& s : specs) {
            BasisElement el;
            el.spec = s;
            el.effective_level = s.eisenstein ? s.dilation : form(s.form).level * s.dilation;
            el.display = display_name(s);
            QSeries base = s.eisenstein ? eisenstein(s.eis_weight, need) : newform(s.form, need);
            el.series = dilate(base, s.dilation);
            sd->basis.push_back(std::move(el));
        }
        // independence certificate on the solve window
        Matrix m;
        for (const auto& el : sd->basis) {
            std::vector<Rational> row;
            for (int e = 0; e <= sturm; ++e) row.push_back(el.series.at(e));
            m.push_back(std::move(row));
        }
        if (rank(m) != sd->dimension())
            throw std::runtime_error("basis for weight " + std::to_string(weight) + " level " +
                                     std::to_string(level) + " is not linearly independent through its Sturm window");
        space_cache_[key] = sd;
        return sd;
    }

    // coefficient of a basis element at any index (clip-aware)
    std::optional<Rational> element_coefficient(const BasisElement& el, long n) const {
        if (n == 0) return el.spec.eisenstein ? Rational(1) : coefficient(el.spec.form, 0);
        if (n % el.spec.dilation != 0) return Rational(0);
        long m = n / el.spec.dilation;
        if (el.spec.eisenstein) return eisenstein_coefficient(el.spec.eis_weight, m);
        return coefficient(el.spec.form, m);
    }

    // Direct access to the Hecke machinery of a list-defined form.
    const HeckeExtender& hecke(const std::string& name) const {
        auto it = hecke_.find(name);
        if (it == hecke_.end()) throw std::invalid_argument("form is not list-defined: " + name);
        return it->second;
    }

private:
    QSeries materialize(const std::string& name, int prec, std::set<std::string>& stack) const {
        const FormDef& def = form(name);
        auto it = cache_.find(name);
        if (it != cache_.end() && it->second.precision() >= prec) return it->second.truncate(prec);
        if (stack.count(name)) throw std::runtime_error("catalog definition cycle at " + name);
        stack.insert(name);

        QSeries out(prec);
        if (def.list_defined()) {
            long listed_len = static_cast<long>(def.listed.size());
            if (!def.extend.empty()) {
                int work = std::max<long>(prec, listed_len + 1);
                QSeries full = eval_expr(def.extend, static_cast<int>(work), stack);
                // certification: the closed form must reproduce the entire list
                for (long i = 1; i <= listed_len && i < work; ++i)
                    if (full.at(static_cast<int>(i)) != Rational(def.listed[static_cast<size_t>(i - 1)]))
                        throw std::runtime_error("extension of " + name +
                                                 " contradicts its listed coefficient a(" + std::to_string(i) + ")");
                out = full.truncate(prec);
            } else {
                const HeckeExtender& h = hecke_.at(name);
                for (long i = 1; i < prec; ++i) {
                    auto v = h.coeff(i);
                    if (!v) throw PartialResultError(name, i);
                    out.at(static_cast<int>(i)) = Rational(*v);
                }
            }
        } else {
            out = eval_expr(def.expr, prec, stack);
        }
        stack.erase(name);
        auto cached = cache_.find(name);
        if (cached == cache_.end() || cached->second.precision() < out.precision()) cache_[name] = out;
        return out;
    }

    QSeries eval_expr(const std::string& src, int prec, std::set<std::string>& stack) const {
        return eval_form_expr(src, prec, [this, &stack](const std::string& ref, int p) {
            return materialize(ref, p, stack);
        });
    }

    std::string find_covering_row(int weight, int level) const {
        int best = 0;
        for (const auto& [key, specs] : spaces_) {
            if (key.first != weight) continue;
            if (key.second % level != 0) continue;
            if (best == 0 || key.second < best) best = key.second;
        }
        return best ? "M" + std::to_string(weight) + "(" + std::to_string(best) + ")" : "";
    }

    std::vector<BasisSpec> resolve_specs(int weight, int level) const {
        auto it = spaces_.find({weight, level});
        if (it != spaces_.end()) return it->second;
        int best = 0;
        for (const auto& [key, specs] : spaces_) {
            if (key.first != weight || key.second % level != 0) continue;
            if (best == 0 || key.second < best) best = key.second;
        }
        if (best == 0) throw UnsupportedSpaceError(weight, level);
        std::vector<BasisSpec> out;
        for (const auto& s : spaces_.at({weight, best})) {
            int eff = s.eisenstein ? s.dilation : form(s.form).level * s.dilation;
            if (level % eff == 0) out.push_back(s);
        }
        return out;
    }

    // ---- file parsing ----------------------------------------------------

    void parse_text(const std::string& text) {
        std::istringstream in(text);
        std::string line, logical;
        int lineno = 0;
        auto flush = [&](const std::string& rec) {
            if (!rec.empty()) parse_record(rec, lineno);
        };
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
            if (line.empty()) continue;
            if (line.back() == '\\') {
                line.pop_back();
                logical += line;
                continue;
            }
            logical += line;
            flush(logical);
            logical.clear();
        }
        flush(logical);
    }

    void parse_record(const std::string& rec, int lineno) {
        std::istringstream ss(rec);
        std::string kw;
        ss >> kw;
        auto bad = [&](const std::string& why) {
            throw std::runtime_error("catalog line " + std::to_string(lineno) + ": " + why);
        };
        auto rest_after_assign = [&]() {
            auto pos = rec.find(":=");
            if (pos == std::string::npos) bad("missing ':='");
            return rec.substr(pos + 2);
        };
        if (kw == "form") {
            FormDef def;
            std::string w, l;
            ss >> def.name >> w;
            if (w != "weight") bad("expected 'weight'");
            ss >> def.weight >> l;
            if (l != "level") bad("expected 'level'");
            ss >> def.level;
            std::string body = rest_after_assign();
            auto first = body.find_first_not_of(" \t");
            if (first == std::string::npos) bad("empty definition");
            if (body.compare(first, 7, "coeffs[") == 0) {
                def.listed = parse_int_list(body.substr(first + 7), lineno);
            } else {
                def.expr = body;
            }
            if (forms_.count(def.name)) bad("duplicate form " + def.name);
            if (def.list_defined())
                hecke_.emplace(def.name, HeckeExtender(def.name, def.weight, def.level, def.listed));
            form_order_.push_back(def.name);
            forms_.emplace(def.name, std::move(def));
        } else if (kw == "extend") {
            std::string name;
            ss >> name;
            auto it = forms_.find(name);
            if (it == forms_.end()) bad("extend of unknown form " + name);
            if (!it->second.list_defined()) bad("extend of a non-list form " + name);
            it->second.extend = rest_after_assign();
        } else if (kw == "space") {
            std::string w, l;
            int weight = 0, level = 0;
            ss >> w >> weight >> l >> level;
            if (w != "weight" || l != "level") bad("expected 'space weight K level N'");
            std::string body = rest_after_assign();
            auto specs = parse_basis_list(body, lineno);
            if (spaces_.count({weight, level})) bad("duplicate space");
            spaces_[{weight, level}] = std::move(specs);
        } else {
            bad("unknown directive '" + kw + "'");
        }
    }

    std::vector<Integer> parse_int_list(const std::string& body, int lineno) {
        std::vector<Integer> out;
        std::string cur;
        for (char c : body) {
            if (c == ']') break;
            if (c == ',') {
                if (!cur.empty()) out.emplace_back(cur), cur.clear();
                continue;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
        }
        if (!cur.empty()) out.emplace_back(cur);
        if (out.empty())
            throw std::runtime_error("catalog line " + std::to_string(lineno) + ": empty coefficient list");
        return out;
    }

    std::vector<BasisSpec> parse_basis_list(const std::string& body, int lineno) const {
        std::vector<BasisSpec> out;
        detail::Lexer lex(body);
        while (lex.peek().kind != detail::Token::End) {
            if (lex.peek().kind != detail::Token::Ident)
                throw std::runtime_error("catalog line " + std::to_string(lineno) + ": basis element expected");
            BasisSpec s;
            std::string name = lex.next().text;
            if (auto k = detail::eisenstein_weight(name)) {
                s.eisenstein = true;
                s.eis_weight = *k;
            } else {
                if (!forms_.count(name))
                    throw std::runtime_error("catalog line " + std::to_string(lineno) + ": unknown form " + name);
                s.form = name;
            }
            if (lex.accept_punct('(')) {
                if (lex.peek().kind != detail::Token::Int)
                    throw std::runtime_error("catalog line " + std::to_string(lineno) + ": dilation expected");
                s.dilation = static_cast<int>(lex.next().value);
                lex.expect_punct(')');
            }
            out.push_back(s);
            lex.accept_punct(',');
        }
        return out;
    }

    std::map<std::string, FormDef> forms_;
    std::vector<std::string> form_order_;
    std::map<std::string, HeckeExtender> hecke_;
    std::map<std::pair<int, int>, std::vector<BasisSpec>> spaces_;
    mutable std::map<std::string, QSeries> cache_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const SpaceDescriptor>> space_cache_;
    mutable std::recursive_mutex mu_;
};

}  // namespace qconv
