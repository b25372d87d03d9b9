#pragma once

// Expressing a q-series in a space basis. The solve window is exponents
// 0..sturm, which certifies the combination for forms genuinely in the
// space; every remaining known coefficient of the target is then
// re-verified, which also catches catalog data errors. A verification index
// that a truncated basis form cannot reach is recorded as clipped, never
// silently skipped.

#include <qconv/catalog.hpp>
#include <qconv/linalg.hpp>
#include <qconv/qseries.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qconv {

struct LinearCombination {
    std::shared_ptr<const SpaceDescriptor> space;
    std::vector<Rational> coefficients;  // one per basis element, in basis order
    int certified_precision = 0;         // combination = target on all non-clipped exponents below this
    std::vector<long> clipped;           // verification indices skipped for lack of data

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += coefficients[i].str() + "*" + space->basis[i].display;
        }
        return s.empty() ? "0" : s;
    }
};

struct NonMembership {
    long exponent = -1;
    Rational expected;  // coefficient of the target
    Rational actual;    // coefficient of the combination
    std::string detail;
};

struct ExpressResult {
    std::optional<LinearCombination> combination;
    std::optional<NonMembership> failure;

    bool ok() const { return combination.has_value(); }
    const LinearCombination& operator*() const { return *combination; }
};

inline ExpressResult express_in_basis(const QSeries& target, const FormCatalog& catalog,
                                      std::shared_ptr<const SpaceDescriptor> space) {
    const int sturm = space->sturm;
    if (target.precision() < sturm + 5)
        throw std::invalid_argument("express_in_basis: target precision " + std::to_string(target.precision()) +
                                    " is below sturm + 5 = " + std::to_string(sturm + 5));
    const int dim = space->dimension();

    // rows = exponents 0..sturm, columns = basis elements
    Matrix m(static_cast<size_t>(sturm) + 1, std::vector<Rational>(static_cast<size_t>(dim)));
    std::vector<Rational> rhs(static_cast<size_t>(sturm) + 1);
    for (int e = 0; e <= sturm; ++e) {
        for (int j = 0; j < dim; ++j) m[static_cast<size_t>(e)][static_cast<size_t>(j)] = space->basis[static_cast<size_t>(j)].series.at(e);
        rhs[static_cast<size_t>(e)] = target.at(e);
    }

    SolveOutcome sol = solve(std::move(m), std::move(rhs));
    ExpressResult out;
    if (sol.status == SolveOutcome::Inconsistent) {
        NonMembership nm;
        nm.exponent = sol.inconsistent_row;
        nm.expected = target.at(sol.inconsistent_row);
        nm.detail = "no combination matches the solve window (first failing exponent " +
                    std::to_string(sol.inconsistent_row) + ")";
        // reconstruct the combination value is not meaningful here; leave actual at 0
        out.failure = nm;
        return out;
    }
    // The space construction guarantees full column rank on the window, so
    // the solution is unique.

    LinearCombination comb;
    comb.space = space;
    comb.coefficients = sol.solution;

    // re-verify on every remaining known coefficient of the target
    for (int n = sturm + 1; n < target.precision(); ++n) {
        Rational acc(0);
        bool clipped = false;
        for (int j = 0; j < dim; ++j) {
            if (comb.coefficients[static_cast<size_t>(j)].is_zero()) continue;
            auto c = catalog.element_coefficient(space->basis[static_cast<size_t>(j)], n);
            if (!c) {
                clipped = true;
                break;
            }
            acc += comb.coefficients[static_cast<size_t>(j)] * *c;
        }
        if (clipped) {
            comb.clipped.push_back(n);
            continue;
        }
        if (acc != target.at(n)) {
            NonMembership nm;
            nm.exponent = n;
            nm.expected = target.at(n);
            nm.actual = acc;
            nm.detail = "post-verification mismatch at exponent " + std::to_string(n);
            out.failure = nm;
            return out;
        }
    }
    comb.certified_precision = target.precision();
    out.combination = std::move(comb);
    return out;
}

inline ExpressResult express_in_basis(const QSeries& target, const FormCatalog& catalog, int weight,
                                      int level) {
    auto space = catalog.space_basis(weight, level, sturm_bound(weight, level) + 2);
    return express_in_basis(target, catalog, std::move(space));
}

// Sum of coefficients * basis element coefficients at one index; nullopt when
// a needed coefficient is unavailable (clipped index).
inline std::optional<Rational> combination_coefficient(const FormCatalog& catalog,
                                                       const LinearCombination& comb, long n) {
    Rational acc(0);
    for (size_t j = 0; j < comb.coefficients.size(); ++j) {
        if (comb.coefficients[j].is_zero()) continue;
        auto c = catalog.element_coefficient(comb.space->basis[j], n);
        if (!c) return std::nullopt;
        acc += comb.coefficients[j] * *c;
    }
    return acc;
}

}  // namespace qconv
