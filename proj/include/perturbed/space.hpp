#pragma once

// Perturbed metric spaces: a ground set, two bivariate functions D and P,
// and the exact metric they induce (d = D/P in quotient mode with floor
// c > 0 on P, d = D - P in subtractive mode).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perturbed/dsl.hpp"
#include "perturbed/errors.hpp"
#include "perturbed/tolerances.hpp"

namespace perturbed {

// A point of the space. Coordinates are always present; `index` is set
// for elements of an enumerated finite domain (coords then hold its
// embedding row).
struct SpaceElement {
    std::vector<double> coords;
    std::optional<std::size_t> index;

    friend bool operator==(const SpaceElement& a, const SpaceElement& b) {
        return a.coords == b.coords && a.index == b.index;
    }
    // Lexicographic order on coordinates; used for deterministic witness
    // sorting and tie-breaking.
    friend bool operator<(const SpaceElement& a, const SpaceElement& b) {
        if (a.coords != b.coords) return a.coords < b.coords;
        return a.index < b.index;
    }
};

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct FiniteSet {
    std::vector<std::vector<double>> embedding;  // one row per element
};

class Domain {
public:
    Domain() = default;
    explicit Domain(Box box) : desc_(std::move(box)) {}
    explicit Domain(FiniteSet finite) : desc_(std::move(finite)) {}

    bool is_box() const { return std::holds_alternative<Box>(desc_); }
    bool is_finite() const { return std::holds_alternative<FiniteSet>(desc_); }
    const Box& box() const { return std::get<Box>(desc_); }
    const FiniteSet& finite() const { return std::get<FiniteSet>(desc_); }

    std::size_t dimension() const {
        if (is_box()) return box().lo.size();
        const auto& rows = finite().embedding;
        return rows.empty() ? 0 : rows.front().size();
    }

    std::size_t cardinality() const {  // finite domains only
        return finite().embedding.size();
    }

    bool empty() const {
        if (is_finite()) return finite().embedding.empty();
        const Box& b = box();
        if (b.lo.empty()) return true;
        for (std::size_t i = 0; i < b.lo.size(); ++i) {
            if (b.lo[i] > b.hi[i]) return true;
        }
        return false;
    }

    bool contains(const std::vector<double>& coords, double slack = kTauNum) const {
        if (is_finite()) return false;  // membership by index for finite sets
        const Box& b = box();
        if (coords.size() != b.lo.size()) return false;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] < b.lo[i] - slack || coords[i] > b.hi[i] + slack) return false;
        }
        return true;
    }

    SpaceElement element_at(std::size_t index) const {
        const auto& rows = finite().embedding;
        if (index >= rows.size()) {
            throw LeftDomain("finite index " + std::to_string(index) + " out of range");
        }
        return SpaceElement{rows[index], index};
    }

    SpaceElement clamped(std::vector<double> coords) const {
        const Box& b = box();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = std::min(std::max(coords[i], b.lo[i]), b.hi[i]);
        }
        return SpaceElement{std::move(coords), std::nullopt};
    }

    SpaceElement center() const {
        if (is_finite()) {
            if (empty()) throw EmptyDomain("finite domain has no elements");
            return element_at(cardinality() / 2);
        }
        const Box& b = box();
        std::vector<double> c(b.lo.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (b.lo[i] + b.hi[i]);
        return SpaceElement{std::move(c), std::nullopt};
    }

private:
    std::variant<Box, FiniteSet> desc_;
};

// A parsed bivariate expression (D or P). Evaluation must produce a
// finite scalar on every in-domain pair.
class Bivariate {
public:
    Bivariate() = default;
    Bivariate(dsl::ExprPtr expr, std::string source)
        : expr_(std::move(expr)), source_(std::move(source)) {}

    double operator()(const SpaceElement& x, const SpaceElement& y) const {
        const dsl::Value v = dsl::eval(expr_, x.coords, &y.coords);
        if (v.size() != 1) {
            throw DomainError("bivariate expression must evaluate to a scalar");
        }
        if (!std::isfinite(v[0])) {
            throw NonFinite("bivariate expression evaluated to a non-finite value");
        }
        return v[0];
    }

    const std::string& source() const { return source_; }
    const dsl::ExprPtr& expr() const { return expr_; }

private:
    dsl::ExprPtr expr_;
    std::string source_;
};

enum class Mode { Quotient, Subtractive };

struct PerturbedSpace {
    Domain domain;
    Bivariate D;
    Bivariate P;
    Mode mode = Mode::Quotient;
    double c = 0.0;            // perturbation floor, quotient mode
    bool c_estimated = false;  // floor inferred from samples, not trusted
    double eq_tol = kTauNum;   // element equality tolerance under d
};

// The exact metric d induced by (D, P). Quotient: D/P; subtractive: D-P.
// Results within kTauNum of zero clamp to exactly zero.
inline double exact_distance(const PerturbedSpace& space, const SpaceElement& x,
                             const SpaceElement& y) {
    const double dv = space.D(x, y);
    const double pv = space.P(x, y);
    double result = 0.0;
    if (space.mode == Mode::Quotient) {
        if (pv < space.c - kTauNum) {
            throw FloorViolation("P(x,y) = " + std::to_string(pv) + " below floor c = " +
                                 std::to_string(space.c));
        }
        if (pv <= 0.0) {
            throw FloorViolation("P(x,y) is not positive");
        }
        result = dv / pv;
        if (result < -kTauNum) {
            throw NegativeExact("quotient exact distance is negative: " + std::to_string(result));
        }
    } else {
        result = dv - pv;
        if (result < -kTauNum) {
            throw NegativeExact("subtractive exact distance is negative: " +
                                std::to_string(result));
        }
    }
    return result < 0.0 ? 0.0 : result;
}

namespace detail {

// Raw exact metric with no clamping and no error on negatives; used by
// the axiom checker so failures become recorded witnesses instead of
// exceptions.
inline double exact_distance_raw(const PerturbedSpace& space, const SpaceElement& x,
                                 const SpaceElement& y) {
    const double dv = space.D(x, y);
    const double pv = space.P(x, y);
    if (space.mode == Mode::Quotient) {
        if (pv <= 0.0) throw FloorViolation("P(x,y) is not positive");
        return dv / pv;
    }
    return dv - pv;
}

}  // namespace detail

}  // namespace perturbed
