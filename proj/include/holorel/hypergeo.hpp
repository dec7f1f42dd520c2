#pragma once

/*
 * Generalized hypergeometric series pFq(alpha; beta; x) with rational
 * parameters, their Euler-form annihilators
 *     H = delta * prod_k (delta + beta_k - 1) - x * prod_k (delta + alpha_k),
 * the singularity profile of H, and the structural classification of linear
 * dependence on the 0F1 family.
 */

#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/holoseries.hpp"
#include "holorel/ore.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

struct HypergeomSpec {
    std::vector<Rational> alphas;
    std::vector<Rational> betas;

    HypergeomSpec() = default;
    HypergeomSpec(std::vector<Rational> a, std::vector<Rational> b)
        : alphas(std::move(a)), betas(std::move(b)) {
        for (const auto& beta : betas)
            if (beta.is_integer() && beta.sign() <= 0)
                throw Error("beta is a nonpositive integer: " + beta.str());
    }

    size_t p() const { return alphas.size(); }
    size_t q() const { return betas.size(); }

    // sigma = q - p + 1 controls the slope structure at infinity.
    long sigma() const { return static_cast<long>(q()) - static_cast<long>(p()) + 1; }

    std::string str() const {
        std::string s = std::to_string(p()) + "F" + std::to_string(q()) + "[";
        for (size_t i = 0; i < alphas.size(); ++i)
            s += (i ? "," : "") + alphas[i].str();
        s += ";";
        for (size_t i = 0; i < betas.size(); ++i)
            s += (i ? "," : "") + betas[i].str();
        return s + "]";
    }
};

// Euler-form annihilator of pFq in (x, delta).
inline OreOp<RationalFunction> hypergeom_operator(const HypergeomSpec& spec) {
    Poly d = Poly::variable(); // stands for delta
    Poly p1 = d;
    for (const auto& beta : spec.betas)
        p1 *= Poly(std::vector<Rational>{beta - Rational(1), Rational(1)});
    Poly p2(Rational(1));
    for (const auto& alpha : spec.alphas)
        p2 *= Poly(std::vector<Rational>{alpha, Rational(1)});
    int n = std::max(p1.degree(), p2.degree());
    std::vector<RationalFunction> coeffs(n + 1);
    Poly x = Poly::variable();
    for (int i = 0; i <= n; ++i)
        coeffs[i] = RationalFunction(Poly(p1.coeff(i)) - x * Poly(p2.coeff(i)));
    return OreOp<RationalFunction>(DerivKind{Deriv::Euler, Var::x}, std::move(coeffs));
}

// Series coefficients via the Pochhammer ratio recurrence
//   c_k / c_{k-1} = prod(alpha_i + k - 1) / (k * prod(beta_j + k - 1)).
inline TruncSeries hypergeom_series(const HypergeomSpec& spec, long order) {
    std::vector<Rational> c(order + 1);
    c[0] = Rational(1);
    for (long k = 1; k <= order; ++k) {
        Rational num(1), den(k);
        for (const auto& alpha : spec.alphas) num *= alpha + Rational(k - 1);
        for (const auto& beta : spec.betas) den *= beta + Rational(k - 1);
        c[k] = c[k - 1] * num / den;
    }
    return TruncSeries(std::move(c));
}

enum class SingPoint { Zero, One, Infinity };

struct SingularityProfile {
    unsigned order = 0;
    std::vector<std::pair<SingPoint, bool>> points; // (location, regular?)
};

inline SingularityProfile singularity_profile(const HypergeomSpec& spec) {
    SingularityProfile out;
    size_t p = spec.p(), q = spec.q();
    out.order = static_cast<unsigned>(std::max(q + 1, p));
    if (q + 1 == p) {
        out.points = {{SingPoint::Zero, true}, {SingPoint::One, true},
                      {SingPoint::Infinity, true}};
    } else if (q + 1 > p) {
        out.points = {{SingPoint::Zero, true}, {SingPoint::Infinity, false}};
    } else {
        out.points = {{SingPoint::Zero, false}, {SingPoint::Infinity, true}};
    }
    return out;
}

enum class DependenceClass { LinearIn0F1, OnlyIfAlgebraic, NoDependencePossible };

struct PairClassification {
    DependenceClass cls;
    long sigma;
};

// Can pFq solutions be rational-linear in solutions of the 0F1 family (with
// algebraic-function multipliers excluded structurally)?  Decided purely by
// the slope structure: sigma = 2 allows linearity in 0F1 derivatives,
// sigma = 0 (q + 1 = p) leaves only the algebraic case, anything else rules
// the dependence out.
inline PairClassification classify_pair_with_0F1(const HypergeomSpec& spec) {
    long sigma = spec.sigma();
    if (sigma == 0) return {DependenceClass::OnlyIfAlgebraic, sigma};
    if (sigma == 2) return {DependenceClass::LinearIn0F1, sigma};
    return {DependenceClass::NoDependencePossible, sigma};
}

inline std::string dependence_class_name(DependenceClass c) {
    switch (c) {
        case DependenceClass::LinearIn0F1: return "LinearIn0F1";
        case DependenceClass::OnlyIfAlgebraic: return "OnlyIfAlgebraic";
        default: return "NoDependencePossible";
    }
}

inline std::string sing_point_name(SingPoint p) {
    switch (p) {
        case SingPoint::Zero: return "0";
        case SingPoint::One: return "1";
        default: return "infinity";
    }
}

} // namespace holorel
