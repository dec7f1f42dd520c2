#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "holorel/hypergeo.hpp"
#include "holorel/newton.hpp"
#include "holorel/ore.hpp"

#include "test_util.hpp"

using namespace holorel;
using testutil::Rng;

namespace {

const DerivKind kEt{Deriv::Euler, Var::t};

using LOp = OreOp<Laurent<Rational>>;
using LR = Laurent<Rational>;

// Euler-form operator at infinity for pFq, normalized (unit dropped).
OreOp<RationalFunction> h_at_infinity(size_t p, size_t q) {
    std::vector<Rational> alphas, betas;
    for (size_t i = 0; i < p; ++i) alphas.emplace_back(Rational(2 * long(i) + 1, 3));
    for (size_t j = 0; j < q; ++j) betas.emplace_back(Rational(2 * long(j) + 1, 2));
    HypergeomSpec spec(alphas, betas);
    return op_to_infinity(hypergeom_operator(spec)).op;
}

LOp rnd_laurent_op(Rng& rng, int max_order) {
    int n = static_cast<int>(rng.range(1, max_order));
    std::vector<LR> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        LR l;
        int terms = static_cast<int>(rng.range(1, 2));
        for (int k = 0; k < terms; ++k)
            l = l + LR::term(static_cast<int>(rng.range(-2, 2)), rng.rational());
        c[i] = l;
    }
    if (c[n].is_zero()) c[n] = LR(Rational(1));
    return LOp(kEt, std::move(c));
}

std::vector<SlopeEntry> merged_slopes(const NewtonPolygon& a, const NewtonPolygon& b) {
    std::vector<SlopeEntry> out = a.slopes;
    for (const auto& s : b.slopes) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const SlopeEntry& e) { return e.slope == s.slope; });
        if (it == out.end())
            out.push_back(s);
        else
            it->multiplicity += s.multiplicity;
    }
    std::sort(out.begin(), out.end(),
              [](const SlopeEntry& x, const SlopeEntry& y) { return x.slope < y.slope; });
    return out;
}

} // namespace

TEST_CASE("newton polygon pinned examples") {
    NewtonPolygon p01 = newton_polygon(h_at_infinity(0, 1));
    CHECK(p01.vertices == std::vector<std::pair<long, long>>{{0, 0}, {2, 1}});
    REQUIRE(p01.slopes.size() == 1);
    CHECK(p01.slopes[0] == SlopeEntry{Rational(1, 2), 2});

    NewtonPolygon p12 = newton_polygon(h_at_infinity(1, 2));
    CHECK(p12.vertices == std::vector<std::pair<long, long>>{{0, 0}, {1, 0}, {3, 1}});
    REQUIRE(p12.slopes.size() == 2);
    CHECK(p12.slopes[0] == SlopeEntry{Rational(0), 1});
    CHECK(p12.slopes[1] == SlopeEntry{Rational(1, 2), 2});

    // regular operator: delta_t alone
    NewtonPolygon reg = newton_polygon(LOp(kEt, {LR(), LR(Rational(1))}));
    CHECK(reg.vertices == std::vector<std::pair<long, long>>{{0, 0}, {1, 0}});
    REQUIRE(reg.slopes.size() == 1);
    CHECK(reg.slopes[0] == SlopeEntry{Rational(0), 1});

    // (p,q) = (2,4): slopes {(0,2),(1/3,3)}
    NewtonPolygon p24 = newton_polygon(h_at_infinity(2, 4));
    REQUIRE(p24.slopes.size() == 2);
    CHECK(p24.slopes[0] == SlopeEntry{Rational(0), 2});
    CHECK(p24.slopes[1] == SlopeEntry{Rational(1, 3), 3});

    CHECK_THROWS_WITH(newton_polygon(LOp(kEt)), "zero operator");
}

TEST_CASE("slope multiplicities sum to the order on the grid") {
    for (size_t q = 0; q <= 6; ++q)
        for (size_t p = 0; p <= q; ++p) {
            NewtonPolygon np = newton_polygon(h_at_infinity(p, q));
            long total = 0;
            for (const auto& s : np.slopes) total += s.multiplicity;
            CHECK(total == static_cast<long>(q) + 1);
        }
}

TEST_CASE("unit multiples translate the polygon and fix the slopes") {
    Rng rng(31);
    for (int i = 0; i < 15; ++i) {
        LOp a = rnd_laurent_op(rng, 3);
        int k = static_cast<int>(rng.range(-3, 3));
        Rational c = rng.nonzero_rational();
        LOp scaled = a.left_mul(LR::term(k, c));
        NewtonPolygon base = newton_polygon(a);
        NewtonPolygon moved = newton_polygon(scaled);
        CHECK(moved.slopes == base.slopes);
        REQUIRE(moved.vertices.size() == base.vertices.size());
        for (size_t j = 0; j < base.vertices.size(); ++j) {
            CHECK(moved.vertices[j].first == base.vertices[j].first);
            CHECK(moved.vertices[j].second == base.vertices[j].second + k);
        }
    }
}

TEST_CASE("minkowski additivity of slopes under composition") {
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        LOp a = rnd_laurent_op(rng, 2);
        LOp b = rnd_laurent_op(rng, 2);
        NewtonPolygon pa = newton_polygon(a);
        NewtonPolygon pb = newton_polygon(b);
        NewtonPolygon pc = newton_polygon(op_compose(a, b));
        CHECK(pc.slopes == merged_slopes(pa, pb));
    }
}

TEST_CASE("determining monomials for the 0F1 family") {
    OreOp<RationalFunction> h = h_at_infinity(0, 1);
    DeterminingReport rep = determining_monomials(h, Rational(1, 2));
    CHECK(rep.sigma == 2);
    // char polynomial is monic a^2 - 4; roots +-2
    CHECK(rep.char_poly == Poly(std::vector<Rational>{Rational(-4), Rational(0), Rational(1)}));
    REQUIRE(rep.monomials.size() == 2);
    CHECK(rep.monomials[0] == canonical_monomial(Rational(2), 0, 2, Rational(1, 2)));
    CHECK(rep.monomials[1] == canonical_monomial(Rational(2), 1, 2, Rational(1, 2)));
    CHECK(!rep.residual.has_value());
    CHECK(monomial_str(rep.monomials[0]) == "2*t^(-1/2)");
    CHECK(monomial_str(rep.monomials[1]) == "2*zeta(1/2)*t^(-1/2)");
}

TEST_CASE("determining monomials across the grid") {
    for (size_t q = 0; q <= 5; ++q)
        for (size_t p = 0; p <= q; ++p) {
            long sigma = static_cast<long>(q) - static_cast<long>(p) + 1;
            DeterminingReport rep =
                determining_monomials(h_at_infinity(p, q), Rational(1, sigma));
            CHECK(rep.sigma == static_cast<unsigned>(sigma));
            // char_poly = a^p * (a^sigma - sigma^sigma), monic
            Poly expected = Poly::monomial(static_cast<int>(sigma)) +
                            (-Poly(Rational(sigma).pow(sigma)));
            expected = expected * Poly::monomial(static_cast<int>(p));
            CHECK(rep.char_poly == expected);
            REQUIRE(rep.monomials.size() == static_cast<size_t>(sigma));
            for (long j = 0; j < sigma; ++j)
                CHECK(rep.monomials[j] ==
                      canonical_monomial(Rational(sigma), j, static_cast<unsigned>(sigma),
                                         Rational(1, sigma)));
        }
}

TEST_CASE("determining monomials ignore the beta parameters") {
    Rational slope(1, 2);
    DeterminingReport base =
        determining_monomials(op_to_infinity(hypergeom_operator(
                                  HypergeomSpec({}, {Rational(1, 2)}))).op, slope);
    for (long num = 1; num <= 10; ++num) {
        HypergeomSpec spec({}, {Rational(num, 7)});
        DeterminingReport rep =
            determining_monomials(op_to_infinity(hypergeom_operator(spec)).op, slope);
        CHECK(rep.char_poly == base.char_poly);
        CHECK(rep.monomials == base.monomials);
    }
}

TEST_CASE("slope zero and error paths") {
    OreOp<RationalFunction> h = h_at_infinity(1, 2);
    DeterminingReport reg = determining_monomials(h, Rational(0));
    CHECK(reg.monomials.empty());
    CHECK(reg.char_poly.degree() == 0);

    CHECK_THROWS_WITH(determining_monomials(h, Rational(1, 3)),
                      "slope 1/3 is not a slope of the polygon");
    CHECK_THROWS_AS(determining_monomials(h, Rational(-1)), Error);
}

TEST_CASE("conjugation by a root raises the valuation of the constant coefficient") {
    // Structural content of the valuation test: at a root of the
    // characteristic polynomial the lowest term of the delta_w^0
    // coefficient cancels; at a non-root it survives.
    for (auto [p, q] : {std::pair<size_t, size_t>{0, 1}, {1, 2}, {0, 2}}) {
        long sigma = static_cast<long>(q) - static_cast<long>(p) + 1;
        OreOp<RationalFunction> h = h_at_infinity(p, q);
        RamifiedOp ram = op_ramify(h, static_cast<unsigned>(sigma));
        RamifiedOp at_root = op_exp_conjugate(ram, Rational(sigma));
        RamifiedOp off_root = op_exp_conjugate(ram, Rational(sigma + 1));
        REQUIRE(!off_root.base.coeff(0).is_zero());
        // a vanishing coefficient counts as valuation +infinity
        CHECK((at_root.base.coeff(0).is_zero() ||
               at_root.base.coeff(0).valuation() > off_root.base.coeff(0).valuation()));
    }
}

TEST_CASE("canonical monomial normal form") {
    // negative scale folds into the phase: -2 = 2*zeta(1/2)
    DeterminingMonomial neg = canonical_monomial(Rational(-2), 0, 2, Rational(1, 2));
    CHECK(neg == canonical_monomial(Rational(2), 1, 2, Rational(1, 2)));
    // phase reduction: zeta(2/4) = zeta(1/2)
    DeterminingMonomial red = canonical_monomial(Rational(3), 2, 4, Rational(1, 4));
    CHECK(red.zeta_num == 1);
    CHECK(red.zeta_den == 2);
    // zero scale collapses to the zero monomial
    DeterminingMonomial zero = canonical_monomial(Rational(0), 3, 4, Rational(1, 2));
    CHECK(zero.scale.is_zero());
    CHECK(zero.zeta_num == 0);
    CHECK(zero.zeta_den == 1);
    CHECK(zero.slope.is_zero());
    CHECK(monomial_str(zero) == "0");
}

TEST_CASE("symmetric power determining lists") {
    auto m0 = sym_power_determining_list(0);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0].scale.is_zero());

    auto m1 = sym_power_determining_list(1);
    REQUIRE(m1.size() == 2);
    // canonical order lists +2 before -2 = 2*zeta(1/2)
    CHECK(m1[0] == canonical_monomial(Rational(2), 0, 2, Rational(1, 2)));
    CHECK(m1[1] == canonical_monomial(Rational(-2), 0, 2, Rational(1, 2)));

    auto m3 = sym_power_determining_list(3);
    REQUIRE(m3.size() == 4);
    std::vector<long> scales;
    for (const auto& m : m3) {
        Rational v = m.zeta_den == 2 ? -m.scale : m.scale;
        scales.push_back(*v.to_long());
    }
    std::sort(scales.begin(), scales.end());
    CHECK(scales == std::vector<long>{-6, -2, 2, 6});
}

TEST_CASE("matching determining lists") {
    // target H(1,2): slope-1/2 monomials +-2 t^{-1/2}; candidate Sym^1
    auto target12 = determining_monomials(h_at_infinity(1, 2), Rational(1, 2)).monomials;
    MatchResult hit = match_determining_lists(sym_power_determining_list(1), target12);
    CHECK(hit.compatible);
    REQUIRE(hit.forced.has_value());
    CHECK(*hit.forced == std::vector<unsigned>{1});

    // target H(1,3): sigma = 3, candidate Sym^1 cannot embed
    auto target13 = determining_monomials(h_at_infinity(1, 3), Rational(1, 3)).monomials;
    MatchResult miss = match_determining_lists(sym_power_determining_list(1), target13);
    CHECK(!miss.compatible);

    // {0,0} against a target holding two zeros
    std::vector<DeterminingMonomial> zeros(2, canonical_monomial(Rational(0), 0, 1, Rational(0)));
    std::vector<DeterminingMonomial> candidate = zeros;
    MatchResult sub = match_determining_lists(candidate, zeros);
    CHECK(sub.compatible);
    REQUIRE(sub.forced.has_value());
    CHECK(*sub.forced == std::vector<unsigned>{0, 0});
}
