#pragma once

/*
 * Command-line front end.  run() is the whole program so tests can drive
 * it with captured streams.  Exit codes: 0 success (including NONE
 * verdicts), 1 domain errors, 2 usage and syntax errors.
 */

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holorel/holoseries.hpp"
#include "holorel/hypergeo.hpp"
#include "holorel/newton.hpp"
#include "holorel/ore.hpp"
#include "holorel/parse.hpp"
#include "holorel/relations.hpp"
#include "holorel/systems.hpp"

namespace holorel {
namespace cli {

using nlohmann::json;

inline std::string slurp_stdin() {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
}

// Every positional expression accepts '-' for stdin.
inline std::string resolve(const std::string& arg) {
    return arg == "-" ? slurp_stdin() : arg;
}

inline Rational parse_rational(const std::string& text) {
    RationalFunction r = parse_ratfunc(text);
    if (!r.is_polynomial() || r.num().degree() > 0)
        throw Error("expected a rational constant: " + text);
    return r.num().coeff(0);
}

inline OreOp<RationalFunction> as_operator(const ExprValue& v) {
    EvalContext ctx;
    return parse_detail::to_operator(v, ctx);
}

// Normalizes an operator expression to Euler form in the local variable t
// at infinity.  Inputs in x are transported; inputs already in t are taken
// as local data.  Unit prefactors translate the polygon and scale the
// determining data, neither of which changes slopes or monomials.
inline OreOp<RationalFunction> operator_at_infinity(const ExprValue& v) {
    OreOp<RationalFunction> op = as_operator(v);
    if (op.kind().var == Var::w) throw Error("expected an operator in x or t");
    if (op.kind().deriv == Deriv::D) op = op_convert(op, Deriv::Euler).op;
    if (op.kind().var == Var::x) op = op_to_infinity(op).op;
    return op;
}

// Left-multiplies away coefficient denominators; needed before Laurent
// conversion when denominators are not monomials.
inline OreOp<RationalFunction> clear_denominators(const OreOp<RationalFunction>& op) {
    Poly l(Rational(1));
    for (const auto& c : op.coeffs())
        if (!c.is_zero()) l = poly_lcm(l, c.den());
    if (l.degree() == 0 && l.coeff(0).is_one()) return op;
    return op.left_mul(RationalFunction(l, Poly(Rational(1))));
}

inline json matrix_json(const Mat<RationalFunction>& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

inline void print_matrix(std::ostream& out, const Mat<RationalFunction>& m) {
    for (size_t i = 0; i < m.rows(); ++i) {
        out << "[";
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ", ";
            out << m(i, j).str();
        }
        out << "]\n";
    }
}

inline Mat<RationalFunction> parse_matrix(const std::string& text) {
    json j;
    try {
        j = json::parse(resolve(text));
    } catch (const json::exception& e) {
        throw Error(std::string("matrix must be a JSON array of arrays: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw Error("matrix must be a nonempty JSON array");
    size_t rows = j.size();
    size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw Error("matrix rows must be nonempty arrays");
    Mat<RationalFunction> m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw Error("matrix rows must all have the same length");
        for (size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_string()) throw Error("matrix entries must be strings");
            m(i, k) = parse_ratfunc(j[i][k].get<std::string>());
        }
    }
    return m;
}

// Series expansion of an expression around the base point.
inline TruncSeries series_at(const std::string& text, const Rational& base, long order) {
    ExprValue v = parse_expression(resolve(text), HyperLift::ToSeries, order);
    if (std::holds_alternative<RationalFunction>(v))
        return series_shift(std::get<RationalFunction>(v), base, order);
    if (!base.is_zero())
        throw Error("expansion at a nonzero base needs rational-function input");
    EvalContext ctx;
    ctx.lift = HyperLift::ToSeries;
    ctx.series_order = order;
    return parse_detail::to_series(v, ctx);
}

inline json relation_json(const LinearRelation& rel, int deg) {
    json coeffs = json::array();
    for (const auto& c : rel.coefficients) coeffs.push_back(c.str());
    return {{"coeffs", coeffs},
            {"remainder", rel.remainder.str()},
            {"verified_order", rel.verified_order},
            {"bounds", {{"deg", deg}}}};
}

inline void print_relation(std::ostream& out, const LinearRelation& rel) {
    out << "coeffs:";
    for (const auto& c : rel.coefficients) out << " " << c.str();
    out << "\nremainder: " << rel.remainder.str() << "\n"
        << "verified to order " << rel.verified_order << "\n";
}

struct Flags {
    long order = 200;
    int deg = 4;
    long bound = 10;
    bool as_json = false;
    std::string base = "0";
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact differential-operator and holonomic-relation toolkit"};
    app.require_subcommand(1);

    Flags fl;
    std::string expr, expr2, slope_text, target_text, m_text;
    std::vector<std::string> basis_texts, init_texts;
    unsigned sym_m = 2;

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", fl.as_json, "emit JSON instead of text");
    };

    CLI::App* c_op = app.add_subcommand("op", "parse an operator and print its normal form");
    c_op->add_option("expr", expr)->required();
    add_common(c_op);

    CLI::App* c_newton = app.add_subcommand("newton", "Newton polygon at infinity");
    c_newton->add_option("expr", expr)->required();
    add_common(c_newton);

    CLI::App* c_det = app.add_subcommand("detpoly", "determining monomials at a slope");
    c_det->add_option("expr", expr)->required();
    c_det->add_option("--slope", slope_text, "slope h/s (default: steepest)");
    add_common(c_det);

    CLI::App* c_hyper = app.add_subcommand("hyper", "inspect a pFq spec");
    c_hyper->add_option("spec", expr)->required();
    add_common(c_hyper);

    CLI::App* c_classify = app.add_subcommand("classify", "0F1-dependence class of a pFq spec");
    c_classify->add_option("spec", expr)->required();
    add_common(c_classify);

    CLI::App* c_sys = app.add_subcommand("sys", "constructions on first-order systems");
    c_sys->require_subcommand(1);
    CLI::App* s_sum = c_sys->add_subcommand("sum", "direct sum");
    s_sum->add_option("a", expr)->required();
    s_sum->add_option("b", expr2)->required();
    add_common(s_sum);
    CLI::App* s_tensor = c_sys->add_subcommand("tensor", "tensor product");
    s_tensor->add_option("a", expr)->required();
    s_tensor->add_option("b", expr2)->required();
    add_common(s_tensor);
    CLI::App* s_dual = c_sys->add_subcommand("dual", "dual system");
    s_dual->add_option("a", expr)->required();
    add_common(s_dual);
    CLI::App* s_sym = c_sys->add_subcommand("sympow", "symmetric power");
    s_sym->add_option("a", expr)->required();
    s_sym->add_option("--m", sym_m, "power (default 2)");
    add_common(s_sym);
    CLI::App* s_trace = c_sys->add_subcommand("trace", "trace split");
    s_trace->add_option("a", expr)->required();
    add_common(s_trace);
    CLI::App* s_comp = c_sys->add_subcommand("companion", "companion system of an operator");
    s_comp->add_option("expr", expr)->required();
    add_common(s_comp);
    CLI::App* s_wr = c_sys->add_subcommand("wronskian", "wronskian of series expressions");
    s_wr->add_option("list", expr, "JSON array of expressions")->required();
    s_wr->add_option("--order", fl.order, "series order (default 200)");
    add_common(s_wr);

    CLI::App* c_series = app.add_subcommand("series", "series expansion or ODE solution");
    c_series->add_option("expr", expr)->required();
    c_series->add_option("--order", fl.order, "truncation order (default 200)");
    c_series->add_option("--init", init_texts, "initial condition k=v (repeatable)");
    add_common(c_series);

    CLI::App* c_rel = app.add_subcommand("relate", "linear relation search over a basis");
    c_rel->add_option("--target", target_text)->required();
    c_rel->add_option("--basis", basis_texts, "basis expression (repeatable)")->required();
    c_rel->add_option("--deg", fl.deg, "coefficient degree bound (default 4)");
    c_rel->add_option("--order", fl.order, "matching order (default 200)");
    c_rel->add_option("--base", fl.base, "expansion point (default 0)");
    add_common(c_rel);

    CLI::App* c_kol = app.add_subcommand("kolchin", "multiplicative relation between y'=a*y, y'=b*y");
    c_kol->add_option("a", expr)->required();
    c_kol->add_option("b", expr2)->required();
    c_kol->add_option("--bound", fl.bound, "exponent bound (default 10)");
    add_common(c_kol);

    CLI::App* c_iter = app.add_subcommand("iterint", "dependence among iterated integrals");
    c_iter->add_option("inputs", expr, "JSON list of {h, depth, constants}")->required();
    c_iter->add_option("--base", fl.base, "expansion point (default 0)");
    c_iter->add_option("--deg", fl.deg, "coefficient degree bound (default 4)");
    c_iter->add_option("--order", fl.order, "matching order (default 200)");
    add_common(c_iter);

    // CLI11's vector overload consumes arguments from the back.
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_op) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
            OreOp<RationalFunction> op = as_operator(v);
            if (fl.as_json) {
                json coeffs = json::array();
                for (int i = 0; i <= op.order(); ++i) coeffs.push_back(op.coeff(i).str());
                json j = {{"deriv", deriv_symbol(op.kind())},
                          {"var", var_name(op.kind().var)},
                          {"order", op.order()},
                          {"coeffs", coeffs},
                          {"printed", op_str(op)}};
                out << j.dump() << "\n";
            } else {
                out << op_str(op) << "\n";
            }
        } else if (*c_newton) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
            NewtonPolygon np = newton_polygon(operator_at_infinity(v));
            if (fl.as_json) {
                json verts = json::array();
                for (auto& [n, m] : np.vertices) verts.push_back({n, m});
                json slopes = json::array();
                for (auto& s : np.slopes)
                    slopes.push_back({{"num", s.slope.num().get_si()},
                                      {"den", s.slope.den().get_si()},
                                      {"mult", s.multiplicity}});
                json j = {{"vertices", verts}, {"slopes", slopes}};
                out << j.dump() << "\n";
            } else {
                out << "vertices:";
                for (auto& [n, m] : np.vertices) out << " (" << n << "," << m << ")";
                out << "\nslopes:";
                for (auto& s : np.slopes)
                    out << " " << s.slope.str() << " (mult " << s.multiplicity << ")";
                out << "\n";
            }
        } else if (*c_det) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
            OreOp<RationalFunction> op = clear_denominators(operator_at_infinity(v));
            Rational slope;
            if (slope_text.empty()) {
                NewtonPolygon np = newton_polygon(op);
                if (np.slopes.empty()) throw Error("zero operator");
                slope = np.slopes.back().slope;
            } else {
                slope = parse_rational(slope_text);
            }
            DeterminingReport rep = determining_monomials(op, slope);
            if (fl.as_json) {
                json mono = json::array();
                for (auto& m : rep.monomials)
                    mono.push_back({{"scale", m.scale.str()},
                                    {"zeta", {m.zeta_num, m.zeta_den}},
                                    {"slope", m.slope.str()}});
                json j = {{"slope", rep.slope.str()},
                          {"sigma", rep.sigma},
                          {"char", rep.char_poly.str("a")},
                          {"monomials", mono},
                          {"residual", rep.residual ? json(rep.residual->str("a")) : json()}};
                out << j.dump() << "\n";
            } else {
                out << "slope: " << rep.slope.str() << " (sigma " << rep.sigma << ")\n"
                    << "char: " << rep.char_poly.str("a") << "\n";
                out << "monomials:";
                for (auto& m : rep.monomials) out << " " << monomial_str(m);
                out << "\n";
                if (rep.residual) out << "residual: " << rep.residual->str("a") << "\n";
            }
        } else if (*c_hyper) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
            if (!std::holds_alternative<HypergeomSpec>(v)) throw Error("expected a pFq spec");
            const HypergeomSpec& spec = std::get<HypergeomSpec>(v);
            SingularityProfile prof = singularity_profile(spec);
            OreOp<RationalFunction> op = hypergeom_operator(spec);
            if (fl.as_json) {
                json alphas = json::array(), betas = json::array();
                for (auto& a : spec.alphas) alphas.push_back(a.str());
                for (auto& b : spec.betas) betas.push_back(b.str());
                json pts = json::array();
                for (auto& [pt, reg] : prof.points)
                    pts.push_back({{"point", sing_point_name(pt)}, {"regular", reg}});
                json j = {{"spec", spec.str()},     {"p", spec.p()},
                          {"q", spec.q()},          {"sigma", spec.sigma()},
                          {"alphas", alphas},       {"betas", betas},
                          {"order", prof.order},    {"operator", op_str(op)},
                          {"singularities", pts}};
                out << j.dump() << "\n";
            } else {
                out << "spec: " << spec.str() << "\n"
                    << "p: " << spec.p() << "  q: " << spec.q()
                    << "  sigma: " << spec.sigma() << "\n"
                    << "operator: " << op_str(op) << "\n";
                out << "singularities:";
                for (auto& [pt, reg] : prof.points)
                    out << " " << sing_point_name(pt) << (reg ? " (regular)" : " (irregular)");
                out << "\n";
            }
        } else if (*c_classify) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
            if (!std::holds_alternative<HypergeomSpec>(v)) throw Error("expected a pFq spec");
            PairClassification pc = classify_pair_with_0F1(std::get<HypergeomSpec>(v));
            if (fl.as_json) {
                json j = {{"class", dependence_class_name(pc.cls)}, {"sigma", pc.sigma}};
                out << j.dump() << "\n";
            } else {
                out << dependence_class_name(pc.cls) << " (sigma " << pc.sigma << ")\n";
            }
        } else if (*c_sys) {
            Mat<RationalFunction> result;
            if (*s_sum) {
                result = sys_direct_sum(DiffSystem{parse_matrix(expr)},
                                        DiffSystem{parse_matrix(expr2)}).A;
            } else if (*s_tensor) {
                result = sys_tensor(DiffSystem{parse_matrix(expr)},
                                    DiffSystem{parse_matrix(expr2)}).A;
            } else if (*s_dual) {
                result = sys_dual(DiffSystem{parse_matrix(expr)}).A;
            } else if (*s_sym) {
                result = sys_sym_power(DiffSystem{parse_matrix(expr)}, sym_m).A;
            } else if (*s_comp) {
                ExprValue v = parse_expression(resolve(expr), HyperLift::ToOperator);
                result = op_companion(as_operator(v));
            } else if (*s_trace) {
                TraceSplit ts = sys_trace_split(DiffSystem{parse_matrix(expr)});
                if (fl.as_json) {
                    json j = {{"trace_part", ts.trace_part.str()},
                              {"traceless", matrix_json(ts.traceless.A)}};
                    out << j.dump() << "\n";
                } else {
                    out << "trace_part: " << ts.trace_part.str() << "\n";
                    print_matrix(out, ts.traceless.A);
                }
                return 0;
            } else if (*s_wr) {
                json j = json::parse(resolve(expr));
                if (!j.is_array() || j.empty())
                    throw Error("wronskian needs a JSON array of expressions");
                long n = static_cast<long>(j.size());
                std::vector<TruncSeries> fs;
                for (auto& e : j)
                    fs.push_back(series_at(e.get<std::string>(), Rational(0),
                                           fl.order + n));
                WronskianResult w = wronskian(fs, static_cast<int>(fl.order));
                if (fl.as_json) {
                    json rows = json::array();
                    for (auto& row : w.rows) {
                        json r = json::array();
                        for (auto& s : row) r.push_back(s.str());
                        rows.push_back(r);
                    }
                    out << json{{"det", w.det.str()}, {"rows", rows}}.dump() << "\n";
                } else {
                    out << "det: " << w.det.str() << "\n";
                }
                return 0;
            }
            if (fl.as_json)
                out << matrix_json(result).dump() << "\n";
            else
                print_matrix(out, result);
        } else if (*c_series) {
            ExprValue v = parse_expression(resolve(expr), HyperLift::ToSeries, fl.order);
            TruncSeries s;
            if (std::holds_alternative<OreOp<RationalFunction>>(v)) {
                std::map<long, Rational> initials;
                for (const auto& it : init_texts) {
                    auto eq = it.find('=');
                    if (eq == std::string::npos)
                        throw Error("initial conditions use the form k=value");
                    initials[std::stol(it.substr(0, eq))] =
                        parse_rational(it.substr(eq + 1));
                }
                s = series_from_operator(std::get<OreOp<RationalFunction>>(v),
                                         std::move(initials)).prefix(fl.order);
            } else {
                EvalContext ctx;
                ctx.lift = HyperLift::ToSeries;
                ctx.series_order = fl.order;
                s = parse_detail::to_series(v, ctx);
            }
            if (fl.as_json) {
                json coeffs = json::array();
                for (long k = 0; k <= s.order(); ++k) coeffs.push_back(s.coeff(k).str());
                out << json{{"order", s.order()}, {"coeffs", coeffs}}.dump() << "\n";
            } else {
                out << s.str() << "\n";
            }
        } else if (*c_rel) {
            Rational base = parse_rational(fl.base);
            TruncSeries target = series_at(target_text, base, fl.order);
            std::vector<TruncSeries> basis;
            for (const auto& b : basis_texts) basis.push_back(series_at(b, base, fl.order));
            auto rel = linear_relation_find(target, basis, fl.deg, fl.order, base);
            if (!rel) {
                if (fl.as_json)
                    out << json{{"none", true},
                                {"bounds", {{"deg", fl.deg}, {"order", fl.order}}}}.dump()
                        << "\n";
                else
                    out << "NONE (deg <= " << fl.deg << ", order " << fl.order << ")\n";
            } else if (fl.as_json) {
                out << relation_json(*rel, fl.deg).dump() << "\n";
            } else {
                print_relation(out, *rel);
            }
        } else if (*c_kol) {
            RationalFunction a = parse_ratfunc(resolve(expr));
            RationalFunction b = parse_ratfunc(resolve(expr2));
            auto k = kolchin_detect(a, b, fl.bound);
            if (!k) {
                if (fl.as_json)
                    out << json{{"none", true}, {"bound", fl.bound}}.dump() << "\n";
                else
                    out << "NONE (bound " << fl.bound << ")\n";
            } else if (fl.as_json) {
                json j = {{"m", k->m}, {"n", k->n}, {"witness", witness_str(k->witness)}};
                out << j.dump() << "\n";
            } else {
                out << "m: " << k->m << "\nn: " << k->n
                    << "\nwitness: " << witness_str(k->witness) << "\n";
            }
        } else if (*c_iter) {
            json j = json::parse(resolve(expr));
            if (!j.is_array() || j.empty())
                throw Error("iterint needs a JSON list of {h, depth, constants}");
            std::vector<IterIntInput> inputs;
            for (auto& e : j) {
                IterIntInput in;
                in.h = parse_ratfunc(e.at("h").get<std::string>());
                in.depth = e.at("depth").get<unsigned>();
                for (auto& c : e.at("constants"))
                    in.constants.push_back(parse_rational(c.get<std::string>()));
                inputs.push_back(std::move(in));
            }
            Rational base = parse_rational(fl.base);
            auto rel = iterint_dependence(inputs, base, fl.deg, fl.order);
            if (!rel) {
                if (fl.as_json)
                    out << json{{"none", true},
                                {"bounds", {{"deg", fl.deg}, {"order", fl.order}}}}.dump()
                        << "\n";
                else
                    out << "NONE (deg <= " << fl.deg << ", order " << fl.order << ")\n";
            } else if (fl.as_json) {
                out << relation_json(*rel, fl.deg).dump() << "\n";
            } else {
                print_relation(out, *rel);
            }
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "error: invalid JSON input: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace cli
} // namespace holorel
