#include <doctest.h>

#include "hopfpath/basis.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/rde.hpp"
#include "hopfpath/syntax.hpp"

#include <cmath>
#include <random>

using namespace hopfpath;

namespace {

Tree T(const char* s) { return parse_tree(s); }
Polynomial P(const char* s, int arity = 1) { return parse_polynomial(s, arity); }

bool is_zero(const PolyVector& p) {
    for (const auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

PolyVector minus(const PolyVector& a, const PolyVector& b) { return a + Rational(-1) * b; }

PolyVectorField random_field(std::mt19937_64& rng, int e, int dim, int degree) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::vector<PolyVector> f;
    for (int i = 0; i <= dim; ++i) {
        PolyVector comp;
        for (int k = 0; k < e; ++k) {
            Polynomial p(e);
            for (int a = 0; a <= degree; ++a)
                for (int b = 0; a + b <= degree; ++b) p.add_term({a, b}, coeff(rng));
            comp.push_back(p);
        }
        f.push_back(comp);
    }
    return PolyVectorField(e, f);
}

// A fixed field on R^2 with two noise directions.
PolyVectorField sample_field() {
    return PolyVectorField::parse(2, {{"-1/2*y1 + y2", "y1*y2 - 1/4"},
                                      {"1 + 1/2*y2^2", "y1"},
                                      {"y2", "1/2 - y1^2"}});
}

std::vector<double> uniform_grid(int n, double horizon = 1.0) {
    std::vector<double> t;
    for (int k = 0; k <= n; ++k) t.push_back(horizon * k / n);
    return t;
}

GeometricTrace smooth_driver(int n, int level) {
    const auto t = uniform_grid(n);
    std::vector<Eigen::VectorXd> x;
    for (double s : t) {
        Eigen::VectorXd p(2);
        p << 0.5 * std::sin(2 * s) + 0.2 * s, 0.4 * std::cos(3 * s);
        x.push_back(p);
    }
    return lift_piecewise_linear(t, x, level, PairPolicy::steps);
}

double slope(const std::vector<double>& errors) {
    // Least-squares slope of log2(error) against the refinement index (each step halves h).
    const double n = static_cast<double>(errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        const double x = static_cast<double>(k), y = std::log2(errors[k]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("polynomial text round trip") {
    const auto p = parse_polynomial("3/2*y1^2*y2 - y2 + 1 + y2 - 2", 2);
    CHECK(to_text(p) == "3/2*y1^2*y2 - 1");
    CHECK(parse_polynomial(to_text(p), 2) == p);
    CHECK(p.derivative(0) == parse_polynomial("3*y1*y2", 2));
    CHECK(p.evaluate(std::vector<Rational>{2, make_rational(1, 3)}) == 1);
    CHECK_THROWS_AS(parse_polynomial("y3", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y1 +", 2), ParseError);
}

TEST_CASE("elementary differentials") {
    const auto square = PolyVectorField(1, {{P("y1^2")}});
    CHECK(elementary_differential(square, T("(0 (0))"))[0] == P("2*y1^3"));
    CHECK(elementary_differential(square, T("(0 (0) (0))"))[0] == P("2*y1^4"));
    CHECK(elementary_differential(square, T("(0 (0 (0)))"))[0] == P("4*y1^4"));

    const auto linear = PolyVectorField::parse(2, {{"y1 + y2", "2*y1"}, {"y2", "-y1"}});
    for (const auto& t : trees_up_to(1, 4)) {
        bool branching = false;
        const auto visit = [&](auto&& self, const Tree& s) -> void {
            if (s.children().size() >= 2) branching = true;
            for (const auto& c : s.children()) self(self, c);
        };
        visit(visit, t);
        if (branching) CHECK(is_zero(elementary_differential(linear, t)));
    }

    const auto f = sample_field();
    CHECK(elementary_differential(f, T("(2 (1))")) == pre_lie(f[1], f[2]));
    CHECK_THROWS_AS(elementary_differential(f, T("(3)")), PreconditionError);
}

TEST_CASE("single grafts act as the pre-Lie product of vector fields") {
    std::mt19937_64 rng(7);
    const auto f = random_field(rng, 2, 1, 3);
    const ElementaryDifferentials diff(f);
    const auto normalized = [&](const Tree& t) {
        return make_rational(1, static_cast<long>(symmetry_factor(t))) * diff(t);
    };
    const auto trees = trees_up_to(1, 3);
    for (const auto& s : trees)
        for (const auto& t : trees) {
            if (s.size() + t.size() > 4) continue;
            // Attachment form: f_s |> f_t = sum over attachments of f_r.
            PolyVector attached(2, Polynomial(2));
            for (const auto& [r, c] : graft_by_attachment(s, t)) attached = attached + c * diff(r.as_tree());
            CHECK(pre_lie(diff(s), diff(t)) == attached);
            // Cut-count form after dividing by symmetry factors.
            PolyVector cut(2, Polynomial(2));
            for (const auto& [r, c] : graft(s, t)) cut = cut + c * normalized(r.as_tree());
            CHECK(pre_lie(normalized(s), normalized(t)) == cut);
        }
}

TEST_CASE("Euler weights") {
    const auto& committed = committed_calibration();
    CHECK(committed.rule == "inverse_symmetry");
    CHECK(committed.max_nodes >= 4);
    CHECK(calibrate_euler(committed.max_nodes) == committed);
    CHECK(calibrate_euler(committed.max_nodes, 99) == committed);
    CHECK(committed.weight(T("(0 (0) (0))")) == make_rational(1, 2));
    CHECK(committed.weight(T("(0 (1) (2))")) == 1);
    CHECK(committed.weight(T("(0 (1) (1))")) == make_rational(1, 2));

    // f = y: only chains contribute and the step is y sum h^k / k!.
    const auto identity = PolyVectorField(1, {{P("y1")}});
    for (int k = 1; k <= 6; ++k) {
        Rational inv_factorial(1);
        for (int j = 2; j <= k; ++j) inv_factorial /= j;
        CHECK(euler_step_coefficient(identity, k, committed)[0] == inv_factorial * P("y1"));
    }
    const auto unit_rule = EulerCalibration{"unit", 0, {}};
    CHECK(euler_step_coefficient(PolyVectorField(1, {{P("y1^2")}}), 3, unit_rule) !=
          taylor_coefficient({P("y1^2")}, 3));
    CHECK(euler_step_coefficient(PolyVectorField(1, {{P("y1^2")}}), 3, committed) ==
          taylor_coefficient({P("y1^2")}, 3));
}

TEST_CASE("labelled weights along a straight line") {
    // Driver t -> t a with a = (1, a1, a2) drives the single field g = f_0 + a1 f_1 + a2 f_2.
    // <X_{0,h}, t> = a^t h^|t| / t!, so the Euler step must reproduce the Taylor flow of g.
    std::mt19937_64 rng(11);
    const auto f = random_field(rng, 2, 2, 3);
    const ElementaryDifferentials diff(f);
    const std::vector<Rational> a = {1, make_rational(2, 3), make_rational(-3, 2)};
    const PolyVector g = f[0] + a[1] * f[1] + a[2] * f[2];
    for (int k = 1; k <= 4; ++k) {
        PolyVector step(2, Polynomial(2));
        for (const auto& t : trees_of_size(2, k)) {
            Rational weight = committed_calibration().weight(t) / make_rational(tree_factorial(t));
            for (int l = 0; l <= 2; ++l)
                for (int n = 0; n < t.count_label(static_cast<Label>(l)); ++n) weight *= a[static_cast<std::size_t>(l)];
            step = step + weight * diff(t);
        }
        CHECK(step == taylor_coefficient(g, k));
    }
}

TEST_CASE("Euler scheme against exact flows") {
    const auto time_only = [](int n, double horizon, int level) {
        const auto t = uniform_grid(n, horizon);
        return lift_branched_via_iota(
            lift_piecewise_linear(t, std::vector<Eigen::VectorXd>(t.size(), Eigen::VectorXd(0)), level));
    };
    Eigen::VectorXd y0(1);
    y0 << 0.8;

    const auto zero = EulerScheme(PolyVectorField::zero(1, 0), 3);
    CHECK((zero.solve(time_only(4, 1.0, 3), y0).back() - y0).norm() == 0.0);

    // dy = y^2 dt, y(T) = y0 / (1 - T y0).
    const double horizon = 0.5, exact = 0.8 / (1 - horizon * 0.8);
    for (int level = 1; level <= 4; ++level) {
        const EulerScheme scheme(PolyVectorField(1, {{P("y1^2")}}), level);
        std::vector<double> errors;
        for (int n : {8, 16, 32, 64}) errors.push_back(std::abs(scheme.solve(time_only(n, horizon, level), y0).back()(0) - exact));
        MESSAGE("level " << level << " observed order " << slope(errors));
        CHECK(slope(errors) >= level - 0.1);
    }
    CHECK_THROWS_AS(EulerScheme(PolyVectorField(1, {{P("y1")}}), 3).solve(time_only(4, 1.0, 2), y0), PreconditionError);
}

TEST_CASE("translated fields") {
    const auto f = sample_field();
    CHECK(translated_field(f, BranchedTranslation(2)) == f);

    const auto v = BranchedTranslation::time_only(parse_forest_series("(2 (1))"), 2);
    const auto fv = translated_field(f, v);
    CHECK(fv[0] == f[0] + pre_lie(f[1], f[2]));
    CHECK(fv[1] == f[1]);
    CHECK(fv[2] == f[2]);

    const auto cherry = BranchedTranslation::time_only(parse_forest_series("(1 (1) (1))"), 2);
    CHECK(translated_field(f, cherry)[0] ==
          f[0] + make_rational(1, 2) * elementary_differential(f, T("(1 (1) (1))")));

    const auto bracket = GeometricTranslation::time_only(parse_word_series("e[1,2] - e[2,1]"), 2);
    CHECK(translated_field(f, bracket)[0] == f[0] + minus(pre_lie(f[1], f[2]), pre_lie(f[2], f[1])));

    CHECK_THROWS_AS(translated_field(f, BranchedTranslation::time_only(parse_forest_series("{(1) (2)}"), 2)),
                    PreconditionError);
}

TEST_CASE("translating the driver or the field gives the same solution") {
    // Damped field; with sample_field() the solution grows to |y| ~ 15 and the error constant
    // is large enough that the asymptotic regime starts only near n ~ 10^4.
    const auto f = PolyVectorField::parse(2, {{"-y1", "-1/2*y2"}, {"1/2 + 1/4*y2", "1/4*y1^2"}, {"1/4*y2^2", "1/2 - 1/4*y1"}});
    Eigen::VectorXd y0(2);
    y0 << 0.3, -0.2;

    CHECK(equivalence_experiment(f, BranchedTranslation(2), lift_branched_via_iota(smooth_driver(16, 4)), y0, 2) == 0.0);

    const auto v = BranchedTranslation::time_only(parse_forest_series("(2 (1))"), 2);
    auto general = v;
    general[1] = parse_forest_series("1/2*(2 (2)) - (1 (0))");
    const auto gv = GeometricTranslation::time_only(parse_word_series("e[1,2] - e[2,1]"), 2);
    std::vector<double> branched, mixed, geometric;
    for (int n : {128, 256, 512, 1024}) {
        const auto x = smooth_driver(n, 4);
        const auto b = lift_branched_via_iota(x);
        branched.push_back(equivalence_experiment(f, v, b, y0, 2));
        mixed.push_back(equivalence_experiment(f, general, b, y0, 2));
        geometric.push_back(equivalence_experiment(f, gv, x, y0, 2));
    }
    MESSAGE("branched discrepancies " << branched[0] << " .. " << branched.back() << ", order " << slope(branched));
    MESSAGE("general v discrepancies " << mixed[0] << " .. " << mixed.back() << ", order " << slope(mixed));
    MESSAGE("geometric discrepancies " << geometric[0] << " .. " << geometric.back() << ", order " << slope(geometric));
    CHECK(slope(branched) >= 1.0);
    CHECK(slope(mixed) >= 1.0);
    CHECK(slope(geometric) >= 1.0);
    CHECK(branched.back() < 1e-6);

    // A symmetric tree in v: only the 1/sigma weight in f^v makes the two sides meet.
    const auto cherry = BranchedTranslation::time_only(parse_forest_series("(0 (1) (1))"), 2);
    std::vector<double> weighted, unweighted;
    const EulerCalibration unit_rule{"unit", 0, {}};
    const auto g = PolyVectorField::parse(2, {{"-y1 + 1/2*y1^2", "-1/2*y2"}, {"1/2 + 1/4*y2", "1/4*y1^2"}, {"1/4*y2^2", "1/2 - 1/4*y1"}});
    for (int n : {128, 256, 512, 1024}) {
        const auto b = lift_branched_via_iota(smooth_driver(n, 3));
        weighted.push_back(equivalence_experiment(g, cherry, b, y0, 1));
        const auto driven = EulerScheme(g, 3).solve(translate_trace(cherry, b, 3), y0);
        unweighted.push_back(max_discrepancy(driven, EulerScheme(translated_field(g, cherry, unit_rule), 1).solve(b, y0)));
    }
    MESSAGE("cherry discrepancies " << weighted[0] << " .. " << weighted.back() << ", order " << slope(weighted));
    MESSAGE("without the weight " << unweighted[0] << " .. " << unweighted.back());
    CHECK(slope(weighted) >= 0.9);
    CHECK(unweighted.back() > 0.5 * unweighted.front());

    // Translating only time is the same as adding the drift f_{v_0} dX^0 by hand.
    auto drift = f.components();
    drift[0] = drift[0] + pre_lie(f[1], f[2]);
    CHECK(PolyVectorField(2, drift) == translated_field(f, v));
    const auto x = lift_branched_via_iota(smooth_driver(512, 4));
    const auto by_hand = EulerScheme(PolyVectorField(2, drift), 2).solve(x, y0);
    const auto driven = EulerScheme(f, 4).solve(translate_trace(v, x), y0);
    CHECK(max_discrepancy(by_hand, driven) < 1e-6);
}
