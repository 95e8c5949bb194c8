#include "hopfpath/rde.hpp"

#include "hopfpath/basis.hpp"
#include "hopfpath/error.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/syntax.hpp"

#include "euler_calibration_data.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>

namespace hopfpath {

PolyVectorField::PolyVectorField(int state_dim, std::vector<PolyVector> components)
    : state_dim_(state_dim), f_(std::move(components)) {
    if (state_dim_ < 1) throw PreconditionError("state dimension must be positive");
    if (f_.empty()) throw PreconditionError("a vector field needs at least the time component");
    for (const auto& c : f_) {
        if (static_cast<int>(c.size()) != state_dim_) throw PreconditionError("vector field component has the wrong length");
        for (const auto& p : c)
            if (p.arity() != state_dim_) throw PreconditionError("polynomial arity differs from the state dimension");
    }
}

PolyVectorField PolyVectorField::parse(int state_dim, const std::vector<std::vector<std::string>>& components) {
    std::vector<PolyVector> f;
    for (const auto& comp : components) {
        PolyVector pv;
        for (const auto& s : comp) pv.push_back(parse_polynomial(s, state_dim));
        f.push_back(std::move(pv));
    }
    return PolyVectorField(state_dim, std::move(f));
}

PolyVectorField PolyVectorField::zero(int state_dim, int dim) {
    return PolyVectorField(state_dim, std::vector<PolyVector>(static_cast<std::size_t>(dim) + 1,
                                                              PolyVector(static_cast<std::size_t>(state_dim), Polynomial(state_dim))));
}

PolyVector pre_lie(const PolyVector& a, const PolyVector& b) { return directional_derivative(b, a); }

namespace {

// sum_{k_idx, ...} a_idx[k_idx] ... d_{k_idx} ... p, differentiating p only.
Polynomial multilinear_derivative(const Polynomial& p, const std::vector<PolyVector>& args, std::size_t idx) {
    if (idx == args.size() || p.is_zero()) return p;
    Polynomial sum(p.arity());
    for (int k = 0; k < p.arity(); ++k) {
        const Polynomial inner = multilinear_derivative(p.derivative(k), args, idx + 1);
        if (!inner.is_zero()) sum += args[idx][static_cast<std::size_t>(k)] * inner;
    }
    return sum;
}

Rational factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

PolyVector ElementaryDifferentials::operator()(const Tree& t) const {
    std::lock_guard lock(mutex_);
    return lookup(t);
}

const PolyVector& ElementaryDifferentials::lookup(const Tree& t) const {
    if (auto it = cache_.find(t); it != cache_.end()) return it->second;
    if (t.label() > f_.dim()) throw PreconditionError("tree label " + std::to_string(t.label()) + " has no vector field");
    std::vector<PolyVector> args;
    for (const auto& child : t.children()) args.push_back(lookup(child));
    PolyVector out;
    for (const auto& p : f_[t.label()]) out.push_back(multilinear_derivative(p, args, 0));
    return cache_.emplace(t, std::move(out)).first->second;
}

PolyVector elementary_differential(const PolyVectorField& f, const Tree& t) { return ElementaryDifferentials(f)(t); }

Rational EulerCalibration::weight(const Tree& t) const {
    if (rule == "inverse_symmetry") return make_rational(1, static_cast<long>(symmetry_factor(t)));
    if (rule == "unit") return 1;
    throw PreconditionError("unknown Euler weight rule '" + rule + "'");
}

EulerCalibration parse_calibration(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    EulerCalibration c;
    c.rule = j.at("rule").get<std::string>();
    c.max_nodes = j.at("max_nodes").get<int>();
    for (const auto& entry : j.at("shapes"))
        c.shapes.emplace(parse_tree(entry.at("tree").get<std::string>()), parse_rational(entry.at("weight").get<std::string>()));
    for (const auto& [t, w] : c.shapes)
        if (w != c.weight(t)) throw PreconditionError("calibration entry " + t.code() + " contradicts its rule");
    return c;
}

std::string calibration_to_json(const EulerCalibration& c) {
    nlohmann::ordered_json j;
    j["rule"] = c.rule;
    j["max_nodes"] = c.max_nodes;
    j["shapes"] = nlohmann::ordered_json::array();
    for (const auto& [t, w] : c.shapes) {
        nlohmann::ordered_json entry;
        entry["tree"] = t.code();
        entry["symmetry"] = symmetry_factor(t);
        entry["weight"] = w.get_str();
        j["shapes"].push_back(entry);
    }
    return j.dump(2) + "\n";
}

const EulerCalibration& committed_calibration() {
    static const EulerCalibration c = parse_calibration(kCommittedCalibration);
    return c;
}

PolyVector taylor_coefficient(const PolyVector& f, int k) {
    const int e = static_cast<int>(f.size());
    PolyVector g;
    for (int i = 0; i < e; ++i) g.push_back(Polynomial::variable(e, i));
    for (int n = 0; n < k; ++n) g = directional_derivative(g, f);
    return Rational(1 / factorial(k)) * g;
}

PolyVector euler_step_coefficient(const PolyVectorField& f, int k, const EulerCalibration& c) {
    const ElementaryDifferentials diff(PolyVectorField(f.state_dim(), {f[0]}));
    PolyVector sum(static_cast<std::size_t>(f.state_dim()), Polynomial(f.state_dim()));
    for (const auto& t : trees_of_size(0, k))
        sum = sum + Rational(c.weight(t) / make_rational(tree_factorial(t))) * diff(t);
    return sum;
}

namespace {

Polynomial random_polynomial(std::mt19937_64& rng, int arity, int degree) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Polynomial p(arity);
    // Every exponent vector of total degree <= degree.
    std::vector<int> e(static_cast<std::size_t>(arity), 0);
    const auto visit = [&](auto&& self, std::size_t slot, int remaining) -> void {
        if (slot == e.size()) {
            p.add_term(e, coeff(rng));
            return;
        }
        for (int n = 0; n <= remaining; ++n) {
            e[slot] = n;
            self(self, slot + 1, remaining - n);
        }
        e[slot] = 0;
    };
    visit(visit, 0, degree);
    return p;
}

// Solves rows * x = rhs exactly. Throws InternalError if the system is inconsistent or the
// solution is not unique.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs) {
    const std::size_t m = rows.size(), n = rows.empty() ? 0 : rows[0].size();
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t p = rank;
        while (p < m && sgn(rows[p][col]) == 0) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[rank]);
        std::swap(rhs[p], rhs[rank]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || sgn(rows[r][col]) == 0) continue;
            const Rational factor = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < n; ++c) rows[r][c] -= factor * rows[rank][c];
            rhs[r] -= factor * rhs[rank];
        }
        pivots.push_back(col);
        ++rank;
    }
    if (rank < n) throw InternalError("calibration system is rank deficient");
    for (std::size_t r = rank; r < m; ++r)
        if (sgn(rhs[r]) != 0) throw InternalError("calibration system is inconsistent");
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < rank; ++r) x[pivots[r]] = rhs[r] / rows[r][pivots[r]];
    return x;
}

}  // namespace

EulerCalibration calibrate_euler(int max_nodes, std::uint64_t seed) {
    if (max_nodes < 1) throw PreconditionError("calibration needs at least one node");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> point(-4, 4);
    const int e = 2;
    EulerCalibration out;
    out.max_nodes = max_nodes;
    for (int n = 1; n <= max_nodes; ++n) {
        const auto& trees = trees_of_size(0, n);
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        for (int field = 0; field < 3; ++field) {
            PolyVector f;
            for (int k = 0; k < e; ++k) f.push_back(random_polynomial(rng, e, std::max(2, n - 1)));
            const ElementaryDifferentials diff(PolyVectorField(e, {f}));
            const PolyVector taylor = taylor_coefficient(f, n);
            std::vector<PolyVector> columns;
            for (const auto& t : trees) columns.push_back(make_rational(1, static_cast<long>(tree_factorial(t))) * diff(t));
            for (int sample = 0; sample < 4; ++sample) {
                const std::vector<Rational> y = {make_rational(point(rng), 3), make_rational(point(rng), 2)};
                for (std::size_t k = 0; k < static_cast<std::size_t>(e); ++k) {
                    std::vector<Rational> row;
                    for (const auto& col : columns) row.push_back(col[k].evaluate(y));
                    rows.push_back(std::move(row));
                    rhs.push_back(taylor[k].evaluate(y));
                }
            }
        }
        const auto c = solve_exact(std::move(rows), std::move(rhs));
        for (std::size_t i = 0; i < trees.size(); ++i) {
            const Rational inverse = make_rational(1, static_cast<long>(symmetry_factor(trees[i])));
            if (c[i] != 1 && c[i] != inverse)
                throw InternalError("Euler weight of " + trees[i].code() + " solved to " + c[i].get_str());
            out.shapes.emplace(trees[i], c[i]);
        }
    }
    const bool inverse_symmetry = std::all_of(out.shapes.begin(), out.shapes.end(), [](const auto& kv) {
        return kv.second == make_rational(1, static_cast<long>(symmetry_factor(kv.first)));
    });
    const bool unit = std::all_of(out.shapes.begin(), out.shapes.end(), [](const auto& kv) { return kv.second == 1; });
    if (inverse_symmetry)
        out.rule = "inverse_symmetry";
    else if (unit)
        out.rule = "unit";
    else
        throw InternalError("calibrated Euler weights follow neither rule");
    return out;
}

namespace {

PolyVectorField add_tree_terms(const PolyVectorField& f, const std::vector<ForestSeries>& entries,
                               const EulerCalibration& c) {
    if (static_cast<int>(entries.size()) != f.dim() + 1) throw PreconditionError("translation and field dimensions differ");
    const ElementaryDifferentials diff(f);
    std::vector<PolyVector> out = f.components();
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (const auto& [forest, coeff] : entries[i]) {
            if (!forest.is_tree()) throw PreconditionError("translation entry " + forest.code() + " is not a tree");
            out[i] = out[i] + Rational(coeff * c.weight(forest.as_tree())) * diff(forest.as_tree());
        }
    return PolyVectorField(f.state_dim(), std::move(out));
}

}  // namespace

PolyVectorField translated_field(const PolyVectorField& f, const BranchedTranslation& v, const EulerCalibration& c) {
    return add_tree_terms(f, v.entries(), c);
}

PolyVectorField translated_field(const PolyVectorField& f, const GeometricTranslation& v, const EulerCalibration& c) {
    std::vector<ForestSeries> entries;
    for (const auto& e : v.entries()) {
        ForestSeries s;
        for (const auto& [w, coeff] : e) s += coeff * embed_iota(w, grade(w));
        entries.push_back(std::move(s));
    }
    return add_tree_terms(f, entries, c);
}

EulerScheme::EulerScheme(const PolyVectorField& f, int level, const EulerCalibration& c)
    : dim_(f.dim()), state_dim_(f.state_dim()), level_(level) {
    if (level < 1) throw PreconditionError("Euler level must be positive");
    const ElementaryDifferentials diff(f);
    for (const auto& t : trees_up_to(dim_, level)) {
        const PolyVector ft = c.weight(t) * diff(t);
        if (std::all_of(ft.begin(), ft.end(), [](const Polynomial& p) { return p.is_zero(); })) continue;
        terms_.push_back({t, CompiledPolyVector(ft)});
    }
}

Eigen::VectorXd EulerScheme::step(const TraceBasis<Forest>& basis, const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (basis.dim() != dim_) throw PreconditionError("driver and vector field dimensions differ");
    if (basis.level() < level_) throw PreconditionError("driver level below the Euler level");
    if (y.size() != state_dim_) throw PreconditionError("state has the wrong dimension");
    Eigen::VectorXd out = y;
    for (const auto& term : terms_) {
        const double coeff = x(static_cast<Eigen::Index>(basis.index(Forest(term.tree))));
        if (coeff != 0.0) out += coeff * term.field(y);
    }
    return out;
}

Eigen::VectorXd EulerScheme::step(const BranchedTrace& x, int i, int j, const Eigen::VectorXd& y) const {
    return step(x.basis(), x.at(i, j), y);
}

std::vector<Eigen::VectorXd> EulerScheme::solve(const BranchedTrace& x, const Eigen::VectorXd& y0) const {
    std::vector<Eigen::VectorXd> path = {y0};
    const int m = static_cast<int>(x.grid().size()) - 1;
    for (int i = 0; i < m; ++i) path.push_back(step(x, i, i + 1, path.back()));
    return path;
}

std::vector<Eigen::VectorXd> EulerScheme::solve(const GeometricTrace& x, const Eigen::VectorXd& y0) const {
    return solve(lift_branched_via_iota(x), y0);
}

double max_discrepancy(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
    if (a.size() != b.size()) throw PreconditionError("trajectories have different lengths");
    double worst = 0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
    return worst;
}

namespace {

template <class Key>
int translated_driver_level(const TranslationVector<Key>& v, int level) {
    return level * std::max(1, v.max_grade());
}

}  // namespace

double equivalence_experiment(const PolyVectorField& f, const BranchedTranslation& v, const BranchedTrace& x,
                              const Eigen::VectorXd& y0, int level) {
    const int driven_level = translated_driver_level(v, level);
    const auto driven = EulerScheme(f, driven_level).solve(translate_trace(v, x, driven_level), y0);
    const auto shifted = EulerScheme(translated_field(f, v), level).solve(x, y0);
    return max_discrepancy(driven, shifted);
}

double equivalence_experiment(const PolyVectorField& f, const GeometricTranslation& v, const GeometricTrace& x,
                              const Eigen::VectorXd& y0, int level) {
    const int driven_level = translated_driver_level(v, level);
    const auto driven = EulerScheme(f, driven_level).solve(translate_trace(v, x, driven_level), y0);
    const auto shifted = EulerScheme(translated_field(f, v), level).solve(x, y0);
    return max_discrepancy(driven, shifted);
}

}  // namespace hopfpath
