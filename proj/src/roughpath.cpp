#include "hopfpath/roughpath.hpp"

#include "hopfpath/basis.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/linear_map.hpp"
#include "hopfpath/tensor.hpp"
#include "hopfpath/translation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <string>

namespace hopfpath {

namespace {

std::vector<Word> keys_up_to(const Word*, int dim, int level) { return words_up_to(dim, level); }
std::vector<Forest> keys_up_to(const Forest*, int dim, int level) { return forests_up_to(dim, level); }

LinComb<Word> group_product(const Word& a, const Word& b) { return LinComb<Word>(a * b); }
const LinComb<Forest>& group_product(const Forest& a, const Forest& b) { return gl_product(a, b); }

LinComb<Word> character_product(const Word& a, const Word& b) { return shuffle(a, b); }
LinComb<Forest> character_product(const Forest& a, const Forest& b) { return LinComb<Forest>(a * b); }

int count_time_nodes(const Word& w) { return w.count(0); }
int count_time_nodes(const Forest& f) {
    int n = 0;
    for (const auto& t : f.trees()) n += t.count_label(0);
    return n;
}

}  // namespace

template <class Key>
TraceBasis<Key>::TraceBasis(int dim, int level) : dim_(dim), level_(level) {
    if (dim < 0 || level < 0) throw PreconditionError("negative trace dimension or level");
    keys_ = keys_up_to(static_cast<const Key*>(nullptr), dim, level);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        index_.emplace(keys_[i], i);
        grades_.push_back(grade(keys_[i]));
        time_counts_.push_back(count_time_nodes(keys_[i]));
    }
    for (std::size_t a = 0; a < keys_.size(); ++a)
        for (std::size_t b = 0; b < keys_.size(); ++b) {
            if (grades_[a] + grades_[b] > level) continue;
            for (const auto& [k, c] : group_product(keys_[a], keys_[b]))
                table_.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(index_.at(k)), to_double(c)});
        }
}

template <class Key>
const TraceBasis<Key>& TraceBasis<Key>::get(int dim, int level) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<TraceBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dim, level}];
    if (!slot) slot.reset(new TraceBasis(dim, level));
    return *slot;
}

template <class Key>
std::size_t TraceBasis<Key>::index(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw PreconditionError("key " + k.code() + " is outside the trace basis");
    return it->second;
}

template <class Key>
Eigen::VectorXd TraceBasis<Key>::unit() const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    u(0) = 1;
    return u;
}

template <class Key>
Eigen::VectorXd TraceBasis<Key>::product(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (const auto& e : table_) out(e.out) += e.coeff * x(e.left) * y(e.right);
    return out;
}

template <class Key>
Eigen::VectorXd TraceBasis<Key>::exp_linear(const Eigen::VectorXd& x) const {
    Eigen::VectorXd linear = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < size(); ++i)
        if (grades_[i] == 1) linear(static_cast<Eigen::Index>(i)) = x(static_cast<Eigen::Index>(i));
    Eigen::VectorXd result = unit(), power = unit();
    for (int k = 1; k <= level_; ++k) {
        power = product(power, linear) / k;
        result += power;
    }
    return result;
}

template class TraceBasis<Word>;
template class TraceBasis<Forest>;

template <class Key>
Trace<Key>::Trace(std::vector<double> grid, int dim, int level, PairPolicy policy)
    : grid_(std::move(grid)), dim_(dim), level_(level), policy_(policy) {
    if (grid_.size() < 2) throw PreconditionError("a trace needs at least two grid points");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (!(grid_[i] > grid_[i - 1])) throw PreconditionError("grid times must be strictly increasing");
}

template <class Key>
Trace<Key> Trace<Key>::from_steps(std::vector<double> grid, int dim, int level, PairPolicy policy,
                                  const std::vector<Eigen::VectorXd>& steps) {
    Trace x(std::move(grid), dim, level, policy);
    const auto& basis = x.basis();
    const int m = static_cast<int>(x.grid_.size()) - 1;
    if (static_cast<int>(steps.size()) != m) throw PreconditionError("need one step value per grid interval");
    for (int i = 0; i < m; ++i) x.set(i, i + 1, steps[static_cast<std::size_t>(i)]);
    if (policy == PairPolicy::all) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 2; j <= m; ++j) x.set(i, j, basis.product(x.at(i, j - 1), x.at(j - 1, j)));
    } else {
        for (int j = 2; j <= m; ++j) x.set(0, j, basis.product(x.at(0, j - 1), x.at(j - 1, j)));
    }
    return x;
}

template <class Key>
const Eigen::VectorXd& Trace<Key>::at(int i, int j) const {
    auto it = values_.find({i, j});
    if (it == values_.end())
        throw PreconditionError("grid pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not stored");
    return it->second;
}

template <class Key>
void Trace<Key>::set(int i, int j, Eigen::VectorXd value) {
    const int m = static_cast<int>(grid_.size()) - 1;
    if (i < 0 || j > m || i >= j) throw PreconditionError("invalid grid pair");
    if (value.size() != static_cast<Eigen::Index>(basis().size()))
        throw PreconditionError("trace value has the wrong number of coefficients");
    values_[{i, j}] = std::move(value);
}

template class Trace<Word>;
template class Trace<Forest>;

GeometricTrace lift_piecewise_linear(const std::vector<double>& t, const std::vector<Eigen::VectorXd>& x, int level,
                                     PairPolicy policy, bool time_channel) {
    if (t.size() != x.size()) throw PreconditionError("times and samples differ in length");
    if (x.empty()) throw PreconditionError("empty path");
    const int dim = static_cast<int>(x.front().size());
    const auto& basis = GeometricTrace::Basis::get(dim, level);
    std::vector<Eigen::VectorXd> steps;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        if (x[k + 1].size() != dim) throw PreconditionError("samples differ in dimension");
        Eigen::VectorXd increment = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        if (level >= 1) {
            if (time_channel) increment(static_cast<Eigen::Index>(basis.index(Word{0}))) = t[k + 1] - t[k];
            for (int i = 1; i <= dim; ++i)
                increment(static_cast<Eigen::Index>(basis.index(Word{i}))) = x[k + 1](i - 1) - x[k](i - 1);
        }
        steps.push_back(basis.exp_linear(increment));
    }
    return GeometricTrace::from_steps(t, dim, level, policy, steps);
}

BranchedTrace lift_branched_via_iota(const GeometricTrace& x) {
    const auto& words = x.basis();
    const auto& forests = BranchedTrace::Basis::get(x.dim(), x.level());
    Eigen::MatrixXd iota = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(forests.size()),
                                                 static_cast<Eigen::Index>(words.size()));
    for (std::size_t j = 0; j < words.size(); ++j)
        for (const auto& [f, c] : embed_iota(words.keys()[j], x.level()))
            iota(static_cast<Eigen::Index>(forests.index(f)), static_cast<Eigen::Index>(j)) = to_double(c);
    BranchedTrace out(x.grid(), x.dim(), x.level(), x.policy());
    for (const auto& [p, value] : x.values()) out.set(p.first, p.second, iota * value);
    return out;
}

std::vector<Eigen::VectorXd> brownian_increments(std::uint64_t seed, const std::vector<double>& grid, int dim) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Eigen::VectorXd> out;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double scale = std::sqrt(grid[k + 1] - grid[k]);
        Eigen::VectorXd dB(dim);
        for (int i = 0; i < dim; ++i) dB(i) = scale * normal(rng);
        out.push_back(dB);
    }
    return out;
}

BranchedTrace brownian_lift(const std::vector<double>& grid, const std::vector<Eigen::VectorXd>& increments,
                            Scheme scheme, int level, PairPolicy policy) {
    if (level > 3) throw PreconditionError("sampled lifts are limited to three nodes");
    if (increments.empty()) throw PreconditionError("no increments");
    if (increments.size() + 1 != grid.size()) throw PreconditionError("need one increment per grid interval");
    const int dim = static_cast<int>(increments.front().size());
    const auto& basis = BranchedTrace::Basis::get(dim, level);
    std::vector<Eigen::VectorXd> steps;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        Eigen::VectorXd delta(dim + 1);
        delta(0) = grid[k + 1] - grid[k];
        delta.tail(dim) = increments[k];
        Eigen::VectorXd step = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        if (scheme == Scheme::ito) {
            // Characters vanishing on trees with two or more nodes: iterated sums over strictly
            // ordered steps, i.e. left-point evaluation.
            for (std::size_t i = 0; i < basis.size(); ++i) {
                double value = 1;
                for (const auto& t : basis.keys()[i].trees()) value *= t.size() == 1 ? delta(t.label()) : 0.0;
                step(static_cast<Eigen::Index>(i)) = value;
            }
        } else {
            Eigen::VectorXd linear = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
            for (int i = 0; i <= dim; ++i)
                if (level >= 1) linear(static_cast<Eigen::Index>(basis.index(Forest(leaf(static_cast<Label>(i)))))) = delta(i);
            step = basis.exp_linear(linear);
        }
        steps.push_back(std::move(step));
    }
    return BranchedTrace::from_steps(grid, dim, level, policy, steps);
}

BranchedTrace brownian_lift(std::uint64_t seed, const std::vector<double>& grid, int dim, Scheme scheme, int level,
                            PairPolicy policy) {
    return brownian_lift(grid, brownian_increments(seed, grid, dim), scheme, level, policy);
}

template <class Key>
double chen_defect(const Trace<Key>& x) {
    const auto& basis = x.basis();
    const int m = static_cast<int>(x.grid().size()) - 1;
    double worst = 0;
    const auto check = [&](int i, int j, int k) {
        if (!x.has(i, j) || !x.has(j, k) || !x.has(i, k)) return;
        worst = std::max(worst, (basis.product(x.at(i, j), x.at(j, k)) - x.at(i, k)).cwiseAbs().maxCoeff());
    };
    if (x.policy() == PairPolicy::all) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k <= m; ++k) check(i, j, k);
    } else {
        for (int j = 1; j < m; ++j) check(0, j, j + 1);
    }
    return worst;
}

template <class Key>
double grouplike_defect(const Trace<Key>& x) {
    const auto& basis = x.basis();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<std::pair<std::size_t, double>>> expansions;
    for (std::size_t a = 1; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            if (basis.grade_of(a) + basis.grade_of(b) > basis.level()) continue;
            std::vector<std::pair<std::size_t, double>> e;
            for (const auto& [k, c] : character_product(basis.keys()[a], basis.keys()[b]))
                e.emplace_back(basis.index(k), to_double(c));
            pairs.emplace_back(a, b);
            expansions.push_back(std::move(e));
        }
    double worst = 0;
    for (const auto& [p, value] : x.values()) {
        worst = std::max(worst, std::abs(value(0) - 1));
        for (std::size_t n = 0; n < pairs.size(); ++n) {
            double lhs = 0;
            for (const auto& [k, c] : expansions[n]) lhs += c * value(static_cast<Eigen::Index>(k));
            const double rhs = value(static_cast<Eigen::Index>(pairs[n].first)) *
                               value(static_cast<Eigen::Index>(pairs[n].second));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

template <class Key>
double holder_ratio(const Trace<Key>& x, double per_node, double per_time_node, int max_level) {
    const auto& basis = x.basis();
    const int top = std::min(max_level, x.level());
    double sup = 0;
    for (const auto& [p, value] : x.values()) {
        const double span = x.grid()[static_cast<std::size_t>(p.second)] - x.grid()[static_cast<std::size_t>(p.first)];
        for (std::size_t i = 1; i < basis.size(); ++i) {
            const int g = basis.grade_of(i);
            if (g > top) break;
            const double exponent = per_node * g + per_time_node * basis.time_count(i);
            sup = std::max(sup, std::abs(value(static_cast<Eigen::Index>(i))) / std::pow(span, exponent));
        }
    }
    return sup;
}

template <class Key>
double holder_norm(const Trace<Key>& x, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) throw PreconditionError("alpha must lie in (0, 1]");
    return holder_ratio(x, alpha, 0.0, static_cast<int>(std::floor(1 / alpha)));
}

template <class Key>
double mixed_norm(const Trace<Key>& x, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) throw PreconditionError("alpha must lie in (0, 1]");
    return holder_ratio(x, alpha, 1 - alpha, static_cast<int>(std::floor(1 / alpha)));
}

template double chen_defect(const Trace<Word>&);
template double chen_defect(const Trace<Forest>&);
template double grouplike_defect(const Trace<Word>&);
template double grouplike_defect(const Trace<Forest>&);
template double holder_ratio(const Trace<Word>&, double, double, int);
template double holder_ratio(const Trace<Forest>&, double, double, int);
template double holder_norm(const Trace<Word>&, double);
template double holder_norm(const Trace<Forest>&, double);
template double mixed_norm(const Trace<Word>&, double);
template double mixed_norm(const Trace<Forest>&, double);

namespace {

template <class Key>
Trace<Key> apply_pointwise(const Trace<Key>& x, int level, const Eigen::MatrixXd& op) {
    const auto& source = x.basis();
    const auto& target = Trace<Key>::Basis::get(x.dim(), level);
    Trace<Key> out(x.grid(), x.dim(), level, x.policy());
    for (const auto& [p, value] : x.values()) {
        Eigen::VectorXd restricted(static_cast<Eigen::Index>(target.size()));
        for (std::size_t i = 0; i < target.size(); ++i)
            restricted(static_cast<Eigen::Index>(i)) = value(static_cast<Eigen::Index>(source.index(target.keys()[i])));
        out.set(p.first, p.second, op * restricted);
    }
    return out;
}

int resolve_level(int requested, int available, int dim, int v_dim) {
    if (dim != v_dim) throw PreconditionError("translation dimension does not match the trace");
    const int level = requested < 0 ? available : requested;
    if (level > available)
        throw PreconditionError("trace level " + std::to_string(available) + " is below the requested level " +
                                std::to_string(level));
    return level;
}

}  // namespace

BranchedTrace translate_trace(const BranchedTranslation& v, const BranchedTrace& x, int level) {
    level = resolve_level(level, x.level(), x.dim(), v.dim());
    const auto map = translation_matrix(v, Truncation{x.dim(), level}, true);
    return apply_pointwise(x, level, map.to_dense());
}

GeometricTrace translate_trace(const GeometricTranslation& v, const GeometricTrace& x, int level) {
    level = resolve_level(level, x.level(), x.dim(), v.dim());
    const Truncation tr{x.dim(), level};
    const auto map = LinearMap<Word>::tabulate(
        [&](const Word& w) { return translate_T(v, TensorPoly(WordSeries(w), tr)).terms(); }, words_up_to(x.dim(), level));
    return apply_pointwise(x, level, map.to_dense());
}

}  // namespace hopfpath
