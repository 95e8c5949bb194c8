#pragma once

#include "hopfpath/translation_vector.hpp"
#include "hopfpath/tree.hpp"
#include "hopfpath/word.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace hopfpath {

// Keys of grade <= level in canonical order, with the group product tabulated in floating point
// (concatenation for words, the Grossman-Larson product for forests).
template <class Key>
class TraceBasis {
public:
    static const TraceBasis& get(int dim, int level);

    int dim() const { return dim_; }
    int level() const { return level_; }
    const std::vector<Key>& keys() const { return keys_; }
    std::size_t size() const { return keys_.size(); }
    bool contains(const Key& k) const { return index_.contains(k); }
    std::size_t index(const Key& k) const;
    int grade_of(std::size_t i) const { return grades_[i]; }
    // Occurrences of the letter / label 0.
    int time_count(std::size_t i) const { return time_counts_[i]; }

    Eigen::VectorXd unit() const;
    Eigen::VectorXd product(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    // exp of a level-one element (only the grade-1 entries of x are read).
    Eigen::VectorXd exp_linear(const Eigen::VectorXd& x) const;

private:
    TraceBasis(int dim, int level);

    struct Entry {
        int left, right, out;
        double coeff;
    };
    int dim_, level_;
    std::vector<Key> keys_;
    std::map<Key, std::size_t> index_;
    std::vector<int> grades_, time_counts_;
    std::vector<Entry> table_;
};

enum class PairPolicy {
    all,    // every grid pair i < j
    steps,  // consecutive pairs (i, i+1) and prefixes (0, j)
};

// Two-parameter family X_{t_i, t_j} on a grid, truncated at `level` nodes/letters.
template <class Key>
class Trace {
public:
    using Basis = TraceBasis<Key>;

    Trace(std::vector<double> grid, int dim, int level, PairPolicy policy);
    // Chen products of the step values (one per grid interval) fill the stored pairs.
    static Trace from_steps(std::vector<double> grid, int dim, int level, PairPolicy policy,
                            const std::vector<Eigen::VectorXd>& steps);

    const std::vector<double>& grid() const { return grid_; }
    int dim() const { return dim_; }
    int level() const { return level_; }
    PairPolicy policy() const { return policy_; }
    const Basis& basis() const { return Basis::get(dim_, level_); }

    bool has(int i, int j) const { return values_.contains({i, j}); }
    const Eigen::VectorXd& at(int i, int j) const;
    double coefficient(int i, int j, const Key& k) const { return at(i, j)(basis().index(k)); }
    void set(int i, int j, Eigen::VectorXd value);
    const std::map<std::pair<int, int>, Eigen::VectorXd>& values() const { return values_; }

private:
    std::vector<double> grid_;
    int dim_, level_;
    PairPolicy policy_;
    std::map<std::pair<int, int>, Eigen::VectorXd> values_;
};

using GeometricTrace = Trace<Word>;
using BranchedTrace = Trace<Forest>;

// Canonical lift of the piecewise-linear interpolation of samples x_k in R^d at times t_k.
// Channel 0 carries the time increment unless time_channel is false.
GeometricTrace lift_piecewise_linear(const std::vector<double>& t, const std::vector<Eigen::VectorXd>& x,
                                     int level, PairPolicy policy = PairPolicy::all, bool time_channel = true);

BranchedTrace lift_branched_via_iota(const GeometricTrace& x);

enum class Scheme { ito, stratonovich };

// Increments of a d-dimensional Brownian motion on the grid, deterministic in the seed.
std::vector<Eigen::VectorXd> brownian_increments(std::uint64_t seed, const std::vector<double>& grid, int dim);
// Branched lift with label 0 carrying time. Ito: left-point iterated sums. Stratonovich:
// the canonical lift of the polygonal interpolation (trapezoid sums on two-node keys).
BranchedTrace brownian_lift(const std::vector<double>& grid, const std::vector<Eigen::VectorXd>& increments,
                            Scheme scheme, int level, PairPolicy policy = PairPolicy::steps);
BranchedTrace brownian_lift(std::uint64_t seed, const std::vector<double>& grid, int dim, Scheme scheme,
                            int level, PairPolicy policy = PairPolicy::steps);

// Largest coefficient violation of X_{s,t} X_{t,u} = X_{s,u} over stored triples.
template <class Key>
double chen_defect(const Trace<Key>& x);
// Largest violation of the character property (shuffle for words, forest product for forests).
template <class Key>
double grouplike_defect(const Trace<Key>& x);

// sup over stored pairs and keys with 1 <= |w| <= max_level of |<X_{s,t}, w>| / |t-s|^e(w)
// where e(w) = per_node |w| + per_time_node |w|_0.
template <class Key>
double holder_ratio(const Trace<Key>& x, double per_node, double per_time_node, int max_level);
// Inhomogeneous alpha-Holder norm, keys up to floor(1/alpha) (capped at the trace level).
template <class Key>
double holder_norm(const Trace<Key>& x, double alpha);
// Mixed norm where each label-0 node counts with exponent 1 instead of alpha.
template <class Key>
double mixed_norm(const Trace<Key>& x, double alpha);

// Pointwise translation <M_v X_{s,t}, y> = <X_{s,t}, M_v^* y> at the given level (defaults to the
// level of x). Throws PreconditionError if the trace does not reach that level.
BranchedTrace translate_trace(const BranchedTranslation& v, const BranchedTrace& x, int level = -1);
GeometricTrace translate_trace(const GeometricTranslation& v, const GeometricTrace& x, int level = -1);

}  // namespace hopfpath
