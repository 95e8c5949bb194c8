#pragma once

#include "hopfpath/polynomial.hpp"
#include "hopfpath/roughpath.hpp"
#include "hopfpath/translation_vector.hpp"
#include "hopfpath/tree.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace hopfpath {

// Polynomial vector fields f_0, ..., f_d on R^e; f_i drives label i.
class PolyVectorField {
public:
    PolyVectorField(int state_dim, std::vector<PolyVector> components);
    // Each component given as e polynomial strings in y1..ye.
    static PolyVectorField parse(int state_dim, const std::vector<std::vector<std::string>>& components);
    static PolyVectorField zero(int state_dim, int dim);

    int state_dim() const { return state_dim_; }
    int dim() const { return static_cast<int>(f_.size()) - 1; }
    const PolyVector& operator[](std::size_t i) const { return f_.at(i); }
    const std::vector<PolyVector>& components() const { return f_; }
    friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

private:
    int state_dim_;
    std::vector<PolyVector> f_;
};

// (a . d) b, the pre-Lie product of vector fields.
PolyVector pre_lie(const PolyVector& a, const PolyVector& b);

// f_{[t_1 ... t_n]_i} = D^n f_i (f_{t_1}, ..., f_{t_n}). Thread safe, memoized per tree.
class ElementaryDifferentials {
public:
    explicit ElementaryDifferentials(PolyVectorField f) : f_(std::move(f)) {}
    const PolyVectorField& field() const { return f_; }
    PolyVector operator()(const Tree& t) const;

private:
    const PolyVector& lookup(const Tree& t) const;

    PolyVectorField f_;
    mutable std::mutex mutex_;
    mutable std::map<Tree, PolyVector> cache_;
};

PolyVector elementary_differential(const PolyVectorField& f, const Tree& t);

// Per-tree weight c(t) in the Euler sum. rule "inverse_symmetry" means c(t) = 1/sigma(t) with the
// labelled symmetry factor; "unit" means c(t) = 1. The shape table records the calibrated value
// for every label-free tree up to max_nodes.
struct EulerCalibration {
    std::string rule;
    int max_nodes = 0;
    std::map<Tree, Rational> shapes;

    Rational weight(const Tree& t) const;
    friend bool operator==(const EulerCalibration&, const EulerCalibration&) = default;
};

// The table shipped with the library (generated by calibrate_euler, see tools/).
const EulerCalibration& committed_calibration();
EulerCalibration parse_calibration(const std::string& json_text);
std::string calibration_to_json(const EulerCalibration& c);

// Taylor coefficient (1/k!) (f . d)^k id of the flow of dy = f(y) dt, exact.
PolyVector taylor_coefficient(const PolyVector& f, int k);
// Coefficient of h^k in one Euler step driven by X_t = t (label 0 only):
// sum_{|t| = k} c(t) / t! f_t. Requires a one-component field.
PolyVector euler_step_coefficient(const PolyVectorField& f, int k, const EulerCalibration& c);

// Determines c(t) for each label-free tree up to max_nodes by matching Euler steps against the
// exact Taylor expansion for random polynomial fields (exact rational elimination). Each solved
// value must be 1 or 1/sigma(t); anything else throws InternalError. The rule is the common
// choice, or throws if the shapes disagree.
EulerCalibration calibrate_euler(int max_nodes, std::uint64_t seed = 1);

// f^v_i = f_i + sum_t <v_i, t> c(t) f_t. Entries of v must be combinations of trees.
PolyVectorField translated_field(const PolyVectorField& f, const BranchedTranslation& v,
                                 const EulerCalibration& c = committed_calibration());
// Geometric version through the tree embedding of each v_i.
PolyVectorField translated_field(const PolyVectorField& f, const GeometricTranslation& v,
                                 const EulerCalibration& c = committed_calibration());

// y' = y + sum_{|t| <= level} c(t) <X_{s,t}, t> f_t(y), over trees t.
class EulerScheme {
public:
    EulerScheme(const PolyVectorField& f, int level, const EulerCalibration& c = committed_calibration());
    int level() const { return level_; }
    // x is an increment vector in the basis of the given trace basis.
    Eigen::VectorXd step(const TraceBasis<Forest>& basis, const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    Eigen::VectorXd step(const BranchedTrace& x, int i, int j, const Eigen::VectorXd& y) const;
    // Trajectory at every grid point, stepping over consecutive pairs.
    std::vector<Eigen::VectorXd> solve(const BranchedTrace& x, const Eigen::VectorXd& y0) const;
    std::vector<Eigen::VectorXd> solve(const GeometricTrace& x, const Eigen::VectorXd& y0) const;

private:
    struct Term {
        Tree tree;
        CompiledPolyVector field;
    };
    int dim_, state_dim_, level_;
    std::vector<Term> terms_;
};

double max_discrepancy(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b);

// Solves dY = f^v(Y) dX with the Euler scheme at the given level and dY = f(Y) d(M_v X) at
// level * max|v_i|, and returns the largest state difference over the grid. A node translated by
// a k-node tree makes k-node keys of M_v X as large as single nodes, hence the higher level on
// the driven side; x must reach it.
double equivalence_experiment(const PolyVectorField& f, const BranchedTranslation& v, const BranchedTrace& x,
                              const Eigen::VectorXd& y0, int level);
double equivalence_experiment(const PolyVectorField& f, const GeometricTranslation& v, const GeometricTrace& x,
                              const Eigen::VectorXd& y0, int level);

}  // namespace hopfpath
