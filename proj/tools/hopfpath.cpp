#include "hopfpath/basis.hpp"
#include "hopfpath/bhz.hpp"
#include "hopfpath/error.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/rde.hpp"
#include "hopfpath/roughpath.hpp"
#include "hopfpath/syntax.hpp"
#include "hopfpath/tensor.hpp"
#include "hopfpath/translation.hpp"
#include "hopfpath/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hopfpath;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kProperty = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool g_json = false;

template <class K, class S>
json series_json(const LinComb<K, S>& x) {
    json out = json::object();
    for (const auto& [k, c] : x) {
        if constexpr (std::is_same_v<S, double>)
            out[to_text(k)] = c;
        else
            out[to_text(k)] = coefficient_text(c);
    }
    return out;
}

template <class K, class S>
void emit(const LinComb<K, S>& x) {
    if (g_json)
        std::cout << json{{"result", series_json(x)}}.dump() << "\n";
    else
        std::cout << to_text(x) << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

int max_grade(const auto& x) {
    int m = 0;
    for (const auto& [k, c] : x) m = std::max(m, grade(k));
    return m;
}

int max_label(const auto& x) {
    int m = 0;
    for (const auto& [k, c] : x) m = std::max(m, k.max_label());
    return m;
}

Rational parse_alpha(const std::string& text) {
    Cursor c(text);
    const Rational a = c.rational();
    if (!c.at_end()) c.fail("unexpected trailing input in alpha");
    return a;
}

// ------------------------------------------------------------------ algebra

void run_algebra(const std::string& op, const std::string& algebra, const std::vector<std::string>& exprs, int depth) {
    const bool binary = op == "product";
    if (exprs.size() != (binary ? 2u : 1u))
        throw UsageError(op + " takes " + (binary ? "two expressions" : "one expression"));
    if (algebra == "gl" || algebra == "ck") {
        std::vector<ForestSeries> x;
        for (const auto& e : exprs) x.push_back(parse_forest_series(e));
        const int d = depth > 0 ? depth : (binary ? max_grade(x[0]) + max_grade(x[1]) : max_grade(x[0]));
        if (op == "product")
            emit(algebra == "gl" ? gl_product(x[0], x[1], d) : forest_product(x[0], x[1], d));
        else if (op == "coproduct")
            emit(algebra == "gl" ? gl_coproduct(x[0]) : ck_coproduct(x[0]));
        else
            emit(algebra == "gl" ? gl_antipode(x[0], d) : ck_antipode(x[0]));
    } else {
        std::vector<WordSeries> x;
        for (const auto& e : exprs) x.push_back(parse_word_series(e));
        const int d = depth > 0 ? depth : (binary ? max_grade(x[0]) + max_grade(x[1]) : max_grade(x[0]));
        if (op == "product")
            emit(algebra == "shuffle" ? shuffle(x[0], x[1], d) : concat(x[0], x[1], d));
        else if (op == "coproduct")
            emit(algebra == "shuffle" ? deconcat_coproduct(x[0]) : shuffle_coproduct(x[0]));
        else
            emit(tensor_antipode(x[0]));
    }
}

// ------------------------------------------------------------------ translate

// {"kind": "branched" | "geometric", "v": ["<series for v_0>", "<series for v_1>", ...]}
template <class Key>
TranslationVector<Key> read_translation(const json& j, LinComb<Key> (*parse)(std::string_view)) {
    if (!j.contains("v") || !j["v"].is_array() || j["v"].empty()) throw UsageError("translation file needs a non-empty array 'v'");
    std::vector<LinComb<Key>> entries;
    for (const auto& e : j["v"]) entries.push_back(parse(e.get<std::string>()));
    return TranslationVector<Key>(std::move(entries));
}

void run_translate(const std::string& vpath, bool dual, const std::string& expr, int depth) {
    const json j = read_json(vpath);
    const std::string kind = j.value("kind", "branched");
    if (kind == "branched") {
        const auto v = read_translation<Forest>(j, &parse_forest_series);
        const auto x = parse_forest_series(expr);
        if (dual) return emit(dual_translate_M(v, x));
        const int d = depth > 0 ? depth : max_grade(x) * std::max(1, v.max_grade());
        emit(translate_M(v, ForestPoly(x, Truncation{std::max(v.dim(), max_label(x)), d})).terms());
    } else if (kind == "geometric") {
        const auto v = read_translation<Word>(j, &parse_word_series);
        const auto x = parse_word_series(expr);
        if (dual) return emit(dual_translate_T(v, x));
        const int d = depth > 0 ? depth : max_grade(x) * std::max(1, v.max_grade());
        emit(translate_T(v, TensorPoly(x, Truncation{std::max(v.dim(), max_label(x)), d})).terms());
    } else {
        throw UsageError("translation kind must be 'branched' or 'geometric'");
    }
}

// ------------------------------------------------------------------ ito-strat

void run_ito_strat(int dim, const std::string& expr) {
    ForestSeries out;
    for (const auto& [f, c] : parse_forest_series(expr)) {
        if (!f.is_tree()) throw UsageError("ito-strat expects trees, got " + f.code());
        out.add_scaled(ito_strat_convert(f.as_tree(), dim), c);
    }
    emit(out);
}

// ------------------------------------------------------------------ lift

struct Samples {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> x;
};

// Rows "t,x1,...,xd"; a first line that does not parse as numbers is taken as a header.
Samples read_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    Samples s;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> values;
        std::stringstream cells(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(cell, &used));
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (s.t.empty() && row == 1) continue;
            throw ParseError(path + ": row " + std::to_string(row) + " is not numeric", 0);
        }
        if (values.size() < 2) throw ParseError(path + ": row " + std::to_string(row) + " needs a time and a value", 0);
        if (!s.x.empty() && static_cast<Eigen::Index>(values.size() - 1) != s.x.front().size())
            throw ParseError(path + ": row " + std::to_string(row) + " has a different width", 0);
        s.t.push_back(values[0]);
        s.x.push_back(Eigen::Map<Eigen::VectorXd>(values.data() + 1, static_cast<Eigen::Index>(values.size() - 1)));
    }
    if (s.t.size() < 2) throw ParseError(path + ": need at least two samples", 0);
    return s;
}

template <class Key>
void print_trace(const Trace<Key>& x) {
    const auto& keys = x.basis().keys();
    const int last = static_cast<int>(x.grid().size()) - 1;
    if (g_json) {
        json pairs = json::array();
        for (const auto& [ij, value] : x.values()) {
            json entry{{"s", x.grid()[static_cast<std::size_t>(ij.first)]}, {"t", x.grid()[static_cast<std::size_t>(ij.second)]}};
            json coeffs = json::object();
            for (std::size_t k = 0; k < keys.size(); ++k) coeffs[to_text(keys[k])] = value(static_cast<Eigen::Index>(k));
            entry["value"] = coeffs;
            pairs.push_back(entry);
        }
        std::cout << json{{"level", x.level()}, {"dim", x.dim()}, {"pairs", pairs}}.dump() << "\n";
        return;
    }
    // Plain output: the value over the whole grid, one key per line.
    std::cout << "key,value\n";
    const auto& value = x.at(0, last);
    for (std::size_t k = 0; k < keys.size(); ++k)
        std::cout << '"' << to_text(keys[k]) << "\"," << coefficient_text(value(static_cast<Eigen::Index>(k))) << "\n";
}

void run_lift(const std::string& path, int level, bool branched, const std::string& policy_name, bool no_time) {
    const auto s = read_csv(path);
    PairPolicy policy;
    if (policy_name == "steps")
        policy = PairPolicy::steps;
    else if (policy_name == "all")
        policy = PairPolicy::all;
    else
        throw UsageError("policy must be 'all' or 'steps'");
    const auto x = lift_piecewise_linear(s.t, s.x, level, policy, !no_time);
    if (branched)
        print_trace(lift_branched_via_iota(x));
    else
        print_trace(x);
}

// ------------------------------------------------------------------ rde

// Config:
// { "state_dim": e, "field": [[f_0 components], [f_1 components], ...],
//   "kind": "branched" | "geometric", "level": L, "y0": [...],
//   "driver": [[t, x_1, ..., x_d], ...]  (a polyline, resampled uniformly at each refinement),
//   "v": ["<v_0>", ...] (optional), "refinements": [n, ...] }
std::vector<Eigen::VectorXd> resample(const std::vector<std::vector<double>>& points, const std::vector<double>& grid) {
    std::vector<Eigen::VectorXd> out;
    std::size_t seg = 0;
    const std::size_t d = points.front().size() - 1;
    for (double t : grid) {
        while (seg + 2 < points.size() && points[seg + 1][0] <= t) ++seg;
        const auto& a = points[seg];
        const auto& b = points[seg + 1];
        const double w = b[0] == a[0] ? 0.0 : (t - a[0]) / (b[0] - a[0]);
        Eigen::VectorXd p(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) p(static_cast<Eigen::Index>(i)) = (1 - w) * a[i + 1] + w * b[i + 1];
        out.push_back(p);
    }
    return out;
}

void run_rde(const std::string& path) {
    const json cfg = read_json(path);
    try {
        const int e = cfg.at("state_dim").get<int>();
        const auto field = PolyVectorField::parse(e, cfg.at("field").get<std::vector<std::vector<std::string>>>());
        const std::string kind = cfg.value("kind", "branched");
        const int level = cfg.value("level", 2);
        const auto y0v = cfg.at("y0").get<std::vector<double>>();
        const Eigen::VectorXd y0 = Eigen::Map<const Eigen::VectorXd>(y0v.data(), static_cast<Eigen::Index>(y0v.size()));
        const auto points = cfg.at("driver").get<std::vector<std::vector<double>>>();
        if (points.size() < 2) throw UsageError("driver needs at least two points");
        for (const auto& p : points)
            if (static_cast<int>(p.size()) != field.dim() + 1) throw UsageError("driver points must be [t, x_1, ..., x_d]");
        const auto refinements = cfg.value("refinements", std::vector<int>{128, 256, 512, 1024});
        const bool has_v = cfg.contains("v");
        if (kind != "branched" && kind != "geometric") throw UsageError("kind must be 'branched' or 'geometric'");

        json rows = json::array();
        std::vector<double> measures;
        for (int n : refinements) {
            if (n < 1) throw UsageError("refinements must be positive");
            std::vector<double> grid;
            const double t0 = points.front()[0], t1 = points.back()[0];
            for (int k = 0; k <= n; ++k) grid.push_back(t0 + (t1 - t0) * k / n);
            const auto samples = resample(points, grid);
            json row{{"n", n}};
            if (kind == "branched") {
                const auto v = has_v ? read_translation<Forest>(cfg, &parse_forest_series) : BranchedTranslation(field.dim());
                const int lift_level = level * std::max(1, v.max_grade());
                const auto x = lift_branched_via_iota(lift_piecewise_linear(grid, samples, lift_level, PairPolicy::steps));
                const auto y = EulerScheme(field, level).solve(x, y0);
                row["final"] = std::vector<double>(y.back().data(), y.back().data() + y.back().size());
                if (has_v) row["discrepancy"] = equivalence_experiment(field, v, x, y0, level);
            } else {
                const auto v = has_v ? read_translation<Word>(cfg, &parse_word_series) : GeometricTranslation(field.dim());
                const int lift_level = level * std::max(1, v.max_grade());
                const auto x = lift_piecewise_linear(grid, samples, lift_level, PairPolicy::steps);
                const auto y = EulerScheme(field, level).solve(x, y0);
                row["final"] = std::vector<double>(y.back().data(), y.back().data() + y.back().size());
                if (has_v) row["discrepancy"] = equivalence_experiment(field, v, x, y0, level);
            }
            if (has_v) measures.push_back(row["discrepancy"].get<double>());
            rows.push_back(row);
        }
        if (g_json) {
            std::cout << json{{"rows", rows}}.dump() << "\n";
            return;
        }
        std::cout << (has_v ? "n,discrepancy,final\n" : "n,final\n");
        for (const auto& r : rows) {
            std::cout << r["n"].get<int>() << ",";
            if (has_v) std::cout << coefficient_text(r["discrepancy"].get<double>()) << ",";
            const auto fin = r["final"].get<std::vector<double>>();
            for (std::size_t i = 0; i < fin.size(); ++i) std::cout << (i ? " " : "") << coefficient_text(fin[i]);
            std::cout << "\n";
        }
    } catch (const json::exception& ex) {
        throw UsageError(std::string("malformed rde config: ") + ex.what());
    }
}

// ------------------------------------------------------------------ bhz

Symbol read_symbol(const std::string& text) {
    const auto first = text.find_first_not_of(' ');
    if (first != std::string::npos && text[first] == '(') return phi(parse_tree(text));
    return parse_symbol(text);
}

void run_bhz(const std::string& op, const std::string& alpha_text, const std::string& text, const std::string& ell_text, int dim) {
    const Symbol s = read_symbol(text);
    if (op == "degree") {
        const Degree d = degree(s);
        std::string out = to_text(d);
        json j{{"symbol", to_text(s)}, {"degree", out}};
        if (!alpha_text.empty()) {
            const Rational a = parse_alpha(alpha_text);
            j["value"] = d.at(a).get_str();
            j["negative"] = is_negative(s, a);
            out += " = " + d.at(a).get_str() + (is_negative(s, a) ? " (negative)" : "");
        }
        if (g_json)
            std::cout << j.dump() << "\n";
        else
            std::cout << out << "\n";
        return;
    }
    if (alpha_text.empty()) throw UsageError("bhz " + op + " needs --alpha");
    const Rational alpha = parse_alpha(alpha_text);
    if (op == "delta-minus") return emit(delta_minus(s, alpha));
    if (op == "delta-plus") return emit(delta_plus(s));
    // renorm: the character is given on negative trees.
    LinComb<Tree> v;
    for (const auto& [f, c] : parse_forest_series(ell_text)) {
        if (!f.is_tree()) throw UsageError("--ell must be a combination of trees");
        v.add_term(f.as_tree(), c);
    }
    const int d = std::max({dim, s.forest.max_label(), static_cast<int>(s.tag), max_label(v)});
    emit(renormalize(NegCharacter::from_tree_functional(v, alpha, d), s));
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& suite, int max_nodes, int dim, std::uint64_t seed) {
    SuiteOptions o;
    o.max_nodes = max_nodes;
    o.dim = dim;
    o.seed = seed;
    std::vector<std::string> suites;
    if (suite == "all")
        suites = suite_names();
    else
        suites = {suite};
    bool ok = true;
    json all = json::array();
    for (const auto& name : suites) {
        const auto r = run_suite(name, o);
        ok = ok && r.ok();
        if (g_json) {
            json failures = json::array();
            for (const auto& f : r.failures) failures.push_back({{"property", f.property}, {"element", f.element}, {"detail", f.detail}});
            all.push_back({{"suite", name}, {"checks", r.checks}, {"failures", failures}, {"seconds", r.seconds}});
            continue;
        }
        for (const auto& [property, count] : r.checks)
            std::cout << name << ": " << property << ": " << count << " checks, "
                      << (r.passed(property) ? "ok" : "FAILED") << "\n";
        for (const auto& f : r.failures) std::cout << "FAIL " << name << ": " << f.property << " at " << f.element << ": " << f.detail << "\n";
        std::cout << name << ": " << r.total() << " checks, " << r.failures.size() << " failures, "
                  << coefficient_text(r.seconds) << " s\n";
    }
    if (g_json) std::cout << all.dump() << "\n";
    return ok ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hopf algebras of words and forests, translations, branched traces and RDE solvers."};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "structured output");

    std::string op, algebra = "gl";
    std::vector<std::string> exprs;
    int depth = 0;
    auto* alg = app.add_subcommand("algebra", "product, coproduct or antipode");
    alg->add_option("op", op)->required()->check(CLI::IsMember({"product", "coproduct", "antipode"}));
    alg->add_option("--algebra", algebra)->check(CLI::IsMember({"gl", "ck", "shuffle", "concat"}));
    alg->add_option("exprs", exprs)->required();
    alg->add_option("--depth", depth, "truncation (default: sum of input grades)");

    std::string vpath, expr;
    bool dual = false;
    auto* tr = app.add_subcommand("translate", "translation or its dual");
    tr->add_option("--v", vpath)->required();
    tr->add_flag("--dual", dual);
    tr->add_option("expr", expr)->required();
    tr->add_option("--depth", depth);

    int dim = 1;
    auto* ito = app.add_subcommand("ito-strat", "Ito to Stratonovich conversion of trees");
    ito->add_option("--dim", dim)->required();
    ito->add_option("expr", expr)->required();

    std::string path, policy = "steps";
    int levels = 2;
    bool branched = false, no_time = false;
    auto* lift = app.add_subcommand("lift", "lift a sampled path");
    lift->add_option("--path", path)->required();
    lift->add_option("--levels", levels)->required();
    lift->add_flag("--branched", branched);
    lift->add_option("--policy", policy, "all | steps");
    lift->add_flag("--no-time", no_time, "do not add the time channel");

    auto* rde = app.add_subcommand("rde", "rough differential equations");
    rde->require_subcommand(1);
    std::string config;
    auto* rde_run = rde->add_subcommand("run", "Euler solves over refinements");
    rde_run->add_option("--config", config)->required();

    std::string alpha, ell = "0";
    auto* bhz = app.add_subcommand("bhz", "symbols of the regularity structure");
    bhz->add_option("op", op)->required()->check(CLI::IsMember({"degree", "delta-minus", "delta-plus", "renorm"}));
    bhz->add_option("--alpha", alpha);
    bhz->add_option("--ell", ell, "character on negative trees (renorm)");
    bhz->add_option("--dim", dim);
    bhz->add_option("symbol", expr)->required();

    std::string suite;
    int max_nodes = 4, d = 2;
    std::uint64_t seed = 1;
    auto* ver = app.add_subcommand("verify", "property suites");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    ver->add_option("--suite", suite)->required()->check(CLI::IsMember(choices));
    ver->add_option("--max-nodes", max_nodes);
    ver->add_option("--d", d);
    ver->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*alg) run_algebra(op, algebra, exprs, depth);
        else if (*tr) run_translate(vpath, dual, expr, depth);
        else if (*ito) run_ito_strat(dim, expr);
        else if (*lift) run_lift(path, levels, branched, policy, no_time);
        else if (*rde_run) run_rde(config);
        else if (*bhz) run_bhz(op, alpha, expr, ell, dim);
        else if (*ver) return run_verify(suite, max_nodes, d, seed);
        return kOk;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return kProperty;
    }
}
