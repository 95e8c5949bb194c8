#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hopfpath {

struct SuiteOptions {
    int max_nodes = 4;
    int dim = 2;
    std::uint64_t seed = 1;
    // 0 means HOPFPATH_THREADS if set, else the hardware concurrency.
    int threads = 0;
};

struct CheckFailure {
    std::string property;
    std::string element;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::map<std::string, std::size_t> checks;  // per property
    std::vector<CheckFailure> failures;         // in check order
    double seconds = 0;

    std::size_t total() const;
    bool ok() const { return failures.empty(); }
    // No failure recorded for the property, which must have been checked at least once.
    bool passed(const std::string& property) const;
};

// hopf, prelie, adjoint, cointeraction, itostrat, bhz, rde.
const std::vector<std::string>& suite_names();
// Throws PreconditionError for an unknown suite or out-of-range options.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);
int worker_threads(int requested = 0);

}  // namespace hopfpath
