#include "hopfpath/basis.hpp"
#include "hopfpath/error.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace hopfpath {

namespace {

std::recursive_mutex basis_mutex;

void check(int dim, int n) {
    if (dim < 0 || dim > 255 || n < 0) throw PreconditionError("invalid basis request");
}

}  // namespace

const std::vector<Word>& words_of_length(int dim, int length) {
    check(dim, length);
    static std::map<std::pair<int, int>, std::vector<Word>> cache;
    std::lock_guard lock(basis_mutex);
    auto [it, fresh] = cache.try_emplace({dim, length});
    if (!fresh) return it->second;
    std::vector<Word> out{Word{}};
    for (int k = 0; k < length; ++k) {
        std::vector<Word> next;
        next.reserve(out.size() * (dim + 1));
        for (const auto& w : out)
            for (int l = 0; l <= dim; ++l) next.push_back(w * Word{l});
        out = std::move(next);
    }
    it->second = std::move(out);
    return it->second;
}

std::vector<Word> words_up_to(int dim, int depth) {
    std::vector<Word> out;
    for (int n = 0; n <= depth; ++n) {
        const auto& ws = words_of_length(dim, n);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

const std::vector<Tree>& trees_of_size(int dim, int size) {
    check(dim, size);
    static std::map<std::pair<int, int>, std::vector<Tree>> cache;
    std::lock_guard lock(basis_mutex);
    if (auto it = cache.find({dim, size}); it != cache.end()) return it->second;
    std::vector<Tree> out;
    if (size >= 1) {
        const auto& branches = forests_of_size(dim, size - 1);
        for (int l = 0; l <= dim; ++l)
            for (const auto& f : branches) out.emplace_back(static_cast<Label>(l), f.trees());
        std::sort(out.begin(), out.end());
    }
    return cache.emplace(std::pair{dim, size}, std::move(out)).first->second;
}

std::vector<Tree> trees_up_to(int dim, int depth) {
    std::vector<Tree> out;
    for (int n = 1; n <= depth; ++n) {
        const auto& ts = trees_of_size(dim, n);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

const std::vector<Forest>& forests_of_size(int dim, int size) {
    check(dim, size);
    static std::map<std::pair<int, int>, std::vector<Forest>> cache;
    std::lock_guard lock(basis_mutex);
    if (auto it = cache.find({dim, size}); it != cache.end()) return it->second;
    std::vector<Forest> out;
    if (size == 0) {
        out.emplace_back();
    } else {
        const std::vector<Tree> pool = trees_up_to(dim, size);
        std::vector<Tree> chosen;
        std::function<void(std::size_t, int)> pick = [&](std::size_t from, int remaining) {
            if (remaining == 0) {
                out.emplace_back(chosen);
                return;
            }
            for (std::size_t i = from; i < pool.size() && pool[i].size() <= remaining; ++i) {
                chosen.push_back(pool[i]);
                pick(i, remaining - pool[i].size());
                chosen.pop_back();
            }
        };
        pick(0, size);
        std::sort(out.begin(), out.end());
    }
    return cache.emplace(std::pair{dim, size}, std::move(out)).first->second;
}

std::vector<Forest> forests_up_to(int dim, int depth) {
    std::vector<Forest> out;
    for (int n = 0; n <= depth; ++n) {
        const auto& fs = forests_of_size(dim, n);
        out.insert(out.end(), fs.begin(), fs.end());
    }
    return out;
}

}  // namespace hopfpath
