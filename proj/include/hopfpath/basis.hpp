#pragma once

#include "hopfpath/tree.hpp"
#include "hopfpath/word.hpp"

#include <vector>

namespace hopfpath {

// Canonically ordered bases of the truncated spaces. Labels range over 0..dim.
// Results are cached and shared between threads.
const std::vector<Word>& words_of_length(int dim, int length);
std::vector<Word> words_up_to(int dim, int depth);

const std::vector<Tree>& trees_of_size(int dim, int size);
std::vector<Tree> trees_up_to(int dim, int depth);

const std::vector<Forest>& forests_of_size(int dim, int size);
std::vector<Forest> forests_up_to(int dim, int depth);

}  // namespace hopfpath
