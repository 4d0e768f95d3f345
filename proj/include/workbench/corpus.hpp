#pragma once

#include "workbench/document.hpp"

#include <cstdint>
#include <vector>

namespace workbench {

// One corpus entry: the emitted JSON and its parsed form.
struct CorpusEntry {
  Json json;
  Document document;
};

// The built-in corpus: pair groupoids n = 2..5 graded by c(i,j) = i - j
// into Z, pair groupoids with the trivial grading, the groups Z/2, Z/3,
// Z/4 and S3 under identity and quotient cocycles, cyclic shift actions on
// 3 and 4 points graded by the group coordinate, a Z/2 bundle over two
// units, a disjoint union and a product. Every configuration appears twice:
// with counting Haar and with rho drawn uniformly from [0.5, 2] under
// `seed`. Names are "<configuration>/counting" and "<configuration>/rho".
std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed);

}  // namespace workbench
