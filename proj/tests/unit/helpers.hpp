#pragma once

#include "moe/channels.hpp"
#include "moe/linalg.hpp"
#include "moe/random.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace moe::test {

inline Channel random_channel(int in, int out, int count, Rng& rng) {
  return Channel(random_kraus(in, out, count, rng));
}

inline Channel random_unital_channel(int n, int count, Rng& rng) { return Channel(random_unital_kraus(n, count, rng)); }

/// Max entrywise distance.
inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Smallest Kraus count that makes random_kraus(in, out, count) valid.
inline int min_count(int in, int out) { return (in + out - 1) / out; }

}  // namespace moe::test
