#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace cycdisc {

using Rng = std::mt19937_64;

// Independent stream for (seed, name, index); identical arguments give identical streams.
Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

// Unbiased draw from [0, k); k must be positive.
std::size_t uniform_index(Rng& rng, std::size_t k);

// Bernoulli(p) from 53 random bits, independent of the standard library's distributions.
bool bernoulli(Rng& rng, double p);

template <class T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cycdisc
