#ifndef CTXPREDICT_GENERATORS_HPP
#define CTXPREDICT_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ctxpredict/sequence.hpp"

namespace ctxpredict {

/// Deterministic sequence generators, selected by spec string:
///   zeros | ones | alternating | periodic:<bits> | runs | switch |
///   thue-morse | fibonacci | bernoulli:<p> | markov:<k> | adversarial:<a>
/// Seeded generators derive everything from `seed`; the rest ignore it.
BinarySequence generate(const std::string& spec, std::size_t n, std::uint64_t seed);

/// Mixed menu used by the end-to-end experiments.
std::vector<std::string> default_generator_menu();

/// Deterministic structured sequences (no randomness involved).
std::vector<std::string> structured_generator_menu();

}  // namespace ctxpredict

#endif
