#include "ctxpredict/generators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ctxpredict/machine.hpp"
#include "ctxpredict/rng.hpp"

namespace ctxpredict {

namespace {

BinarySequence periodic(const std::string& pattern, std::size_t n) {
    const Word w = Word::from_string(pattern);
    if (w.empty()) throw std::invalid_argument("periodic generator needs a pattern");
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = w.bits[i % w.size()];
    return BinarySequence(std::move(bits));
}

BinarySequence thue_morse(std::size_t n) {
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i)
        bits[i] = static_cast<Bit>(std::popcount(i) & 1);
    return BinarySequence(std::move(bits));
}

BinarySequence fibonacci_word(std::size_t n) {
    // substitution 0 -> 01, 1 -> 0
    std::vector<Bit> s = {0};
    while (s.size() < n) {
        std::vector<Bit> next;
        next.reserve(s.size() * 2);
        for (Bit b : s) {
            next.push_back(0);
            if (b == 0) next.push_back(1);
        }
        s = std::move(next);
    }
    s.resize(n);
    return BinarySequence(std::move(s));
}

BinarySequence runs(std::size_t n) {
    // 0 11 000 1111 ...
    std::vector<Bit> bits;
    bits.reserve(n);
    Bit b = 0;
    for (std::size_t len = 1; bits.size() < n; ++len, b ^= 1)
        for (std::size_t i = 0; i < len && bits.size() < n; ++i) bits.push_back(b);
    return BinarySequence(std::move(bits));
}

BinarySequence half_switch(std::size_t n) {
    std::vector<Bit> bits(n, 0);
    for (std::size_t i = n / 2; i < n; ++i) bits[i] = 1;
    return BinarySequence(std::move(bits));
}

BinarySequence bernoulli(double p, std::size_t n, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli p outside [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = u01(rng) < p ? 1 : 0;
    return BinarySequence(std::move(bits));
}

BinarySequence markov_chain(std::size_t order, std::size_t n, std::uint64_t seed) {
    if (order > 16) throw std::invalid_argument("markov order limited to 16");
    std::mt19937_64 rng(seed);
    const std::size_t states = std::size_t{1} << order;
    std::vector<double> p_one(states);
    for (double& p : p_one) p = u01(rng);
    std::vector<Bit> bits(n);
    std::size_t state = 0;
    const std::size_t mask = states - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = i < order ? 0.5 : p_one[state];  // fair warm-up bits
        const Bit b = u01(rng) < p ? 1 : 0;
        bits[i] = b;
        state = ((state << 1) | b) & mask;
    }
    return BinarySequence(std::move(bits));
}

BinarySequence adversarial(double a, std::size_t n, std::uint64_t seed) {
    const double an_real = a * static_cast<double>(n);
    const auto an = static_cast<std::size_t>(std::llround(an_real));
    if (std::abs(an_real - static_cast<double>(an)) > 1e-9 || an < 1 || an > n)
        throw std::invalid_argument("adversarial generator: aN must be an integer in [1, N]");
    std::mt19937_64 rng(seed);
    Word prefix;
    prefix.bits.resize(an);
    for (std::size_t i = 0; i < an; ++i) prefix.bits[i] = static_cast<Bit>(rng() & 1);
    return self_generate(chain_machine(prefix, 1), n);
}

}  // namespace

BinarySequence generate(const std::string& spec, std::size_t n, std::uint64_t seed) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (name == "zeros") return BinarySequence(std::vector<Bit>(n, 0));
    if (name == "ones") return BinarySequence(std::vector<Bit>(n, 1));
    if (name == "alternating") return periodic("01", n);
    if (name == "periodic") return periodic(arg, n);
    if (name == "thue-morse") return thue_morse(n);
    if (name == "fibonacci") return fibonacci_word(n);
    if (name == "runs") return runs(n);
    if (name == "switch") return half_switch(n);
    if (name == "bernoulli") return bernoulli(std::stod(arg), n, seed);
    if (name == "markov") return markov_chain(std::stoul(arg), n, seed);
    if (name == "adversarial") return adversarial(std::stod(arg), n, seed);
    throw std::invalid_argument("unknown generator '" + spec + "'");
}

std::vector<std::string> default_generator_menu() {
    return {"zeros",         "alternating",  "periodic:0011", "thue-morse",
            "bernoulli:0.5", "bernoulli:0.8", "markov:2"};
}

std::vector<std::string> structured_generator_menu() {
    return {"zeros",
            "ones",
            "alternating",
            "periodic:0011",
            "periodic:0001",
            "periodic:0111",
            "periodic:00101",
            "periodic:01011",
            "periodic:001011",
            "periodic:000111",
            "periodic:00010111",
            "periodic:0010011101",
            "periodic:000100110101111",
            "thue-morse",
            "fibonacci",
            "runs",
            "switch",
            "periodic:01",
            "periodic:0101100",
            "periodic:1101001"};
}

}  // namespace ctxpredict
