#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "reallot/economy.hpp"
#include "reallot/witness.hpp"

namespace reallot {

// Deterministic 64-bit generator (splitmix64); cheap to seed, good spread.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    // Uniform-enough draw in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

struct GeneratorConfig {
    // Agent count range, inclusive; must stay within [1, 8].
    int agents_min = 1;
    int agents_max = 6;
    // Peaks and endowments come from {k/d : 0 <= k <= 16d, 1 <= d <= bound}.
    int denominator_bound = 4;
    // Candidate (left, right) disutility weights, drawn uniformly.
    std::vector<std::pair<Rational, Rational>> weight_set = {
        {Rational(1), Rational(1)},
        {Rational(2), Rational(1)},
        {Rational(1), Rational(2)},
        {Rational(14), Rational(1)},
    };
};

// Pure function of (config, seed): ids drawn from 1..12, values from the
// config's rational grid. Throws ValidationError on an invalid range.
Economy generate_economy(const GeneratorConfig& config, std::uint64_t seed);

// Re-derives a candidate witness from its replay parameters (kind, rule,
// economy, variant data); returns the refreshed witness while the violation
// still holds, nullopt once it no longer does.
using ReplayFn = std::function<std::optional<Witness>(const Witness&)>;

// Greedy minimization: drop agents uninvolved in the violation, then move
// peak/endowment values toward 0, the nearest integers, or another agent's
// value, and weights toward 1, keeping every change the predicate still
// confirms. The result is locally minimal and always replays. Throws
// StaleWitnessError when the input itself no longer replays.
Witness shrink_witness(const Witness& w, const ReplayFn& check);

}  // namespace reallot
