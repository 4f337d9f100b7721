#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bn/factor.hpp"
#include "bn/network.hpp"
#include "util/rng.hpp"

namespace bnsurv::bn {

// Observed values. Point entries fix a variable to one state; set entries
// restrict it to a subset (mask indexed by state id, nonzero = allowed).
struct Evidence {
    std::vector<std::pair<int, int>> points;
    std::vector<std::pair<int, std::vector<std::uint8_t>>> sets;

    void set(int var, int state) { points.emplace_back(var, state); }
    void allow(int var, std::vector<std::uint8_t> mask) {
        sets.emplace_back(var, std::move(mask));
    }
    bool empty() const { return points.empty() && sets.empty(); }
};

// Name-based construction; rejects unknown variables and states.
Evidence make_evidence(const Network& net,
                       const std::vector<std::pair<std::string, std::string>>& items);

enum class EliminationOrder { MinFill, ReverseTopological };

struct InferenceOptions {
    EliminationOrder order = EliminationOrder::MinFill;
    // Networks with at most this many variables skip elimination and sum the
    // full joint table directly.
    int enumeration_threshold = 5;
};

// P(e): marginal probability of the evidence.
double evidence_probability(const Network& net, const Evidence& e,
                            const InferenceOptions& opts = {});

// Unnormalized joint over the targets: values are P(targets = t, e), with
// dimensions in the order the targets were given.
Factor query_factor(const Network& net, const std::vector<int>& targets, const Evidence& e,
                    const InferenceOptions& opts = {});

// P(target | e); raises ZeroEvidenceProbability when P(e) = 0.
std::vector<double> posterior_marginal(const Network& net, const Evidence& e, int target,
                                       const InferenceOptions& opts = {});
std::vector<double> posterior_marginal(const Network& net, const Evidence& e,
                                       const std::string& target,
                                       const InferenceOptions& opts = {});

// Exact joint sample of the targets given e, drawn by conditioning each
// target in turn on the evidence plus the states already drawn.
std::vector<int> sample_conditional(const Network& net, const Evidence& e,
                                    const std::vector<int>& targets, Rng& rng,
                                    const InferenceOptions& opts = {});
std::vector<int> sample_conditional(const Network& net, const Evidence& e,
                                    const std::vector<std::string>& targets,
                                    std::uint64_t rng_seed,
                                    const InferenceOptions& opts = {});

}  // namespace bnsurv::bn
