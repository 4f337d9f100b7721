#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model/outbreak.hpp"
#include "model/person.hpp"

namespace bnsurv::engine {

using model::CensusCell;
using model::ClassKey;
using model::ClassShape;
using model::PersonEvidence;

// A person currently away from their background class.
struct TrackedCase {
    std::uint64_t id = 0;
    ClassKey current = 0;
    ClassKey origin = 0;
    std::int64_t admission_day = 0;  // civil day index
};

// Compensated running sum; the population log likelihood accumulates millions
// of per-person deltas and plain summation drifts past the consistency bound.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x);
    double value() const { return sum + comp; }
};

struct Accumulators {
    std::vector<double> s;            // per config, sum of N * log-lik over finite classes
    std::vector<std::int64_t> zeros;  // per config, people in zero-likelihood classes
};

// The class-count table plus per-config log-likelihood accumulators. Counts
// move between classes one person at a time; the accumulators follow by
// likelihood-ratio deltas, with a periodic from-scratch resync to cap drift.
//
// The likelihood source maps a person evidence tuple to the linear-space
// likelihood per config; it is consulted once per distinct class and cached
// forever. The source must outlive the table.
class EquivalenceClassTable {
public:
    using LikelihoodSource = std::function<std::vector<double>(const PersonEvidence&)>;

    EquivalenceClassTable(ClassShape shape, std::size_t config_count, LikelihoodSource source,
                          const std::vector<CensusCell>& census, std::uint64_t population_size,
                          std::int64_t start_day = 0, std::uint64_t resync_interval = 10000);

    const ClassShape& shape() const { return shape_; }
    std::size_t config_count() const { return config_count_; }
    std::int64_t current_day() const { return current_day_; }
    std::uint64_t population() const { return population_; }
    const std::map<ClassKey, std::int64_t>& counts() const { return counts_; }
    std::int64_t count_of(ClassKey key) const;
    const std::vector<TrackedCase>& tracked_cases() const { return tracked_; }

    // Rejections and other data-quality events, in occurrence order.
    const std::vector<std::string>& warnings() const { return warnings_; }

    // Moves one person from their background class to the case's class.
    // Returns the case id, or nullopt with a warning when the background
    // count for that demographic cell is already zero.
    std::optional<std::uint64_t> apply_case_arrival(const PersonEvidence& e);

    // Rolls the relative-day clock forward to new_day (strictly later). Each
    // crossed midnight shifts every open case one admission step; cases that
    // age out return to their background class.
    void advance_day(std::int64_t new_day);

    // log P(population evidence | config), or -inf when any person sits in a
    // class that config rules out.
    double population_log_likelihood(std::size_t config) const;

    Accumulators accumulators() const;

    // From-scratch accumulators out of counts and the cache; the incremental
    // state is not touched. The order-taking overload exists for tests.
    Accumulators recompute_fresh() const;
    Accumulators recompute_fresh(std::span<const ClassKey> order) const;

    // Replaces the incremental accumulators with a fresh recomputation.
    void resync();

    // log P(e | config) for one class, from the cache (computing on first use).
    const std::vector<double>& class_log_likelihood(ClassKey key);

private:
    void accumulate(const std::vector<double>& loglik, std::int64_t n);
    void move_person(ClassKey from, ClassKey to);

    ClassShape shape_;
    std::size_t config_count_;
    LikelihoodSource source_;
    std::map<ClassKey, std::int64_t> counts_;
    std::map<ClassKey, std::vector<double>> class_loglik_;
    std::vector<NeumaierSum> s_;
    std::vector<std::int64_t> zeros_;
    std::vector<TrackedCase> tracked_;
    std::vector<std::string> warnings_;
    std::uint64_t population_ = 0;
    std::int64_t current_day_ = 0;
    std::uint64_t resync_interval_;
    std::uint64_t moves_since_resync_ = 0;
    std::uint64_t next_case_id_ = 0;
};

// The hypothesis side of the posterior: the config list, log P(i | release)
// per config, and the log prior of release itself.
struct HypothesisSpace {
    std::vector<model::InterfaceConfig> configs;
    std::vector<double> log_prior_given_release;  // -inf where impossible
    double log_p_release = 0.0;
    double log_p_no_release = 0.0;
};

HypothesisSpace make_hypothesis_space(const model::PersonModel& m, const model::GlobalEvidence& g);

struct PosteriorResult {
    double p_release = 0.0;
    double log_lik_release = 0.0;     // log P(e | release)
    double log_lik_no_release = 0.0;  // log P(e | no release)

    // given release; empty when release is impossible
    std::vector<double> time_marginal;      // today, yesterday, day_before
    std::vector<double> location_marginal;  // per zip
    std::vector<double> angle_marginal;     // 8 compass angles; empty when not modeled

    model::ReleaseTime map_time = model::ReleaseTime::Never;
    int map_location = -1;
    int map_angle = -1;
};

// P(release | e, g) over the config space, log-sum-exp in log space.
PosteriorResult outbreak_posterior(const EquivalenceClassTable& table, const HypothesisSpace& h);

// Table wired to a person model's likelihoods. The model must outlive it.
EquivalenceClassTable make_table(const model::PersonModel& m, const std::vector<CensusCell>& census,
                                 std::uint64_t population_size, std::int64_t start_day = 0,
                                 std::uint64_t resync_interval = 10000);

}  // namespace bnsurv::engine
