#include "engine/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "util/error.hpp"

namespace bnsurv::engine {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

}  // namespace

void NeumaierSum::add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

EquivalenceClassTable::EquivalenceClassTable(ClassShape shape, std::size_t config_count,
                                             LikelihoodSource source,
                                             const std::vector<CensusCell>& census,
                                             std::uint64_t population_size, std::int64_t start_day,
                                             std::uint64_t resync_interval)
    : shape_(shape),
      config_count_(config_count),
      source_(std::move(source)),
      s_(config_count),
      zeros_(config_count, 0),
      current_day_(start_day),
      resync_interval_(resync_interval) {
    if (config_count_ == 0) fail(ErrorCode::InvalidArgument, "no interface configs");
    std::uint64_t total = 0;
    for (const auto& cell : census) {
        if (cell.count < 0) fail(ErrorCode::NegativeCount, "negative census count");
        if (cell.count == 0) continue;
        counts_[shape_.background_key(cell.zip, cell.age, cell.gender)] += cell.count;
        total += static_cast<std::uint64_t>(cell.count);
    }
    if (total != population_size)
        fail(ErrorCode::TotalMismatch, "census total " + std::to_string(total) +
                                           " != population size " +
                                           std::to_string(population_size));
    population_ = total;
    for (const auto& [key, n] : counts_) accumulate(class_log_likelihood(key), n);
}

std::int64_t EquivalenceClassTable::count_of(ClassKey key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
}

const std::vector<double>& EquivalenceClassTable::class_log_likelihood(ClassKey key) {
    auto it = class_loglik_.find(key);
    if (it != class_loglik_.end()) return it->second;
    std::vector<double> lik = source_(shape_.evidence_of(key));
    if (lik.size() != config_count_)
        fail(ErrorCode::Internal, "likelihood source returned wrong config count");
    for (double& v : lik) {
        if (std::isnan(v) || v < 0.0)
            fail(ErrorCode::Internal, "likelihood source returned an invalid probability");
        v = v == 0.0 ? kNegInf : std::log(v);
    }
    return class_loglik_.emplace(key, std::move(lik)).first->second;
}

void EquivalenceClassTable::accumulate(const std::vector<double>& loglik, std::int64_t n) {
    for (std::size_t i = 0; i < config_count_; ++i) {
        if (loglik[i] == kNegInf)
            zeros_[i] += n;
        else
            s_[i].add(static_cast<double>(n) * loglik[i]);
    }
}

void EquivalenceClassTable::move_person(ClassKey from, ClassKey to) {
    const auto& from_ll = class_log_likelihood(from);
    const auto& to_ll = class_log_likelihood(to);
    auto it = counts_.find(from);
    if (it == counts_.end() || it->second < 1)
        fail(ErrorCode::Internal, "moving a person out of an empty class");
    if (--it->second == 0) counts_.erase(it);
    ++counts_[to];
    for (std::size_t i = 0; i < config_count_; ++i) {
        if (from_ll[i] == kNegInf)
            zeros_[i] -= 1;
        else
            s_[i].add(-from_ll[i]);
        if (to_ll[i] == kNegInf)
            zeros_[i] += 1;
        else
            s_[i].add(to_ll[i]);
    }
    if (++moves_since_resync_ >= resync_interval_) resync();
}

std::optional<std::uint64_t> EquivalenceClassTable::apply_case_arrival(const PersonEvidence& e) {
    if (e.admission == model::AdmissionDay::Never)
        fail(ErrorCode::InvalidArgument, "a case arrival needs an admission day");
    ClassKey dest = shape_.key_of(e);
    ClassKey origin = shape_.background_key(e.zip, e.age, e.gender);
    if (count_of(origin) < 1) {
        warnings_.push_back("case rejected: background class exhausted for zip index " +
                            std::to_string(e.zip) + ", age " + std::to_string(e.age) +
                            ", gender " + std::to_string(e.gender));
        return std::nullopt;
    }
    move_person(origin, dest);
    std::uint64_t id = next_case_id_++;
    tracked_.push_back({id, dest, origin,
                        current_day_ - (static_cast<int>(e.admission) - 1)});
    return id;
}

void EquivalenceClassTable::advance_day(std::int64_t new_day) {
    if (new_day <= current_day_)
        fail(ErrorCode::InvalidArgument, "day rollover must move forward");
    while (current_day_ < new_day) {
        ++current_day_;
        std::size_t kept = 0;
        for (auto& c : tracked_) {
            PersonEvidence e = shape_.evidence_of(c.current);
            if (e.admission == model::AdmissionDay::DayBefore) {
                move_person(c.current, c.origin);
                continue;  // aged out, back to background
            }
            e.admission = static_cast<model::AdmissionDay>(static_cast<int>(e.admission) + 1);
            ClassKey next = shape_.key_of(e);
            move_person(c.current, next);
            c.current = next;
            tracked_[kept++] = c;
        }
        tracked_.resize(kept);
    }
}

double EquivalenceClassTable::population_log_likelihood(std::size_t config) const {
    if (config >= config_count_) fail(ErrorCode::InvalidArgument, "config index out of range");
    return zeros_[config] > 0 ? kNegInf : s_[config].value();
}

Accumulators EquivalenceClassTable::accumulators() const {
    Accumulators a;
    a.s.reserve(config_count_);
    for (const auto& n : s_) a.s.push_back(n.value());
    a.zeros = zeros_;
    return a;
}

Accumulators EquivalenceClassTable::recompute_fresh() const {
    std::vector<ClassKey> order;
    order.reserve(counts_.size());
    for (const auto& [key, n] : counts_) order.push_back(key);
    return recompute_fresh(order);
}

Accumulators EquivalenceClassTable::recompute_fresh(std::span<const ClassKey> order) const {
    std::vector<NeumaierSum> sums(config_count_);
    Accumulators a;
    a.zeros.assign(config_count_, 0);
    for (ClassKey key : order) {
        std::int64_t n = count_of(key);
        if (n <= 0) continue;
        auto it = class_loglik_.find(key);
        if (it == class_loglik_.end())
            fail(ErrorCode::Internal, "occupied class missing from the likelihood cache");
        for (std::size_t i = 0; i < config_count_; ++i) {
            if (it->second[i] == kNegInf)
                a.zeros[i] += n;
            else
                sums[i].add(static_cast<double>(n) * it->second[i]);
        }
    }
    a.s.reserve(config_count_);
    for (const auto& s : sums) a.s.push_back(s.value());
    return a;
}

void EquivalenceClassTable::resync() {
    std::vector<NeumaierSum> sums(config_count_);
    std::vector<std::int64_t> zeros(config_count_, 0);
    for (const auto& [key, n] : counts_) {
        auto it = class_loglik_.find(key);
        if (it == class_loglik_.end())
            fail(ErrorCode::Internal, "occupied class missing from the likelihood cache");
        for (std::size_t i = 0; i < config_count_; ++i) {
            if (it->second[i] == kNegInf)
                zeros[i] += n;
            else
                sums[i].add(static_cast<double>(n) * it->second[i]);
        }
    }
    s_ = std::move(sums);
    zeros_ = std::move(zeros);
    moves_since_resync_ = 0;
}

HypothesisSpace make_hypothesis_space(const model::PersonModel& m, const model::GlobalEvidence& g) {
    HypothesisSpace h;
    h.configs = m.configs();
    double py = model::global_prior(true, g, m.global_net());
    double pn = model::global_prior(false, g, m.global_net());
    h.log_p_release = py > 0.0 ? std::log(py) : kNegInf;
    h.log_p_no_release = pn > 0.0 ? std::log(pn) : kNegInf;
    h.log_prior_given_release.reserve(h.configs.size());
    for (const auto& c : h.configs) {
        double p = model::interface_prior(c, true, g, m.params().priors);
        h.log_prior_given_release.push_back(p > 0.0 ? std::log(p) : kNegInf);
    }
    return h;
}

PosteriorResult outbreak_posterior(const EquivalenceClassTable& table, const HypothesisSpace& h) {
    if (h.configs.size() != table.config_count() ||
        h.log_prior_given_release.size() != h.configs.size())
        fail(ErrorCode::InvalidArgument, "hypothesis space does not match the table");
    if (h.configs.empty() || h.configs[0].release)
        fail(ErrorCode::InvalidArgument, "config 0 must be the no-release config");

    std::vector<double> weighted(h.configs.size(), kNegInf);  // release configs only
    for (std::size_t i = 1; i < h.configs.size(); ++i) {
        if (h.log_prior_given_release[i] == kNegInf) continue;
        double pll = table.population_log_likelihood(i);
        if (pll == kNegInf) continue;
        weighted[i] = pll + h.log_prior_given_release[i];
    }

    PosteriorResult r;
    r.log_lik_no_release = table.population_log_likelihood(0);
    r.log_lik_release = log_sum_exp(weighted);
    double a_yes = r.log_lik_release + h.log_p_release;
    double a_no = r.log_lik_no_release + h.log_p_no_release;
    if (a_yes == kNegInf && a_no == kNegInf)
        fail(ErrorCode::AllConfigsImpossible, "every hypothesis has zero probability");
    double z = log_sum_exp(std::vector<double>{a_yes, a_no});
    r.p_release = a_yes == kNegInf ? 0.0 : std::exp(a_yes - z);

    if (r.log_lik_release == kNegInf) return r;

    bool any_angle = false;
    for (const auto& c : h.configs)
        if (c.angle >= 0) any_angle = true;
    int nz = 0;
    for (const auto& c : h.configs) nz = std::max(nz, c.location + 1);

    std::vector<std::vector<double>> by_time(3), by_loc(nz), by_angle(any_angle ? 8 : 0);
    for (std::size_t i = 1; i < h.configs.size(); ++i) {
        if (weighted[i] == kNegInf) continue;
        const auto& c = h.configs[i];
        by_time[static_cast<int>(c.time) - 1].push_back(weighted[i]);
        by_loc[c.location].push_back(weighted[i]);
        if (c.angle >= 0) by_angle[c.angle].push_back(weighted[i]);
    }
    auto marginal = [&](const std::vector<std::vector<double>>& groups) {
        std::vector<double> out(groups.size());
        for (std::size_t k = 0; k < groups.size(); ++k)
            out[k] = std::exp(log_sum_exp(groups[k]) - r.log_lik_release);
        return out;
    };
    r.time_marginal = marginal(by_time);
    r.location_marginal = marginal(by_loc);
    if (any_angle) r.angle_marginal = marginal(by_angle);

    auto argmax = [](const std::vector<double>& xs) {
        int best = -1;
        for (std::size_t k = 0; k < xs.size(); ++k)
            if (best < 0 || xs[k] > xs[best]) best = static_cast<int>(k);
        return best;
    };
    r.map_time = static_cast<model::ReleaseTime>(argmax(r.time_marginal) + 1);
    r.map_location = argmax(r.location_marginal);
    if (any_angle) r.map_angle = argmax(r.angle_marginal);
    return r;
}

EquivalenceClassTable make_table(const model::PersonModel& m, const std::vector<CensusCell>& census,
                                 std::uint64_t population_size, std::int64_t start_day,
                                 std::uint64_t resync_interval) {
    for (const auto& cell : census)
        if (cell.zip < 0 || cell.zip >= m.num_zips() || cell.age < 0 || cell.age >= m.num_ages() ||
            cell.gender < 0 || cell.gender > 1)
            fail(ErrorCode::InvalidArgument, "census cell outside the model's index space");
    return EquivalenceClassTable(
        m.shape(), m.config_count(),
        [&m](const PersonEvidence& e) { return m.likelihood_vector(e); }, census, population_size,
        start_day, resync_interval);
}

}  // namespace bnsurv::engine
