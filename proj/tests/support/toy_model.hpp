#pragma once

#include <array>
#include <vector>

#include "bn/inference.hpp"
#include "bn/network.hpp"
#include "engine/table.hpp"
#include "model/outbreak.hpp"
#include "model/person.hpp"
#include "util/rng.hpp"

namespace bnsurv::test {

struct ToyVarIds {
    int home = -1, age = -1, gender = -1, sick = -1, adm = -1, resp = -1;
};

// A small randomized analogue of the full model: a 6-node person subnetwork
// hanging off 2-state release / 4-state time / 3-state location, over a
// 2-zip, 2-age region. Small enough that the monolithic multi-person joint
// can be enumerated outright, which is what the engine's decomposition is
// checked against.
struct ToyModel {
    double p_release = 0.0;
    std::array<double, 3> time_prior{};  // given release: 1..3 days back
    std::array<double, 2> loc_prior{};   // given release, per zip

    std::vector<double> zip_prior;                  // 2
    std::vector<std::vector<double>> age_rows;      // per home zip
    std::vector<std::vector<double>> gender_rows;   // per home zip
    std::vector<std::vector<double>> sick_rows;     // time x location x home
    std::vector<std::vector<double>> adm_rows;      // per sick state
    std::vector<std::vector<double>> resp_rows;     // per sick state

    model::ClassShape shape{2, 2};
    std::vector<model::InterfaceConfig> configs;  // no-release + 3 times x 2 zips

    // standalone person network with flat placeholder priors on time/location
    bn::Network person;
    int v_time = -1, v_loc = -1;
    ToyVarIds ids;
};

ToyModel make_toy_model(Rng& rng);

// Maps one person's observables onto network evidence. Demographics and the
// admission day are points; respiratory findings for earlier-day admissions
// become state masks so both evidence kinds get exercised.
void add_person_evidence(bn::Evidence& e, const ToyVarIds& ids,
                         const model::PersonEvidence& ev);

// Per-config person likelihood from the standalone net: joint over the
// interface roots divided by their placeholder priors. Captures t by
// pointer; t must outlive the returned callable.
engine::EquivalenceClassTable::LikelihoodSource toy_likelihood_source(const ToyModel& t);

engine::HypothesisSpace toy_hypothesis_space(const ToyModel& t);

// The equivalent single network over n persons: shared release, time, and
// location, every person's subnetwork duplicated under p{i}_ prefixes.
bn::Network toy_monolithic(const ToyModel& t, int n_persons);

// Variable ids of person i's nodes in the monolithic network.
ToyVarIds toy_monolithic_ids(const bn::Network& mono, int person);

}  // namespace bnsurv::test
