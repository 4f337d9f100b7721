#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bn/inference.hpp"
#include "bn/network.hpp"
#include "model/outbreak.hpp"
#include "model/params.hpp"
#include "util/rng.hpp"

namespace bnsurv::model {

// Day triples encode a condition's presence over the trailing three days as a
// bitmask: bit 0 today, bit 1 yesterday, bit 2 the day before. Only monotone
// onsets are legal states, indexed 0..3 as AAA, AAI, AII, III.
inline constexpr int kTripleMask[4] = {0, 1, 3, 7};
inline constexpr const char* kTripleLabel[4] = {"AAA", "AAI", "AII", "III"};

int triple_index_from_mask(int mask);  // -1 for non-monotone masks
int triple_from_label(const std::string& label);

// Elementwise OR over days; I dominates A. Closed over the monotone states.
int or_combine(int a, int b);

// The monotone triple that has been present since `days_back` days ago.
int triple_since(int days_back);

enum class AdmissionDay { Never = 0, Today = 1, Yesterday = 2, DayBefore = 3 };
enum class RespObs { Unknown = 0, True = 1, False = 2 };

const char* admission_day_name(AdmissionDay d);
const char* resp_obs_name(RespObs r);

// One census cell in model index space.
struct CensusCell {
    int zip = 0;
    int age = 0;
    int gender = 0;
    std::int64_t count = 0;
};

// One person's observable state, in model index space.
struct PersonEvidence {
    int zip = 0;
    int age = 0;
    int gender = 0;  // 0 female, 1 male
    AdmissionDay admission = AdmissionDay::Never;
    RespObs resp = RespObs::Unknown;

    friend bool operator==(const PersonEvidence&, const PersonEvidence&) = default;
};

// Packed bijective encoding of PersonEvidence for a fixed model shape.
using ClassKey = std::uint32_t;

// The key codec. Everything that indexes classes (the streaming table, the
// tests' toy models) shares this so keys mean the same thing everywhere.
struct ClassShape {
    int num_zips = 0;
    int num_ages = 0;

    // zips * ages * 2 genders * 4 admission values * 3 respiratory values
    std::uint64_t space_size() const;
    ClassKey key_of(const PersonEvidence& e) const;
    PersonEvidence evidence_of(ClassKey key) const;
    ClassKey background_key(int zip, int age, int gender) const;

    friend bool operator==(const ClassShape&, const ClassShape&) = default;
};

// The built person network plus everything needed to evaluate evidence
// against every release hypothesis.
class PersonModel {
public:
    PersonModel(PersonModelParams params, Variant variant);

    const PersonModelParams& params() const { return params_; }
    Variant variant() const { return variant_; }
    const bn::Network& net() const { return net_; }
    const std::vector<InterfaceConfig>& configs() const { return configs_; }
    const bn::Network& global_net() const { return global_net_; }

    int num_zips() const { return static_cast<int>(params_.zips.size()); }
    int num_ages() const { return params_.age_deciles; }
    std::size_t config_count() const { return configs_.size(); }

    ClassShape shape() const { return {num_zips(), num_ages()}; }
    std::uint64_t class_space_size() const { return shape().space_size(); }

    ClassKey key_of(const PersonEvidence& e) const;
    PersonEvidence evidence_of(ClassKey key) const;
    ClassKey background_key(int zip, int age, int gender) const;

    // Network evidence for a person: demographics plus the admission triple;
    // a same-day respiratory observation lands on respiratory_when_admitted,
    // an older one on the matching day bits of respiratory_symptoms.
    bn::Evidence translate(const PersonEvidence& e) const;

    // P(e | I = i) for every config, linear space, in config order. One
    // elimination pass serves all configs: the interface variables stay free
    // and their flat dummy priors divide out.
    std::vector<double> likelihood_vector(const PersonEvidence& e) const;

    double person_likelihood(const PersonEvidence& e, std::size_t config_index) const;

    // (age, gender) for a fresh respiratory admission in the zip.
    std::pair<int, int> sample_demographics(const std::string& zip, Rng& rng) const;

    // variable ids in the built network
    int v_home, v_age, v_gender, v_time, v_location, v_angle, v_exposed, v_infection,
        v_other, v_resp_a, v_resp_o, v_resp_sym, v_adm_a, v_adm_o, v_adm, v_rwa;

private:
    PersonModelParams params_;
    Variant variant_;
    bn::Network net_;
    bn::Network global_net_;
    std::vector<InterfaceConfig> configs_;
    bn::InferenceOptions opts_;
    double dummy_interface_prior_;
    std::vector<std::size_t> config_flat_index_;
};

PersonModel build_person_model(const PersonModelParams& params, Variant variant);

}  // namespace bnsurv::model
