#pragma once

#include <array>
#include <string>
#include <vector>

#include "bn/network.hpp"
#include "spatial/exposure.hpp"

namespace bnsurv::model {

enum class Variant { NonSpatial, Spatial };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Priors over the release hypothesis space: the target itself, then time,
// location, and angle given that a release happened.
struct OutbreakPriors {
    double p_release = 0.001;
    std::array<double, 3> time_given_release = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    std::vector<double> location_given_release;  // per zip, in declared order
    std::array<double, 8> angle_given_release = {0.125, 0.125, 0.125, 0.125,
                                                 0.125, 0.125, 0.125, 0.125};
};

// Everything the person model is built from: region and demographics, the
// background-disease path, the anthrax path, exposure geometry, and the
// hypothesis priors. Serialized as a single parameter file.
struct PersonModelParams {
    Variant variant = Variant::NonSpatial;
    int age_deciles = 9;
    std::vector<std::string> zips;  // home-zip domain and release-location list

    // demographic tables (bn-format sections in the file)
    std::vector<double> zip_prior;                      // |zips|
    std::vector<std::vector<double>> age_given_zip;     // |zips| x age_deciles
    std::vector<std::vector<double>> gender_given_zip;  // |zips| x 2, (female, male)

    // background ED-disease path
    double incidence_per_person_day = 4.6916e-4;  // onset rate of an ED-worthy disease
    double resp_given_other = 0.45;               // fraction presenting respiratory
    std::vector<double> incidence_age_factor;     // optional, |ages|; default flat
    std::array<double, 2> incidence_gender_factor = {1.0, 1.0};
    std::array<double, 3> other_adm_lag = {0.5, 0.3, 0.15};  // ED arrival k days after onset

    // anthrax path
    double attack_rate = 0.004;  // infection probability when exposed
    std::array<double, 3> anthrax_resp_lag = {0.5, 0.35, 0.12};
    std::array<double, 3> anthrax_adm_lag = {0.45, 0.35, 0.15};

    // spatial geometry; centroids are carried here after loading so spatial
    // builds are self-contained
    spatial::ExposureParams exposure;
    spatial::CentroidMap centroids;

    OutbreakPriors priors;

    // optional richer global subnetwork; when empty the global net is the
    // single release variable with the prior above
    std::vector<bn::VariableSpec> global_vars;
    std::vector<bn::CptSpec> global_cpts;

    int zip_index(const std::string& zip) const;  // -1 if absent
};

// Consistency checks shared by parse and programmatic construction.
void validate_params(const PersonModelParams& p);

std::string serialize_params(const PersonModelParams& p);
PersonModelParams parse_params(const std::string& text);
PersonModelParams load_params(const std::string& path);
void save_params(const std::string& path, const PersonModelParams& p);

// Uniform demographics and flat factors for a given region; the starting
// point for tests and the population synthesizer.
PersonModelParams default_params(const std::vector<std::string>& zips, Variant variant);

}  // namespace bnsurv::model
