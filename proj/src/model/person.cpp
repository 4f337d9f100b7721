#include "model/person.hpp"

#include <cmath>

#include "util/error.hpp"

namespace bnsurv::model {

int triple_index_from_mask(int mask) {
    switch (mask) {
        case 0: return 0;
        case 1: return 1;
        case 3: return 2;
        case 7: return 3;
    }
    return -1;
}

int triple_from_label(const std::string& label) {
    for (int i = 0; i < 4; ++i)
        if (label == kTripleLabel[i]) return i;
    fail(ErrorCode::UnknownState, "no day triple '" + label + "'");
}

int or_combine(int a, int b) {
    return triple_index_from_mask(kTripleMask[a] | kTripleMask[b]);
}

int triple_since(int days_back) {
    return days_back + 1;  // 0 -> AAI, 1 -> AII, 2 -> III
}

const char* admission_day_name(AdmissionDay d) {
    switch (d) {
        case AdmissionDay::Never: return "never";
        case AdmissionDay::Today: return "today";
        case AdmissionDay::Yesterday: return "yesterday";
        case AdmissionDay::DayBefore: return "day_before";
    }
    return "?";
}

const char* resp_obs_name(RespObs r) {
    switch (r) {
        case RespObs::Unknown: return "unknown";
        case RespObs::True: return "true";
        case RespObs::False: return "false";
    }
    return "?";
}

namespace {

const std::vector<std::string> kTripleStates = {"AAA", "AAI", "AII", "III"};

// Distribution over monotone triples for a condition that set in `onset_back`
// days ago and shows after a lag drawn from `lag_probs`; remaining mass means
// it has not shown yet.
std::vector<double> lagged_triple_row(int onset_back, const std::array<double, 3>& lag_probs) {
    std::vector<double> row(4, 0.0);
    double used = 0.0;
    for (int lag = 0; lag <= onset_back; ++lag) {
        row[triple_since(onset_back - lag)] += lag_probs[lag];
        used += lag_probs[lag];
    }
    row[0] = 1.0 - used;
    return row;
}

}  // namespace

PersonModel build_person_model(const PersonModelParams& params, Variant variant) {
    return PersonModel(params, variant);
}

PersonModel::PersonModel(PersonModelParams params, Variant variant)
    : params_(std::move(params)), variant_(variant) {
    validate_params(params_);
    const int nz = static_cast<int>(params_.zips.size());
    const int na = params_.age_deciles;
    const bool spatial = variant_ == Variant::Spatial;
    if (spatial && params_.centroids.empty())
        fail(ErrorCode::MissingCentroid, "spatial model needs zip centroids");

    std::vector<bn::VariableSpec> vars;
    std::vector<bn::CptSpec> cpts;

    vars.push_back({"home_zip", params_.zips});
    cpts.push_back({"home_zip", {}, {params_.zip_prior}});

    std::vector<std::string> age_states;
    for (int a = 0; a < na; ++a) age_states.push_back("d" + std::to_string(a));
    vars.push_back({"age_decile", age_states});
    cpts.push_back({"age_decile", {"home_zip"}, params_.age_given_zip});

    vars.push_back({"gender", {"female", "male"}});
    cpts.push_back({"gender", {"home_zip"}, params_.gender_given_zip});

    // Interface roots carry flat placeholder priors; every likelihood this
    // model reports conditions on them, so the placeholder cancels.
    vars.push_back({"time_of_release", {"never", "today", "yesterday", "day_before"}});
    cpts.push_back({"time_of_release", {}, {{0.25, 0.25, 0.25, 0.25}}});

    std::vector<std::string> loc_states = {"nowhere"};
    for (const auto& z : params_.zips) loc_states.push_back(z);
    vars.push_back({"location_of_release", loc_states});
    cpts.push_back({"location_of_release", {},
                    {std::vector<double>(nz + 1, 1.0 / static_cast<double>(nz + 1))}});

    if (spatial) {
        std::vector<std::string> angle_states(spatial::kAngleNames,
                                              spatial::kAngleNames + 8);
        vars.push_back({"angle_of_release", angle_states});
        cpts.push_back({"angle_of_release", {}, {std::vector<double>(8, 0.125)}});

        bn::CptSpec exposed{"exposed_to_anthrax",
                            {"location_of_release", "angle_of_release", "home_zip"},
                            {}};
        exposed.rows.reserve(static_cast<std::size_t>(nz + 1) * 8 * nz);
        for (int ls = 0; ls <= nz; ++ls)
            for (int a = 0; a < 8; ++a)
                for (int h = 0; h < nz; ++h) {
                    double p = ls == 0 ? 0.0
                                       : spatial::exposure_probability(
                                             params_.zips[ls - 1], a, params_.zips[h],
                                             params_.centroids, params_.exposure);
                    exposed.rows.push_back({1.0 - p, p});
                }
        vars.push_back({"exposed_to_anthrax", {"false", "true"}});
        cpts.push_back(std::move(exposed));

        bn::CptSpec infection{"anthrax_infection", {"time_of_release", "exposed_to_anthrax"},
                              {}};
        for (int t = 0; t < 4; ++t)
            for (int x = 0; x < 2; ++x) {
                std::vector<double> row(4, 0.0);
                if (t == 0 || x == 0) {
                    row[0] = 1.0;
                } else {
                    row[triple_since(t - 1)] = params_.attack_rate;
                    row[0] = 1.0 - params_.attack_rate;
                }
                infection.rows.push_back(std::move(row));
            }
        vars.push_back({"anthrax_infection", kTripleStates});
        cpts.push_back(std::move(infection));
    } else {
        bn::CptSpec infection{"anthrax_infection",
                              {"time_of_release", "location_of_release", "home_zip"},
                              {}};
        infection.rows.reserve(static_cast<std::size_t>(4) * (nz + 1) * nz);
        for (int t = 0; t < 4; ++t)
            for (int ls = 0; ls <= nz; ++ls)
                for (int h = 0; h < nz; ++h) {
                    std::vector<double> row(4, 0.0);
                    bool hit = t > 0 && ls > 0 && ls - 1 == h &&
                               params_.zips[h] != spatial::kCatchAllZip;
                    if (hit) {
                        row[triple_since(t - 1)] = params_.attack_rate;
                        row[0] = 1.0 - params_.attack_rate;
                    } else {
                        row[0] = 1.0;
                    }
                    infection.rows.push_back(std::move(row));
                }
        vars.push_back({"anthrax_infection", kTripleStates});
        cpts.push_back(std::move(infection));
    }

    {
        bn::CptSpec other{"other_ed_disease", {"age_decile", "gender"}, {}};
        for (int a = 0; a < na; ++a)
            for (int g = 0; g < 2; ++g) {
                double fa = params_.incidence_age_factor.empty()
                                ? 1.0
                                : params_.incidence_age_factor[a];
                double d = params_.incidence_per_person_day * fa *
                           params_.incidence_gender_factor[g];
                other.rows.push_back({1.0 - 3.0 * d, d, d, d});
            }
        vars.push_back({"other_ed_disease", kTripleStates});
        cpts.push_back(std::move(other));
    }

    {
        bn::CptSpec resp_a{"respiratory_from_anthrax", {"anthrax_infection"}, {}};
        resp_a.rows.push_back({1.0, 0.0, 0.0, 0.0});
        for (int j = 1; j < 4; ++j)
            resp_a.rows.push_back(lagged_triple_row(j - 1, params_.anthrax_resp_lag));
        vars.push_back({"respiratory_from_anthrax", kTripleStates});
        cpts.push_back(std::move(resp_a));
    }

    {
        // Whether the background disease presents as respiratory is a property
        // of the disease, so the symptom triple tracks the disease triple.
        bn::CptSpec resp_o{"respiratory_from_other", {"other_ed_disease"}, {}};
        resp_o.rows.push_back({1.0, 0.0, 0.0, 0.0});
        for (int j = 1; j < 4; ++j) {
            std::vector<double> row(4, 0.0);
            row[j] = params_.resp_given_other;
            row[0] = 1.0 - params_.resp_given_other;
            resp_o.rows.push_back(std::move(row));
        }
        vars.push_back({"respiratory_from_other", kTripleStates});
        cpts.push_back(std::move(resp_o));
    }

    {
        bn::CptSpec cpt{"respiratory_symptoms",
                        {"respiratory_from_anthrax", "respiratory_from_other"},
                        {}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::vector<double> row(4, 0.0);
                row[or_combine(i, j)] = 1.0;
                cpt.rows.push_back(std::move(row));
            }
        vars.push_back({"respiratory_symptoms", kTripleStates});
        cpts.push_back(std::move(cpt));
    }

    {
        bn::CptSpec adm_a{"ed_admission_due_to_anthrax", {"anthrax_infection"}, {}};
        adm_a.rows.push_back({1.0, 0.0, 0.0, 0.0});
        for (int j = 1; j < 4; ++j)
            adm_a.rows.push_back(lagged_triple_row(j - 1, params_.anthrax_adm_lag));
        vars.push_back({"ed_admission_due_to_anthrax", kTripleStates});
        cpts.push_back(std::move(adm_a));

        bn::CptSpec adm_o{"ed_admission_due_to_other", {"other_ed_disease"}, {}};
        adm_o.rows.push_back({1.0, 0.0, 0.0, 0.0});
        for (int j = 1; j < 4; ++j)
            adm_o.rows.push_back(lagged_triple_row(j - 1, params_.other_adm_lag));
        vars.push_back({"ed_admission_due_to_other", kTripleStates});
        cpts.push_back(std::move(adm_o));

        bn::CptSpec adm{"ed_admission",
                        {"ed_admission_due_to_anthrax", "ed_admission_due_to_other"},
                        {}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::vector<double> row(4, 0.0);
                row[or_combine(i, j)] = 1.0;
                adm.rows.push_back(std::move(row));
            }
        vars.push_back({"ed_admission", kTripleStates});
        cpts.push_back(std::move(adm));
    }

    {
        // Observable only for a same-day admission; past admissions read
        // unknown here and carry their observation on respiratory_symptoms.
        bn::CptSpec rwa{"respiratory_when_admitted",
                        {"respiratory_symptoms", "ed_admission"},
                        {}};
        for (int s = 0; s < 4; ++s)
            for (int a = 0; a < 4; ++a) {
                std::vector<double> row(3, 0.0);
                if (a == 1)
                    row[s != 0 ? 1 : 2] = 1.0;
                else
                    row[0] = 1.0;
                rwa.rows.push_back(std::move(row));
            }
        vars.push_back({"respiratory_when_admitted", {"unknown", "true", "false"}});
        cpts.push_back(std::move(rwa));
    }

    net_ = bn::build_network(vars, cpts);
    global_net_ = build_global_network(params_);
    configs_ = enumerate_interface_configs(params_, variant_);

    v_home = net_.var_id("home_zip");
    v_age = net_.var_id("age_decile");
    v_gender = net_.var_id("gender");
    v_time = net_.var_id("time_of_release");
    v_location = net_.var_id("location_of_release");
    v_angle = net_.var_id("angle_of_release");
    v_exposed = net_.var_id("exposed_to_anthrax");
    v_infection = net_.var_id("anthrax_infection");
    v_other = net_.var_id("other_ed_disease");
    v_resp_a = net_.var_id("respiratory_from_anthrax");
    v_resp_o = net_.var_id("respiratory_from_other");
    v_resp_sym = net_.var_id("respiratory_symptoms");
    v_adm_a = net_.var_id("ed_admission_due_to_anthrax");
    v_adm_o = net_.var_id("ed_admission_due_to_other");
    v_adm = net_.var_id("ed_admission");
    v_rwa = net_.var_id("respiratory_when_admitted");

    dummy_interface_prior_ = 0.25 * (1.0 / static_cast<double>(nz + 1));
    if (spatial) dummy_interface_prior_ *= 0.125;

    config_flat_index_.reserve(configs_.size());
    for (const auto& c : configs_) {
        std::size_t t = static_cast<std::size_t>(c.time);
        std::size_t ls = c.release ? 1 + c.location : 0;
        std::size_t idx = t * (nz + 1) + ls;
        if (spatial) idx = idx * 8 + (c.release ? c.angle : 0);
        config_flat_index_.push_back(idx);
    }
}

std::uint64_t ClassShape::space_size() const {
    return static_cast<std::uint64_t>(num_zips) * num_ages * 2 * 4 * 3;
}

ClassKey ClassShape::key_of(const PersonEvidence& e) const {
    if (e.zip < 0 || e.zip >= num_zips || e.age < 0 || e.age >= num_ages ||
        e.gender < 0 || e.gender > 1)
        fail(ErrorCode::InvalidArgument, "person evidence indices out of range");
    if (e.admission == AdmissionDay::Never && e.resp != RespObs::Unknown)
        fail(ErrorCode::InvalidArgument,
             "respiratory observation requires an admission");
    std::uint32_t k = static_cast<std::uint32_t>(e.zip);
    k = k * num_ages + e.age;
    k = k * 2 + e.gender;
    k = k * 4 + static_cast<int>(e.admission);
    k = k * 3 + static_cast<int>(e.resp);
    return k;
}

PersonEvidence ClassShape::evidence_of(ClassKey key) const {
    PersonEvidence e;
    e.resp = static_cast<RespObs>(key % 3);
    key /= 3;
    e.admission = static_cast<AdmissionDay>(key % 4);
    key /= 4;
    e.gender = static_cast<int>(key % 2);
    key /= 2;
    e.age = static_cast<int>(key % num_ages);
    key /= num_ages;
    e.zip = static_cast<int>(key);
    if (e.zip >= num_zips) fail(ErrorCode::InvalidArgument, "class key out of range");
    return e;
}

ClassKey ClassShape::background_key(int zip, int age, int gender) const {
    return key_of({zip, age, gender, AdmissionDay::Never, RespObs::Unknown});
}

ClassKey PersonModel::key_of(const PersonEvidence& e) const { return shape().key_of(e); }

PersonEvidence PersonModel::evidence_of(ClassKey key) const { return shape().evidence_of(key); }

ClassKey PersonModel::background_key(int zip, int age, int gender) const {
    return shape().background_key(zip, age, gender);
}

bn::Evidence PersonModel::translate(const PersonEvidence& e) const {
    bn::Evidence ev;
    ev.set(v_home, e.zip);
    ev.set(v_age, e.age);
    ev.set(v_gender, e.gender);
    ev.set(v_adm, static_cast<int>(e.admission));
    switch (e.admission) {
        case AdmissionDay::Never:
            if (e.resp != RespObs::Unknown)
                fail(ErrorCode::InvalidArgument,
                     "respiratory observation requires an admission");
            break;
        case AdmissionDay::Today:
            if (e.resp != RespObs::Unknown)
                ev.set(v_rwa, e.resp == RespObs::True ? 1 : 2);
            break;
        case AdmissionDay::Yesterday:
            if (e.resp == RespObs::True) ev.allow(v_resp_sym, {0, 0, 1, 1});
            if (e.resp == RespObs::False) ev.allow(v_resp_sym, {1, 1, 0, 0});
            break;
        case AdmissionDay::DayBefore:
            if (e.resp == RespObs::True) ev.allow(v_resp_sym, {0, 0, 0, 1});
            if (e.resp == RespObs::False) ev.allow(v_resp_sym, {1, 1, 1, 0});
            break;
    }
    return ev;
}

std::vector<double> PersonModel::likelihood_vector(const PersonEvidence& e) const {
    std::vector<int> targets = {v_time, v_location};
    if (variant_ == Variant::Spatial) targets.push_back(v_angle);
    bn::Factor f = bn::query_factor(net_, targets, translate(e), opts_);
    std::vector<double> out(configs_.size());
    for (std::size_t k = 0; k < configs_.size(); ++k)
        out[k] = f.values[config_flat_index_[k]] / dummy_interface_prior_;
    return out;
}

double PersonModel::person_likelihood(const PersonEvidence& e, std::size_t config_index) const {
    if (config_index >= configs_.size())
        fail(ErrorCode::InvalidArgument, "config index out of range");
    return likelihood_vector(e)[config_index];
}

std::pair<int, int> PersonModel::sample_demographics(const std::string& zip, Rng& rng) const {
    int z = params_.zip_index(zip);
    if (z < 0) fail(ErrorCode::UnknownZip, "zip " + zip + " is not in the model");
    bn::Evidence e;
    e.set(v_home, z);
    e.set(v_adm, 1);
    e.set(v_rwa, 1);
    auto drawn = bn::sample_conditional(net_, e, {v_age, v_gender}, rng, opts_);
    return {drawn[0], drawn[1]};
}

}  // namespace bnsurv::model
