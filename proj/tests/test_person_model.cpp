#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "model/outbreak.hpp"
#include "model/params.hpp"
#include "model/person.hpp"
#include "spatial/exposure.hpp"
#include "support/enum_oracle.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace bnsurv;
using namespace bnsurv::model;

namespace {

// Small region: two placed zips plus the catch-all, three age deciles,
// so exhaustive checks over evidence and configs stay fast.
PersonModelParams small_params(Variant variant) {
    PersonModelParams p = default_params({"z1", "z2", spatial::kCatchAllZip}, variant);
    p.age_deciles = 3;
    std::vector<double> age_row = {0.5, 0.3, 0.2};
    p.age_given_zip.assign(3, age_row);
    p.gender_given_zip.assign(3, {0.55, 0.45});
    p.zip_prior = {0.3, 0.45, 0.25};
    p.priors.location_given_release = {0.4, 0.4, 0.2};
    if (variant == Variant::Spatial) {
        p.centroids = spatial::CentroidMap({{"z1", 40.44, -80.00}, {"z2", 40.47, -80.00}});
    }
    return p;
}

// P(translated evidence | config) straight off the network by pinning the
// interface variables and enumerating, the quantity likelihood_vector must
// reproduce for every config at once.
double oracle_likelihood(const PersonModel& m, const PersonEvidence& ev,
                         const InterfaceConfig& c) {
    bn::Evidence e = m.translate(ev);
    bn::Evidence pinned = e;
    pinned.set(m.v_time, static_cast<int>(c.time));
    pinned.set(m.v_location, 1 + c.location);
    double p_interface = 0.25 * (1.0 / (1.0 + m.num_zips()));
    if (m.variant() == Variant::Spatial) {
        pinned.set(m.v_angle, c.release ? c.angle : 0);
        p_interface *= 0.125;
    }
    return test::enum_evidence_probability(m.net(), pinned) / p_interface;
}

// Relative agreement, with an absolute floor for true zeros.
void check_close(double got, double want, double rel) {
    if (want == 0.0) {
        CHECK(std::abs(got) < 1e-300);
    } else {
        CHECK(std::abs(got - want) <= rel * std::abs(want));
    }
}

std::vector<PersonEvidence> sample_evidence_grid(const PersonModel& m) {
    std::vector<PersonEvidence> out;
    for (int zip = 0; zip < m.num_zips(); ++zip) {
        out.push_back({zip, 0, 0, AdmissionDay::Never, RespObs::Unknown});
        out.push_back({zip, 1, 1, AdmissionDay::Today, RespObs::True});
        out.push_back({zip, 2, 0, AdmissionDay::Today, RespObs::False});
        out.push_back({zip, 0, 1, AdmissionDay::Today, RespObs::Unknown});
        out.push_back({zip, 1, 0, AdmissionDay::Yesterday, RespObs::True});
        out.push_back({zip, 2, 1, AdmissionDay::Yesterday, RespObs::False});
        out.push_back({zip, 0, 0, AdmissionDay::DayBefore, RespObs::True});
        out.push_back({zip, 1, 1, AdmissionDay::DayBefore, RespObs::Unknown});
    }
    return out;
}

}  // namespace

TEST_CASE("day-triple helpers") {
    CHECK(or_combine(triple_from_label("AAA"), triple_from_label("AII")) ==
          triple_from_label("AII"));
    CHECK(or_combine(triple_from_label("AAI"), triple_from_label("III")) ==
          triple_from_label("III"));
    CHECK(or_combine(triple_from_label("AAA"), triple_from_label("AAA")) ==
          triple_from_label("AAA"));
    CHECK(or_combine(triple_from_label("AAI"), triple_from_label("AII")) ==
          triple_from_label("AII"));
    CHECK(triple_index_from_mask(0) == 0);
    CHECK(triple_index_from_mask(1) == 1);
    CHECK(triple_index_from_mask(3) == 2);
    CHECK(triple_index_from_mask(7) == 3);
    CHECK(triple_index_from_mask(2) == -1);
    CHECK(triple_index_from_mask(5) == -1);
}

TEST_CASE("nonspatial build has 14 variables, spatial 16") {
    auto ns = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    CHECK(ns.net().size() == 14);
    auto sp = build_person_model(small_params(Variant::Spatial), Variant::Spatial);
    CHECK(sp.net().size() == 16);
    CHECK(sp.net().var_id("exposed_to_anthrax") >= 0);
    int angle = sp.net().var_id("angle_of_release");
    REQUIRE(angle >= 0);
    CHECK(sp.net().card(angle) == 8);
    CHECK(ns.net().var_id("angle_of_release") == -1);
}

TEST_CASE("monotone onset is the whole infection state space") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    int v = m.net().var_id("anthrax_infection");
    REQUIRE(v >= 0);
    const auto& states = m.net().variables[static_cast<std::size_t>(v)].states;
    CHECK(states == std::vector<std::string>{"AAA", "AAI", "AII", "III"});
}

TEST_CASE("no release means no infection") {
    for (auto variant : {Variant::NonSpatial, Variant::Spatial}) {
        auto m = build_person_model(small_params(variant), variant);
        bn::Evidence e;
        e.set(m.v_time, 0);      // never
        e.set(m.v_location, 0);  // nowhere
        if (variant == Variant::Spatial) e.set(m.v_angle, 0);
        auto post = bn::posterior_marginal(m.net(), e, m.v_infection);
        CHECK(post[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("or nodes are the deterministic or of their parents") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    for (auto [child, pa, pb] :
         {std::tuple{m.v_resp_sym, m.v_resp_a, m.v_resp_o},
          std::tuple{m.v_adm, m.v_adm_a, m.v_adm_o}}) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                bn::Evidence e;
                e.set(pa, a);
                e.set(pb, b);
                auto post = bn::posterior_marginal(m.net(), e, child);
                for (int s = 0; s < 4; ++s)
                    CHECK(post[static_cast<std::size_t>(s)] ==
                          doctest::Approx(s == or_combine(a, b) ? 1.0 : 0.0));
            }
    }
}

TEST_CASE("respiratory finding is unknown unless admitted today") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    for (int adm = 0; adm < 4; ++adm) {
        bn::Evidence e;
        e.set(m.v_adm, adm);
        auto post = bn::posterior_marginal(m.net(), e, m.v_rwa);
        if (adm == 1) {
            CHECK(post[0] == doctest::Approx(0.0));  // today-admissions always resolve
        } else {
            CHECK(post[0] == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("spatial exposure rows equal the exposure function") {
    auto p = small_params(Variant::Spatial);
    auto m = build_person_model(p, Variant::Spatial);
    for (int loc = 0; loc < m.num_zips(); ++loc)
        for (int angle = 0; angle < 8; ++angle)
            for (int home = 0; home < m.num_zips(); ++home) {
                bn::Evidence e;
                e.set(m.v_location, 1 + loc);
                e.set(m.v_angle, angle);
                e.set(m.v_home, home);
                auto post = bn::posterior_marginal(m.net(), e, m.v_exposed);
                double want = spatial::exposure_probability(
                    p.zips[static_cast<std::size_t>(loc)], angle,
                    p.zips[static_cast<std::size_t>(home)], p.centroids, p.exposure);
                check_close(post[1], want, 1e-12);
            }
}

TEST_CASE("likelihood vector matches per-config enumeration") {
    for (auto variant : {Variant::NonSpatial, Variant::Spatial}) {
        auto m = build_person_model(small_params(variant), variant);
        for (const auto& ev : sample_evidence_grid(m)) {
            auto vec = m.likelihood_vector(ev);
            REQUIRE(vec.size() == m.config_count());
            for (std::size_t i = 0; i < m.config_count(); ++i) {
                double want = oracle_likelihood(m, ev, m.configs()[i]);
                check_close(vec[i], want, 1e-9);
                CHECK(m.person_likelihood(ev, i) == vec[i]);
            }
        }
    }
}

TEST_CASE("background person factors into demographics times quiet-path mass") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    const auto& p = m.params();
    PersonEvidence ev{1, 2, 0, AdmissionDay::Never, RespObs::Unknown};
    double got = m.person_likelihood(ev, 0);
    // Under no release the anthrax path is inert, so the likelihood is the
    // demographic mass times P(admission triple = AAA | other path).
    bn::Evidence e;
    e.set(m.v_home, 1);
    e.set(m.v_time, 0);
    e.set(m.v_location, 0);
    auto adm = bn::posterior_marginal(m.net(), e, m.v_adm);
    double demo = p.zip_prior[1] * p.age_given_zip[1][2] * p.gender_given_zip[1][0];
    CHECK(got == doctest::Approx(demo * adm[0]).epsilon(1e-9));
}

TEST_CASE("class keys are a bijection over representable states") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    std::vector<bool> seen(m.class_space_size(), false);
    for (int zip = 0; zip < m.num_zips(); ++zip)
        for (int age = 0; age < m.num_ages(); ++age)
            for (int gender = 0; gender < 2; ++gender)
                for (int adm = 0; adm < 4; ++adm)
                    for (int resp = 0; resp < 3; ++resp) {
                        PersonEvidence ev{zip, age, gender, static_cast<AdmissionDay>(adm),
                                          static_cast<RespObs>(resp)};
                        // a finding without an admission has a code but no state
                        if (ev.admission == AdmissionDay::Never && ev.resp != RespObs::Unknown) {
                            try {
                                m.key_of(ev);
                                CHECK(false);
                            } catch (const Error& err) {
                                CHECK(err.code() == ErrorCode::InvalidArgument);
                            }
                            continue;
                        }
                        ClassKey k = m.key_of(ev);
                        REQUIRE(k < m.class_space_size());
                        CHECK_FALSE(seen[k]);
                        seen[k] = true;
                        CHECK(m.evidence_of(k) == ev);
                    }
    CHECK(m.background_key(1, 0, 1) ==
          m.key_of({1, 0, 1, AdmissionDay::Never, RespObs::Unknown}));
}

TEST_CASE("never admitted cannot carry a respiratory finding") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    try {
        m.translate({0, 0, 0, AdmissionDay::Never, RespObs::True});
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("demographic sampling is seeded and tracks the conditional") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    Rng a(42), b(42);
    for (int i = 0; i < 20; ++i) CHECK(m.sample_demographics("z2", a) == m.sample_demographics("z2", b));

    // exact conditional of age given zip, today-admission, respiratory=true
    bn::Evidence e = m.translate({1, 0, 0, AdmissionDay::Today, RespObs::True});
    bn::Evidence cond;
    for (auto& [var, state] : e.points)
        if (var != m.v_age && var != m.v_gender) cond.set(var, state);
    cond.sets = e.sets;
    auto exact = bn::posterior_marginal(m.net(), cond, m.v_age);

    Rng rng(7);
    std::vector<double> freq(static_cast<std::size_t>(m.num_ages()), 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        auto [age, gender] = m.sample_demographics("z2", rng);
        freq[static_cast<std::size_t>(age)] += 1.0 / draws;
    }
    double tv = 0.0;
    for (std::size_t s = 0; s < freq.size(); ++s) tv += std::abs(freq[s] - exact[s]);
    CHECK(tv / 2 < 0.01);
}

TEST_CASE("unknown zip cannot be sampled") {
    auto m = build_person_model(small_params(Variant::NonSpatial), Variant::NonSpatial);
    Rng rng(1);
    try {
        m.sample_demographics("99999", rng);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UnknownZip);
    }
}

TEST_CASE("interface config enumeration counts") {
    auto ns = small_params(Variant::NonSpatial);
    std::vector<std::string> many;
    for (int i = 0; i < 101; ++i) many.push_back("z" + std::to_string(i));
    CHECK(enumerate_interface_configs(default_params(many, Variant::NonSpatial),
                                      Variant::NonSpatial)
              .size() == 304);
    CHECK(enumerate_interface_configs(default_params(many, Variant::Spatial), Variant::Spatial)
              .size() == 2425);
    auto one = default_params({"z0"}, Variant::Spatial);
    CHECK(enumerate_interface_configs(one, Variant::Spatial).size() == 25);
    for (const auto& c : enumerate_interface_configs(ns, Variant::NonSpatial))
        CHECK(config_valid(c, Variant::NonSpatial));
}

TEST_CASE("interface priors normalize and respect consistency") {
    auto p = small_params(Variant::NonSpatial);
    auto configs = enumerate_interface_configs(p, Variant::NonSpatial);
    double sum_yes = 0.0;
    for (const auto& c : configs) {
        double v = interface_prior(c, true, {}, p.priors);
        if (!c.release) CHECK(v == doctest::Approx(0.0));
        sum_yes += v;
        double v_no = interface_prior(c, false, {}, p.priors);
        CHECK(v_no == doctest::Approx(c.release ? 0.0 : 1.0));
    }
    CHECK(sum_yes == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("global prior reduces to the declared release prior") {
    auto p = small_params(Variant::NonSpatial);
    p.priors.p_release = 0.001;
    auto net = build_global_network(p);
    CHECK(global_prior(true, {}, net) == doctest::Approx(0.001));
    CHECK(global_prior(false, {}, net) == doctest::Approx(0.999));
}

TEST_CASE("global evidence conditions the release prior") {
    auto p = small_params(Variant::NonSpatial);
    p.priors.p_release = 0.001;
    // alert raises the release rate: P(release | alert) by hand via Bayes
    p.global_vars = {{"alert", {"off", "on"}}, {"anthrax_release", {"no", "yes"}}};
    p.global_cpts = {{"alert", {}, {{0.9, 0.1}}},
                     {"anthrax_release", {"alert"}, {{0.9995, 0.0005}, {0.99, 0.01}}}};
    auto net = build_global_network(p);
    CHECK(global_prior(true, {{"alert", "on"}}, net) == doctest::Approx(0.01));
    double marginal = global_prior(true, {}, net);
    CHECK(marginal == doctest::Approx(0.9 * 0.0005 + 0.1 * 0.01).epsilon(1e-9));
}
