#include "support/toy_model.hpp"

#include <cmath>
#include <string>

#include "util/error.hpp"

namespace bnsurv::test {

namespace {

std::vector<double> random_row(Rng& rng, int n) {
    std::vector<double> row(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : row) {
        v = -std::log(1.0 - rng.uniform()) + 1e-3;
        sum += v;
    }
    for (double& v : row) v /= sum;
    return row;
}

std::vector<std::vector<double>> random_rows(Rng& rng, int rows, int n) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) out.push_back(random_row(rng, n));
    return out;
}

// Person-subnetwork specs, optionally prefixed for the monolithic build.
void append_person_specs(const ToyModel& t, const std::string& prefix,
                         std::vector<bn::VariableSpec>& vars, std::vector<bn::CptSpec>& cpts) {
    auto n = [&prefix](const char* name) { return prefix + name; };
    vars.push_back({n("home_zip"), {"z0", "z1"}});
    cpts.push_back({n("home_zip"), {}, {t.zip_prior}});
    vars.push_back({n("age"), {"a0", "a1"}});
    cpts.push_back({n("age"), {n("home_zip")}, t.age_rows});
    vars.push_back({n("gender"), {"female", "male"}});
    cpts.push_back({n("gender"), {n("home_zip")}, t.gender_rows});
    vars.push_back({n("sick"), {"well", "s1", "s2", "s3"}});
    cpts.push_back({n("sick"), {"time", "location", n("home_zip")}, t.sick_rows});
    vars.push_back({n("ed_admission"), {"none", "today", "yesterday", "day_before"}});
    cpts.push_back({n("ed_admission"), {n("sick")}, t.adm_rows});
    vars.push_back({n("resp_obs"), {"unknown", "yes", "no"}});
    cpts.push_back({n("resp_obs"), {n("sick")}, t.resp_rows});
}

ToyVarIds lookup_ids(const bn::Network& net, const std::string& prefix) {
    ToyVarIds ids;
    ids.home = net.var_id(prefix + "home_zip");
    ids.age = net.var_id(prefix + "age");
    ids.gender = net.var_id(prefix + "gender");
    ids.sick = net.var_id(prefix + "sick");
    ids.adm = net.var_id(prefix + "ed_admission");
    ids.resp = net.var_id(prefix + "resp_obs");
    return ids;
}

}  // namespace

ToyModel make_toy_model(Rng& rng) {
    ToyModel t;
    t.p_release = rng.uniform(0.01, 0.3);
    auto tp = random_row(rng, 3);
    t.time_prior = {tp[0], tp[1], tp[2]};
    auto lp = random_row(rng, 2);
    t.loc_prior = {lp[0], lp[1]};

    t.zip_prior = random_row(rng, 2);
    t.age_rows = random_rows(rng, 2, 2);
    t.gender_rows = random_rows(rng, 2, 2);
    t.sick_rows = random_rows(rng, 4 * 3 * 2, 4);
    t.adm_rows = random_rows(rng, 4, 4);
    t.resp_rows = random_rows(rng, 4, 3);

    t.configs.push_back({});
    for (int time = 1; time <= 3; ++time)
        for (int loc = 0; loc < 2; ++loc)
            t.configs.push_back({true, static_cast<model::ReleaseTime>(time), loc, -1});

    std::vector<bn::VariableSpec> vars;
    std::vector<bn::CptSpec> cpts;
    vars.push_back({"time", {"none", "d1", "d2", "d3"}});
    cpts.push_back({"time", {}, {{0.25, 0.25, 0.25, 0.25}}});
    vars.push_back({"location", {"nowhere", "z0", "z1"}});
    cpts.push_back({"location", {}, {{1.0 / 3, 1.0 / 3, 1.0 / 3}}});
    append_person_specs(t, "", vars, cpts);
    t.person = bn::build_network(vars, cpts);
    t.v_time = t.person.var_id("time");
    t.v_loc = t.person.var_id("location");
    t.ids = lookup_ids(t.person, "");
    return t;
}

void add_person_evidence(bn::Evidence& e, const ToyVarIds& ids,
                         const model::PersonEvidence& ev) {
    e.set(ids.home, ev.zip);
    e.set(ids.age, ev.age);
    e.set(ids.gender, ev.gender);
    e.set(ids.adm, static_cast<int>(ev.admission));
    if (ev.resp == model::RespObs::Unknown) return;
    if (ev.admission == model::AdmissionDay::Today) {
        e.set(ids.resp, ev.resp == model::RespObs::True ? 1 : 2);
    } else if (ev.resp == model::RespObs::True) {
        e.allow(ids.resp, {1, 1, 0});
    } else {
        e.allow(ids.resp, {1, 0, 1});
    }
}

engine::EquivalenceClassTable::LikelihoodSource toy_likelihood_source(const ToyModel& t) {
    const ToyModel* toy = &t;
    return [toy](const model::PersonEvidence& ev) {
        bn::Evidence e;
        add_person_evidence(e, toy->ids, ev);
        bn::Factor f = bn::query_factor(toy->person, {toy->v_time, toy->v_loc}, e);
        std::vector<double> out(toy->configs.size());
        for (std::size_t i = 0; i < toy->configs.size(); ++i) {
            const auto& c = toy->configs[i];
            std::size_t slot = c.release
                                   ? static_cast<std::size_t>(static_cast<int>(c.time)) * 3 +
                                         static_cast<std::size_t>(1 + c.location)
                                   : 0;
            out[i] = f.values[slot] * 12.0;  // strip the 1/4 x 1/3 placeholder priors
        }
        return out;
    };
}

engine::HypothesisSpace toy_hypothesis_space(const ToyModel& t) {
    engine::HypothesisSpace h;
    h.configs = t.configs;
    h.log_p_release = std::log(t.p_release);
    h.log_p_no_release = std::log1p(-t.p_release);
    h.log_prior_given_release.assign(t.configs.size(),
                                     -std::numeric_limits<double>::infinity());
    for (std::size_t i = 1; i < t.configs.size(); ++i) {
        const auto& c = t.configs[i];
        h.log_prior_given_release[i] =
            std::log(t.time_prior[static_cast<std::size_t>(static_cast<int>(c.time) - 1)]) +
            std::log(t.loc_prior[static_cast<std::size_t>(c.location)]);
    }
    return h;
}

bn::Network toy_monolithic(const ToyModel& t, int n_persons) {
    std::vector<bn::VariableSpec> vars;
    std::vector<bn::CptSpec> cpts;
    vars.push_back({"release", {"no", "yes"}});
    cpts.push_back({"release", {}, {{1.0 - t.p_release, t.p_release}}});
    vars.push_back({"time", {"none", "d1", "d2", "d3"}});
    cpts.push_back({"time",
                    {"release"},
                    {{1.0, 0.0, 0.0, 0.0},
                     {0.0, t.time_prior[0], t.time_prior[1], t.time_prior[2]}}});
    vars.push_back({"location", {"nowhere", "z0", "z1"}});
    cpts.push_back({"location",
                    {"release"},
                    {{1.0, 0.0, 0.0}, {0.0, t.loc_prior[0], t.loc_prior[1]}}});
    for (int i = 0; i < n_persons; ++i)
        append_person_specs(t, "p" + std::to_string(i) + "_", vars, cpts);
    return bn::build_network(vars, cpts);
}

ToyVarIds toy_monolithic_ids(const bn::Network& mono, int person) {
    ToyVarIds ids = lookup_ids(mono, "p" + std::to_string(person) + "_");
    if (ids.home < 0) fail(ErrorCode::Internal, "person prefix not found");
    return ids;
}

}  // namespace bnsurv::test
