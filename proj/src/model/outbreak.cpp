#include "model/outbreak.hpp"

#include "util/error.hpp"

namespace bnsurv::model {

const char* release_time_name(ReleaseTime t) {
    switch (t) {
        case ReleaseTime::Never: return "never";
        case ReleaseTime::Today: return "today";
        case ReleaseTime::Yesterday: return "yesterday";
        case ReleaseTime::DayBefore: return "day_before";
    }
    return "?";
}

bool config_valid(const InterfaceConfig& c, Variant variant) {
    if (!c.release)
        return c.time == ReleaseTime::Never && c.location == -1 && c.angle == -1;
    if (c.time == ReleaseTime::Never || c.location < 0) return false;
    if (variant == Variant::Spatial) return c.angle >= 0 && c.angle < 8;
    return c.angle == -1;
}

std::vector<InterfaceConfig> enumerate_interface_configs(const PersonModelParams& params,
                                                         Variant variant) {
    std::vector<InterfaceConfig> out;
    out.push_back({});
    const int nz = static_cast<int>(params.zips.size());
    const int na = variant == Variant::Spatial ? 8 : 1;
    for (int t = 1; t <= 3; ++t)
        for (int l = 0; l < nz; ++l)
            for (int a = 0; a < na; ++a)
                out.push_back({true, static_cast<ReleaseTime>(t), l,
                               variant == Variant::Spatial ? a : -1});
    return out;
}

bn::Network build_global_network(const PersonModelParams& params) {
    if (!params.global_vars.empty())
        return bn::build_network(params.global_vars, params.global_cpts);
    bn::VariableSpec release{"anthrax_release", {"no", "yes"}};
    bn::CptSpec cpt{"anthrax_release", {}, {{1.0 - params.priors.p_release,
                                             params.priors.p_release}}};
    return bn::build_network({release}, {cpt});
}

double global_prior(bool release, const GlobalEvidence& g, const bn::Network& global_net) {
    bn::Evidence e = bn::make_evidence(global_net, g);
    auto dist = bn::posterior_marginal(global_net, e, "anthrax_release");
    return dist[release ? 1 : 0];
}

double interface_prior(const InterfaceConfig& i, bool release_state, const GlobalEvidence&,
                       const OutbreakPriors& priors) {
    if (!release_state) return i.release ? 0.0 : 1.0;
    if (!i.release) return 0.0;
    double p = priors.time_given_release[static_cast<int>(i.time) - 1] *
               priors.location_given_release[i.location];
    if (i.angle >= 0) p *= priors.angle_given_release[i.angle];
    return p;
}

}  // namespace bnsurv::model
