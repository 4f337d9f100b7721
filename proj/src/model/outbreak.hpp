#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bn/inference.hpp"
#include "bn/network.hpp"
#include "model/params.hpp"

namespace bnsurv::model {

enum class ReleaseTime { Never = 0, Today = 1, Yesterday = 2, DayBefore = 3 };

const char* release_time_name(ReleaseTime t);

// One joint hypothesis over the interface variables. location indexes the
// declared zip list, -1 meaning nowhere; angle indexes the 8 compass
// directions, -1 meaning not applicable.
struct InterfaceConfig {
    bool release = false;
    ReleaseTime time = ReleaseTime::Never;
    int location = -1;
    int angle = -1;
};

// release=no <=> time=never <=> location=nowhere; spatial release configs
// carry a real angle, non-spatial and no-release ones carry none.
bool config_valid(const InterfaceConfig& c, Variant variant);

// Index 0 is the no-release config; release configs follow ordered by time,
// then location, then angle.
std::vector<InterfaceConfig> enumerate_interface_configs(const PersonModelParams& params,
                                                         Variant variant);

// Observed global variables, by name/state; empty by default.
using GlobalEvidence = std::vector<std::pair<std::string, std::string>>;

// Global subnetwork over G. With no declared extra structure this is the
// single release variable carrying the release prior.
bn::Network build_global_network(const PersonModelParams& params);

// P(release = t | g), by inference over the global subnetwork.
double global_prior(bool release, const GlobalEvidence& g, const bn::Network& global_net);

// P(I = i | T = t, g); zero for configs inconsistent with t.
double interface_prior(const InterfaceConfig& i, bool release_state, const GlobalEvidence& g,
                       const OutbreakPriors& priors);

}  // namespace bnsurv::model
