#include "support/enum_oracle.hpp"

#include <cstddef>
#include <functional>

#include "util/error.hpp"

namespace bnsurv::test {

namespace {

double value_at(const bn::Factor& f, const std::vector<int>& assign) {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < f.vars.size(); ++d)
        idx = idx * static_cast<std::size_t>(f.cards[d]) +
              static_cast<std::size_t>(assign[static_cast<std::size_t>(f.vars[d])]);
    return f.values[idx];
}

}  // namespace

bn::Factor enum_query(const bn::Network& net, const bn::Evidence& e,
                      const std::vector<int>& targets) {
    const int n = net.size();
    std::vector<std::vector<std::uint8_t>> allowed(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        allowed[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(net.card(v)), 1);
    for (const auto& [var, state] : e.points)
        for (int s = 0; s < net.card(var); ++s)
            if (s != state) allowed[static_cast<std::size_t>(var)][static_cast<std::size_t>(s)] = 0;
    for (const auto& [var, mask] : e.sets)
        for (int s = 0; s < net.card(var); ++s)
            if (!mask[static_cast<std::size_t>(s)])
                allowed[static_cast<std::size_t>(var)][static_cast<std::size_t>(s)] = 0;

    bn::Factor out;
    out.vars = targets;
    std::size_t size = 1;
    for (int t : targets) {
        out.cards.push_back(net.card(t));
        size *= static_cast<std::size_t>(net.card(t));
    }
    out.values.assign(size, 0.0);

    // Depth-first over topological order so each variable's CPT can be
    // multiplied in as soon as it is assigned; zero weights prune the branch.
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t k, double w) {
        if (k == net.topo_order.size()) {
            std::size_t idx = 0;
            for (std::size_t d = 0; d < targets.size(); ++d)
                idx = idx * static_cast<std::size_t>(out.cards[d]) +
                      static_cast<std::size_t>(assign[static_cast<std::size_t>(targets[d])]);
            out.values[idx] += w;
            return;
        }
        int v = net.topo_order[k];
        for (int s = 0; s < net.card(v); ++s) {
            if (!allowed[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)]) continue;
            assign[static_cast<std::size_t>(v)] = s;
            double w2 = w * value_at(net.cpts[static_cast<std::size_t>(v)], assign);
            if (w2 != 0.0) walk(k + 1, w2);
        }
    };
    walk(0, 1.0);
    return out;
}

double enum_evidence_probability(const bn::Network& net, const bn::Evidence& e) {
    return enum_query(net, e, {}).values[0];
}

std::vector<double> enum_posterior(const bn::Network& net, const bn::Evidence& e, int target) {
    bn::Factor f = enum_query(net, e, {target});
    double z = 0.0;
    for (double v : f.values) z += v;
    if (z <= 0.0) fail(ErrorCode::ZeroEvidenceProbability, "evidence has zero probability");
    for (double& v : f.values) v /= z;
    return f.values;
}

}  // namespace bnsurv::test
