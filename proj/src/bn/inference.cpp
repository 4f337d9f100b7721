#include "bn/inference.hpp"

#include <algorithm>
#include <set>

#include "util/error.hpp"

namespace bnsurv::bn {

Evidence make_evidence(const Network& net,
                       const std::vector<std::pair<std::string, std::string>>& items) {
    Evidence e;
    for (const auto& [var, state] : items) {
        int v = net.var_id(var);
        if (v < 0) fail(ErrorCode::UnknownVariable, "no variable '" + var + "'");
        int s = net.state_id(v, state);
        if (s < 0)
            fail(ErrorCode::UnknownState, "variable '" + var + "' has no state '" + state + "'");
        e.set(v, s);
    }
    return e;
}

namespace {

// CPTs with evidence applied: point entries condition the dimension away,
// set entries zero out disallowed states. Each CPT is sliced straight from
// the network copy-free until an applicable entry touches it, which keeps the
// large conditioned tables from ever being materialized whole.
std::vector<Factor> evidence_factors(const Network& net, const Evidence& e) {
    for (const auto& [var, state] : e.points) {
        if (var < 0 || var >= net.size())
            fail(ErrorCode::UnknownVariable, "evidence variable id out of range");
        if (state < 0 || state >= net.card(var))
            fail(ErrorCode::UnknownState, "evidence state id out of range");
    }
    for (const auto& [var, mask] : e.sets) {
        if (var < 0 || var >= net.size())
            fail(ErrorCode::UnknownVariable, "evidence variable id out of range");
        if (mask.size() != static_cast<std::size_t>(net.card(var)))
            fail(ErrorCode::UnknownState, "evidence mask size does not match state count");
    }
    std::vector<Factor> fs;
    fs.reserve(net.size());
    for (int v = 0; v < net.size(); ++v) {
        const Factor* cur = &net.cpts[v];
        Factor owned;
        for (const auto& [var, state] : e.points)
            if (cur->has_var(var)) {
                owned = condition(*cur, var, state);
                cur = &owned;
            }
        for (const auto& [var, mask] : e.sets)
            if (cur->has_var(var)) {
                owned = restrict_states(*cur, var, mask);
                cur = &owned;
            }
        fs.push_back(cur == &owned ? std::move(owned) : *cur);
    }
    return fs;
}

std::vector<int> order_min_fill(const Network& net, const std::vector<Factor>& fs,
                                std::vector<char> eliminate) {
    // Interaction graph over factor scopes.
    std::vector<std::set<int>> adj(net.size());
    for (const auto& f : fs)
        for (std::size_t i = 0; i < f.vars.size(); ++i)
            for (std::size_t j = i + 1; j < f.vars.size(); ++j) {
                adj[f.vars[i]].insert(f.vars[j]);
                adj[f.vars[j]].insert(f.vars[i]);
            }
    std::vector<int> order;
    for (;;) {
        int best = -1;
        long best_fill = -1;
        for (int v = 0; v < net.size(); ++v) {
            if (!eliminate[v]) continue;
            long fill = 0;
            std::vector<int> nb(adj[v].begin(), adj[v].end());
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (best < 0 || fill < best_fill ||
                (fill == best_fill && net.variables[v].name < net.variables[best].name)) {
                best = v;
                best_fill = fill;
            }
        }
        if (best < 0) break;
        order.push_back(best);
        eliminate[best] = 0;
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (int n : nb) adj[n].erase(best);
        adj[best].clear();
    }
    return order;
}

std::vector<int> order_reverse_topo(const Network& net, const std::vector<char>& eliminate) {
    std::vector<int> order;
    for (auto it = net.topo_order.rbegin(); it != net.topo_order.rend(); ++it)
        if (eliminate[*it]) order.push_back(*it);
    return order;
}

Factor multiply_all(std::vector<Factor> fs) {
    if (fs.empty()) return Factor::scalar(1.0);
    Factor acc = std::move(fs.front());
    for (std::size_t i = 1; i < fs.size(); ++i) acc = product(acc, fs[i]);
    return acc;
}

}  // namespace

Factor query_factor(const Network& net, const std::vector<int>& targets, const Evidence& e,
                    const InferenceOptions& opts) {
    auto fs = evidence_factors(net, e);

    std::vector<char> eliminate(net.size(), 1);
    for (int t : targets) {
        if (t < 0 || t >= net.size()) fail(ErrorCode::UnknownVariable, "target id out of range");
        eliminate[t] = 0;
    }
    for (const auto& [var, state] : e.points) eliminate[var] = 0;  // already conditioned away

    Factor joint;
    if (net.size() <= opts.enumeration_threshold) {
        joint = multiply_all(std::move(fs));
        for (int v = 0; v < net.size(); ++v)
            if (eliminate[v]) joint = sum_out(joint, v);
    } else {
        std::vector<int> order = opts.order == EliminationOrder::MinFill
                                     ? order_min_fill(net, fs, eliminate)
                                     : order_reverse_topo(net, eliminate);
        for (int v : order) {
            std::vector<Factor> touching, rest;
            for (auto& f : fs)
                (f.has_var(v) ? touching : rest).push_back(std::move(f));
            Factor merged = sum_out(multiply_all(std::move(touching)), v);
            rest.push_back(std::move(merged));
            fs = std::move(rest);
        }
        joint = multiply_all(std::move(fs));
    }

    // The joint may omit a target whose dimension was conditioned away by
    // point evidence; rebuild it as a single-state axis so callers always get
    // the shape they asked for. A point-observed target contributes a point
    // mass at the observed state.
    for (int t : targets) {
        if (joint.has_var(t)) continue;
        int observed = -1;
        for (const auto& [var, state] : e.points)
            if (var == t) observed = state;
        Factor axis;
        axis.vars = {t};
        axis.cards = {net.card(t)};
        axis.values.assign(net.card(t), observed < 0 ? 1.0 : 0.0);
        if (observed >= 0) axis.values[observed] = 1.0;
        if (observed < 0)
            fail(ErrorCode::Internal, "query target missing from joint without point evidence");
        joint = product(joint, axis);
    }
    return permute(joint, targets);
}

double evidence_probability(const Network& net, const Evidence& e, const InferenceOptions& opts) {
    Factor f = query_factor(net, {}, e, opts);
    return total(f);
}

std::vector<double> posterior_marginal(const Network& net, const Evidence& e, int target,
                                       const InferenceOptions& opts) {
    Factor f = query_factor(net, {target}, e, opts);
    double z = total(f);
    if (z <= 0.0)
        fail(ErrorCode::ZeroEvidenceProbability,
             "evidence has zero probability under the model");
    std::vector<double> out(f.values);
    for (double& v : out) v /= z;
    return out;
}

std::vector<double> posterior_marginal(const Network& net, const Evidence& e,
                                       const std::string& target, const InferenceOptions& opts) {
    int t = net.var_id(target);
    if (t < 0) fail(ErrorCode::UnknownVariable, "no variable '" + target + "'");
    return posterior_marginal(net, e, t, opts);
}

std::vector<int> sample_conditional(const Network& net, const Evidence& e,
                                    const std::vector<int>& targets, Rng& rng,
                                    const InferenceOptions& opts) {
    Evidence working = e;
    std::vector<int> out;
    out.reserve(targets.size());
    for (int t : targets) {
        auto dist = posterior_marginal(net, working, t, opts);
        int s = rng.discrete(dist);
        working.set(t, s);
        out.push_back(s);
    }
    return out;
}

std::vector<int> sample_conditional(const Network& net, const Evidence& e,
                                    const std::vector<std::string>& targets,
                                    std::uint64_t rng_seed, const InferenceOptions& opts) {
    std::vector<int> ids;
    for (const auto& name : targets) {
        int t = net.var_id(name);
        if (t < 0) fail(ErrorCode::UnknownVariable, "no variable '" + name + "'");
        ids.push_back(t);
    }
    Rng rng(rng_seed);
    return sample_conditional(net, e, ids, rng, opts);
}

}  // namespace bnsurv::bn
