#include "bn/network.hpp"

#include <cmath>
#include <cstddef>
#include <unordered_map>

#include "util/error.hpp"

namespace bnsurv::bn {

int Network::var_id(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    return -1;
}

int Network::state_id(int var, const std::string& state) const {
    const auto& st = variables[var].states;
    for (std::size_t i = 0; i < st.size(); ++i)
        if (st[i] == state) return static_cast<int>(i);
    return -1;
}

Network build_network(const std::vector<VariableSpec>& vars, const std::vector<CptSpec>& cpts) {
    Network net;
    net.variables = vars;

    std::unordered_map<std::string, int> ids;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name.empty())
            fail(ErrorCode::InvalidArgument, "variable with empty name");
        if (vars[i].states.size() < 2)
            fail(ErrorCode::InvalidArgument, "variable '" + vars[i].name + "' needs at least 2 states");
        if (!ids.emplace(vars[i].name, static_cast<int>(i)).second)
            fail(ErrorCode::InvalidArgument, "duplicate variable '" + vars[i].name + "'");
    }

    net.parents.assign(vars.size(), {});
    net.cpts.assign(vars.size(), {});
    std::vector<char> have_cpt(vars.size(), 0);

    for (const auto& spec : cpts) {
        auto it = ids.find(spec.child);
        if (it == ids.end())
            fail(ErrorCode::UnknownVariable, "cpt refers to unknown variable '" + spec.child + "'");
        int child = it->second;
        if (have_cpt[child])
            fail(ErrorCode::InvalidArgument, "duplicate cpt for '" + spec.child + "'");
        have_cpt[child] = 1;

        std::vector<int> pids;
        std::size_t rows_needed = 1;
        for (const auto& pname : spec.parents) {
            auto pit = ids.find(pname);
            if (pit == ids.end())
                fail(ErrorCode::UnknownVariable,
                     "cpt for '" + spec.child + "' names unknown parent '" + pname + "'");
            if (pit->second == child)
                fail(ErrorCode::CycleDetected, "variable '" + spec.child + "' is its own parent");
            pids.push_back(pit->second);
            rows_needed *= vars[pit->second].states.size();
        }
        if (spec.rows.size() != rows_needed)
            fail(ErrorCode::CardinalityMismatch,
                 "cpt for '" + spec.child + "' has " + std::to_string(spec.rows.size()) +
                     " rows, expected " + std::to_string(rows_needed));
        std::size_t width = vars[child].states.size();
        for (std::size_t r = 0; r < spec.rows.size(); ++r) {
            if (spec.rows[r].size() != width)
                fail(ErrorCode::CardinalityMismatch,
                     "cpt row " + std::to_string(r) + " for '" + spec.child + "' has " +
                         std::to_string(spec.rows[r].size()) + " entries, expected " +
                         std::to_string(width));
            double sum = 0.0;
            for (double v : spec.rows[r]) {
                if (v < 0.0)
                    fail(ErrorCode::RowNotNormalized,
                         "cpt row " + std::to_string(r) + " for '" + spec.child +
                             "' has a negative entry");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                fail(ErrorCode::RowNotNormalized,
                     "cpt row " + std::to_string(r) + " for '" + spec.child + "' sums to " +
                         std::to_string(sum));
        }

        net.parents[child] = pids;

        // Factor layout: child first (slowest), then parents in declared order.
        // Row-major rows with first parent slowest means row index r decomposes
        // over parents fastest-last, matching factor strides directly.
        Factor f;
        f.vars.push_back(child);
        f.cards.push_back(static_cast<int>(width));
        for (int p : pids) {
            f.vars.push_back(p);
            f.cards.push_back(net.card(p));
        }
        f.values.resize(width * rows_needed);
        for (std::size_t r = 0; r < rows_needed; ++r)
            for (std::size_t s = 0; s < width; ++s)
                f.values[s * rows_needed + r] = spec.rows[r][s];
        net.cpts[child] = std::move(f);
    }

    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!have_cpt[i])
            fail(ErrorCode::InvalidArgument, "variable '" + vars[i].name + "' has no cpt");

    // Kahn's algorithm; leftover nodes mean a cycle.
    std::vector<int> indeg(vars.size(), 0);
    std::vector<std::vector<int>> children(vars.size());
    for (std::size_t c = 0; c < vars.size(); ++c)
        for (int p : net.parents[c]) {
            children[p].push_back(static_cast<int>(c));
            ++indeg[c];
        }
    std::vector<int> queue;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        net.topo_order.push_back(v);
        for (int c : children[v])
            if (--indeg[c] == 0) queue.push_back(c);
    }
    if (net.topo_order.size() != vars.size())
        fail(ErrorCode::CycleDetected, "parent structure contains a cycle");

    return net;
}

}  // namespace bnsurv::bn
