#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bnsurv::bn {

// Dense table over a set of discrete variables. Layout is row-major with the
// first variable slowest and the last fastest, matching CPT row order.
struct Factor {
    std::vector<int> vars;    // variable ids
    std::vector<int> cards;   // cardinalities, parallel to vars
    std::vector<double> values;

    static Factor scalar(double v) { return Factor{{}, {}, {v}}; }

    std::size_t size() const { return values.size(); }
    bool has_var(int v) const;
    int pos_of(int v) const;  // -1 if absent

    // stride of dimension d in the flat layout
    std::size_t stride(int d) const;
};

Factor product(const Factor& a, const Factor& b);
Factor sum_out(const Factor& f, int var);

// Fix var = state and drop the dimension.
Factor condition(const Factor& f, int var, int state);

// Zero every entry whose state of `var` is not allowed. Keeps the dimension.
Factor restrict_states(const Factor& f, int var, std::span<const std::uint8_t> allowed);

// Reorder dimensions to the given order, a permutation of f.vars.
Factor permute(const Factor& f, std::span<const int> var_order);

// Reorder dimensions to ascending variable id (canonical form for results).
Factor canonical(const Factor& f);

double total(const Factor& f);

}  // namespace bnsurv::bn
