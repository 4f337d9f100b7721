#include "bn/factor.hpp"

#include <algorithm>
#include <numeric>

#include "util/error.hpp"

namespace bnsurv::bn {

bool Factor::has_var(int v) const {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

int Factor::pos_of(int v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

std::size_t Factor::stride(int d) const {
    std::size_t s = 1;
    for (std::size_t i = d + 1; i < cards.size(); ++i) s *= cards[i];
    return s;
}

namespace {

// Walk every assignment of `shape`, tracking flat offsets into two source
// factors via per-dimension strides (0 where the factor lacks the dimension).
template <typename Fn>
void odometer(const std::vector<int>& shape, const std::vector<std::size_t>& stride_a,
              const std::vector<std::size_t>& stride_b, Fn&& fn) {
    const int nd = static_cast<int>(shape.size());
    std::size_t total = 1;
    for (int c : shape) total *= c;
    std::vector<int> counter(nd, 0);
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < total; ++i) {
        fn(i, ia, ib);
        for (int d = nd - 1; d >= 0; --d) {
            ++counter[d];
            ia += stride_a[d];
            ib += stride_b[d];
            if (counter[d] < shape[d]) break;
            counter[d] = 0;
            ia -= stride_a[d] * shape[d];
            ib -= stride_b[d] * shape[d];
        }
    }
}

std::vector<std::size_t> strides_for(const Factor& f, const std::vector<int>& vars) {
    std::vector<std::size_t> out(vars.size(), 0);
    for (std::size_t d = 0; d < vars.size(); ++d) {
        int p = f.pos_of(vars[d]);
        if (p >= 0) out[d] = f.stride(p);
    }
    return out;
}

}  // namespace

Factor product(const Factor& a, const Factor& b) {
    Factor out;
    out.vars = a.vars;
    out.cards = a.cards;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
        if (!a.has_var(b.vars[i])) {
            out.vars.push_back(b.vars[i]);
            out.cards.push_back(b.cards[i]);
        }
    }
    std::size_t total = 1;
    for (int c : out.cards) total *= c;
    out.values.resize(total);
    auto sa = strides_for(a, out.vars);
    auto sb = strides_for(b, out.vars);
    odometer(out.cards, sa, sb, [&](std::size_t i, std::size_t ia, std::size_t ib) {
        out.values[i] = a.values[ia] * b.values[ib];
    });
    return out;
}

Factor sum_out(const Factor& f, int var) {
    int p = f.pos_of(var);
    if (p < 0) return f;
    Factor out;
    for (std::size_t d = 0; d < f.vars.size(); ++d) {
        if (static_cast<int>(d) == p) continue;
        out.vars.push_back(f.vars[d]);
        out.cards.push_back(f.cards[d]);
    }
    std::size_t total = 1;
    for (int c : out.cards) total *= c;
    out.values.assign(std::max<std::size_t>(total, 1), 0.0);
    auto sf = strides_for(f, f.vars);  // identity strides of f
    auto so = strides_for(out, f.vars);
    odometer(f.cards, sf, so, [&](std::size_t, std::size_t i_f, std::size_t i_o) {
        out.values[i_o] += f.values[i_f];
    });
    return out;
}

Factor condition(const Factor& f, int var, int state) {
    int p = f.pos_of(var);
    if (p < 0) return f;
    Factor out;
    for (std::size_t d = 0; d < f.vars.size(); ++d) {
        if (static_cast<int>(d) == p) continue;
        out.vars.push_back(f.vars[d]);
        out.cards.push_back(f.cards[d]);
    }
    std::size_t total = 1;
    for (int c : out.cards) total *= c;
    out.values.resize(std::max<std::size_t>(total, 1));
    std::size_t base = f.stride(p) * state;
    auto so = strides_for(out, out.vars);
    auto sf = strides_for(f, out.vars);
    odometer(out.cards, so, sf, [&](std::size_t, std::size_t i_o, std::size_t i_f) {
        out.values[i_o] = f.values[base + i_f];
    });
    return out;
}

Factor restrict_states(const Factor& f, int var, std::span<const std::uint8_t> allowed) {
    int p = f.pos_of(var);
    if (p < 0) return f;
    Factor out = f;
    std::size_t st = f.stride(p);
    std::size_t block = st * f.cards[p];
    for (std::size_t base = 0; base < out.values.size(); base += block)
        for (int s = 0; s < f.cards[p]; ++s)
            if (!allowed[s])
                for (std::size_t k = 0; k < st; ++k) out.values[base + s * st + k] = 0.0;
    return out;
}

Factor permute(const Factor& f, std::span<const int> var_order) {
    Factor out;
    for (int v : var_order) {
        int p = f.pos_of(v);
        if (p < 0) fail(ErrorCode::Internal, "permute: variable not in factor");
        out.vars.push_back(v);
        out.cards.push_back(f.cards[p]);
    }
    if (out.vars.size() != f.vars.size())
        fail(ErrorCode::Internal, "permute: order is not a permutation");
    out.values.resize(f.values.size());
    auto so = strides_for(out, out.vars);
    auto sf = strides_for(f, out.vars);
    odometer(out.cards, so, sf, [&](std::size_t, std::size_t i_o, std::size_t i_f) {
        out.values[i_o] = f.values[i_f];
    });
    return out;
}

Factor canonical(const Factor& f) {
    std::vector<int> order = f.vars;
    std::sort(order.begin(), order.end());
    return permute(f, order);
}

double total(const Factor& f) {
    double t = 0.0;
    for (double v : f.values) t += v;
    return t;
}

}  // namespace bnsurv::bn
