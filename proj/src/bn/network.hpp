#pragma once

#include <string>
#include <vector>

#include "bn/factor.hpp"

namespace bnsurv::bn {

struct VariableSpec {
    std::string name;
    std::vector<std::string> states;
};

// Rows are ordered by parent assignment, first parent slowest; each row is a
// distribution over the child's states.
struct CptSpec {
    std::string child;
    std::vector<std::string> parents;
    std::vector<std::vector<double>> rows;
};

struct Network {
    std::vector<VariableSpec> variables;       // index = variable id
    std::vector<std::vector<int>> parents;     // per variable, parent ids
    std::vector<Factor> cpts;                  // per variable: vars = {child, parents...}
    std::vector<int> topo_order;               // ids, parents before children

    int var_id(const std::string& name) const;     // -1 if absent
    int state_id(int var, const std::string& state) const;  // -1 if absent
    int card(int var) const { return static_cast<int>(variables[var].states.size()); }
    int size() const { return static_cast<int>(variables.size()); }
};

// Validates names, cardinalities, row normalization, acyclicity.
Network build_network(const std::vector<VariableSpec>& vars, const std::vector<CptSpec>& cpts);

}  // namespace bnsurv::bn
