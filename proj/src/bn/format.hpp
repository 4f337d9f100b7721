#pragma once

#include <iosfwd>
#include <string>

#include "bn/network.hpp"

namespace bnsurv::bn {

// Line-oriented text form of a network. Grammar (one directive per line,
// '#' starts a comment, blank lines ignored):
//
//   variable <name>
//   states <s1> <s2> ...
//   parents [<p1> ...]
//   row <v1> <v2> ...        one row per parent configuration, first parent
//                            slowest; values in child-state order
//
// Serialization uses shortest round-trip decimal for probabilities, so
// serialize(parse(serialize(net))) is byte-identical to serialize(net).
std::string serialize_network(const Network& net);
Network parse_network(const std::string& text);

// Raw section form, for containers that embed network syntax alongside other
// directives. parse_sections consumes only variable/states/parents/row lines.
void serialize_sections(std::ostream& os, const std::vector<VariableSpec>& vars,
                        const std::vector<CptSpec>& cpts);
void parse_section_line(const std::string& line, int line_no,
                        std::vector<VariableSpec>& vars, std::vector<CptSpec>& cpts);

}  // namespace bnsurv::bn
