#pragma once

#include <string>
#include <vector>

#include "model/params.hpp"
#include "model/person.hpp"

namespace bnsurv::io {

// CSV with header zip,age_decile,gender,count. Cells index into the model's
// zip list and age range; duplicate cells merge by summing, with a warning.
std::vector<model::CensusCell> parse_census(const std::string& path,
                                            const model::PersonModelParams& params,
                                            std::vector<std::string>* warnings = nullptr);

void write_census(const std::string& path, const model::PersonModelParams& params,
                  const std::vector<model::CensusCell>& cells);

std::uint64_t census_total(const std::vector<model::CensusCell>& cells);

}  // namespace bnsurv::io
