#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "maccsim/macc1d.hpp"
#include "maccsim/macc2d.hpp"
#include "maccsim/pda.hpp"
#include "maccsim/sim.hpp"

namespace maccsim {

using nlohmann::json;

// PDA container: {"rows":F,"cols":K,"Z":Z|null,"S":S,"entries":[[..]]} with
// "*" for stars and integers for labels. Row tags, when present, ride along
// as "row_tags". Round-trips losslessly.
json pda_to_json(const PdaArray& p);
PdaArray pda_from_json(const json& j);

// Family container adds "phi": the label -> vector table, index order = label.
json partition_to_json(const PartitionFamily& f);
PartitionFamily partition_from_json(const json& j);

json starmap_to_json(const StarMap& s);
StarMap starmap_from_json(const json& j);

json rational_to_json(const Rational& r);  // {"num":..,"den":..}
Rational rational_from_json(const json& j);

// Scheme containers carry "type", "params", "rounds" and the round-1 arrays;
// generating parameters are included so loading rebuilds the scheme exactly.
json scheme_to_json(const Macc1dScheme& s);
Macc1dScheme scheme_1d_from_json(const json& j);

json scheme_to_json(const Macc2dScheme& s);
Macc2dScheme scheme_2d_from_json(const json& j);

// Dispatch on "type": returns exactly one of the two.
struct LoadedScheme {
    std::optional<Macc1dScheme> one_d;
    std::optional<Macc2dScheme> two_d;
};
LoadedScheme scheme_from_json(const json& j);

json report_to_json(const SimReport& report, const SimPlan& plan, bool with_transcript);

// "memory_ratio_num,memory_ratio_den,load_num,load_den,scheme,t" rows.
std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);
std::vector<TradeoffPoint> tradeoff_from_csv(const std::string& csv);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace maccsim
