#pragma once

#include <string>

#include <json.hpp>

#include "pprtopk/bounds.hpp"
#include "pprtopk/disambig.hpp"
#include "pprtopk/exact.hpp"
#include "pprtopk/mc.hpp"
#include "pprtopk/topk.hpp"

namespace pprtopk {

using json = nlohmann::json;

json to_json(const PprVector& v);
PprVector ppr_from_json(const json& j);

/// "node<TAB>score" rows, one per node.
std::string to_tsv(const PprVector& v);

json to_json(const WalkOutcome& o);
WalkOutcome outcome_from_json(const json& j);

json to_json(const MCEstimate& e);
json to_json(const TopKReport& r);
json to_json(const MisrankBound& b);
json to_json(const Clustering& c);

std::string method_name(McMethod m);
McMethod method_from_name(const std::string& name);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pprtopk
