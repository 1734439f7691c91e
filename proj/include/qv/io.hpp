#pragma once

#include <string>

#include <json.hpp>

#include "qv/graphs.hpp"
#include "qv/qpv.hpp"
#include "qv/sim.hpp"
#include "qv/strategies.hpp"
#include "qv/types.hpp"

namespace qv::io {

/// Operators serialize as {"dims":[...],"re":[row-major],"im":[row-major]},
/// pure states as the same shape with amplitude vectors. Numbers round-trip
/// exactly (shortest-representation doubles).
nlohmann::json operator_to_json(const Operator& a);
nlohmann::json state_to_json(const PureState& s);

/// Strategies serialize as {"label","target","predicted_gap","tests":
/// [{"p","effect"}]} plus an optional "one_way":[{"m","n"}] pair list.
nlohmann::json strategy_to_json(const strategies::Strategy& s);

/// Transcripts serialize as {"seed","strategy","source","frequency",
/// "records":[[test,pass],...]}.
nlohmann::json transcript_to_json(const sim::Transcript& t);

/// Prepare-and-measure plans serialize as {"d_in","d_out","tests":
/// [{"p","input","effect"}]}.
nlohmann::json pm_to_json(const qpv::PMStrategy& p);

/// Parsers for the shapes above. `where` names the source (file path) and is
/// prefixed to every SchemaError.
Operator operator_from_json(const nlohmann::json& j, const std::string& where);
PureState state_from_json(const nlohmann::json& j, const std::string& where);
strategies::Strategy strategy_from_json(const nlohmann::json& j,
                                        const std::string& where);
sim::Transcript transcript_from_json(const nlohmann::json& j,
                                     const std::string& where);

/// File loaders; parse failures and malformed content raise SchemaError
/// carrying the path.
nlohmann::json load_json(const std::string& path);
Operator load_operator(const std::string& path);
PureState load_state(const std::string& path);
strategies::Strategy load_strategy(const std::string& path);
sim::Transcript load_transcript(const std::string& path);

/// Graph file format: first line is the vertex count, every following
/// non-empty line is a 1-based edge "i j".
graphs::Graph load_graph(const std::string& path);

/// State grammar: bell | mes:d | ghz:n | w:n | dicke:n:k |
/// schmidt:l1,l2,... | twoqubit:theta | graph:FILE.
PureState parse_state(const std::string& spec);

/// CSV rendering: one row per round "round,test,pass" after a header line.
std::string transcript_csv(const sim::Transcript& t);

/// Fixed 12-significant-digit rendering used by all CSV output.
std::string csv_double(double v);

void write_text(const std::string& path, const std::string& content);

}  // namespace qv::io
