#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "segrekit/pushforward.hpp"
#include "segrekit/variety.hpp"

namespace segrekit {

/// Outcome of one command. Objects serialize with sorted keys and all
/// numbers are exact, so identical runs produce identical bytes.
struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> caveats;

  nlohmann::json to_json() const;
  std::string json_text() const;
  /// Indented "key: value" rendering of the same data.
  std::string text() const;
};

/// Stable process exit codes.
enum ExitCode : int { kOk = 0, kParseFailure = 2, kSemanticFailure = 3, kLimitFailure = 4 };

struct QueryPoints {
  std::optional<Point> at;
  std::vector<Point> grid;
};

Report cmd_complexify(const RealVariety& v);
/// Needs --at or --grid.
Report cmd_segre(const RealVariety& v, const QueryPoints& q);
/// --at adds the dimension-formula check; --at with --grid runs the
/// semicontinuity probe along the grid towards the --at point.
Report cmd_intrinsic(const RealVariety& v, const QueryPoints& q);
Report cmd_pushforward(const RealVariety& v, const MapFile& map);
/// Segre classification, CR rank and formula check at each point.
Report cmd_classify(const RealVariety& v, const QueryPoints& q);

/// args excludes the program name. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segrekit
