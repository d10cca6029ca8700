// JSON model specs and CSV emission.
#pragma once

#include "umk/analytic.hpp"
#include "umk/balltree.hpp"
#include "umk/sigma.hpp"
#include "umk/spectral.hpp"
#include "umk/walk.hpp"

#include <string>
#include <vector>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace umk {

using Json = nlohmann::json;

// number, "a/b" string, or integer
Rational rational_from_json(const Json& v);

// {"nodes":[{"id":..,"parent":..,"phi":..}],"leaves":[{"id":..,"mass":..}]}
// or {"padic":{"p":2,"depth":3,"dim":1}}
BallTree tree_from_json(const Json& j);

// {"kind":"standard"} | {"kind":"padic","alpha":..,"b":..} |
// {"kind":"table","points":[[r,s],...]}
Sigma sigma_from_json(const Json& j);

// {"tree":...,"transitions":[{"from":u,"to":v,"p":..}],"mode":"finite-absorbing"}
Walk<Rational> walk_from_json(const Json& j);

// {"model":"taibleson","p":2,"n":2,"alpha":0.5} and the vladimirov | zp |
// product variants
AnalyticModel analytic_from_json(const Json& j);

Json spectrum_to_json(const EigenSystem& sys, const BallTree& tree);

struct CsvWriter {
  explicit CsvWriter(const std::string& path, const std::string& schema_comment,
                     const std::vector<std::string>& columns);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void row_raw(const std::string& line);

 private:
  void* out_;  // std::ofstream, kept out of the header
};

}  // namespace umk
