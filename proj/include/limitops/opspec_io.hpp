#pragma once

#include <json.hpp>

#include "limitops/limit_ops.hpp"

namespace limitops {

struct LoadedOperator {
  std::optional<BandOperator> band;
  std::optional<GeneralOperator> extended;

  const BandOperator& requireBand() const {
    if (!band)
      throw PreconditionError("UnsupportedClass",
                              "this operation needs a band operator (the flip is "
                              "admitted only by pconv and materialization)");
    return *band;
  }
  GeneralOperator asGeneral() const {
    if (extended) return *extended;
    return GeneralOperator(requireBand());
  }
};

// Operator spec schema (documented in the README):
// { "entryDim": d, "diagonals": [ {"offset": a, "kind": "constant"|"periodic"|
//   "eventuallyPeriodic", ...} | {"kind": "scheme", "name": ..., "params": {...}} ] }
// Entries are [re, im] scalars, {"matrix": [[[re,im],...],...]} blocks, or
// {"abstract": {"label", "norm", "lowerNorm"}}.
LoadedOperator parse_operator_spec(const nlohmann::json& j);
LoadedOperator load_operator_spec(const std::string& path);

nlohmann::json dump_operator_spec(const BandOperator& A);
nlohmann::json dump_operator_spec(const GeneralOperator& A);

}  // namespace limitops
