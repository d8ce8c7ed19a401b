#include "limitops/opspec_io.hpp"

#include <fstream>

#include "limitops/gallery.hpp"

namespace limitops {

namespace {

using nlohmann::json;

Complex parseComplex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("ParseError", where + ": complex numbers are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Entry parseEntry(const json& j, const std::string& where) {
  if (j.is_array()) return Entry::scalar(parseComplex(j, where));
  if (j.is_object() && j.contains("matrix")) {
    const json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty())
      throw ParseError("ParseError", where + ": matrix entry needs rows");
    Index d = static_cast<Index>(rows.size());
    Eigen::MatrixXcd M(d, d);
    for (Index r = 0; r < d; ++r) {
      const json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != d)
        throw ParseError("ParseError", where + ": matrix entry must be square");
      for (Index c = 0; c < d; ++c)
        M(r, c) = parseComplex(row[static_cast<size_t>(c)], where);
    }
    return Entry::matrix(std::move(M));
  }
  if (j.is_object() && j.contains("abstract")) {
    const json& a = j.at("abstract");
    return Entry::abstract(a.value("label", std::string{}), a.at("norm").get<double>(),
                           a.at("lowerNorm").get<double>());
  }
  throw ParseError("ParseError", where + ": unrecognized entry");
}

std::vector<Entry> parseTable(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError("ParseError", where + ": table must be a nonempty array");
  std::vector<Entry> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parseEntry(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json dumpComplex(Complex v) { return json::array({v.real(), v.imag()}); }

json dumpEntry(const Entry& e) {
  switch (e.kind()) {
    case Entry::Kind::Scalar:
      return dumpComplex(e.scalarValue());
    case Entry::Kind::Matrix: {
      json rows = json::array();
      const auto& M = e.matrixValue();
      for (Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < M.cols(); ++c) row.push_back(dumpComplex(M(r, c)));
        rows.push_back(row);
      }
      return json{{"matrix", rows}};
    }
    case Entry::Kind::Abstract:
      return json{{"abstract",
                   {{"label", e.label()},
                    {"norm", e.normBound()},
                    {"lowerNorm", e.lowerNorm()}}}};
  }
  return json{};
}

json dumpTable(const std::vector<Entry>& table) {
  json out = json::array();
  for (const auto& e : table) out.push_back(dumpEntry(e));
  return out;
}

}  // namespace

LoadedOperator parse_operator_spec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("diagonals") || !j.at("diagonals").is_array())
    throw ParseError("ParseError", "operator spec needs a 'diagonals' array");
  int entryDim = j.value("entryDim", 1);

  LoadedOperator out;
  std::map<Index, CoeffSeq> diagonals;
  std::optional<FlipPart> flip;
  for (size_t di = 0; di < j.at("diagonals").size(); ++di) {
    const json& dj = j.at("diagonals")[di];
    std::string where = "diagonals[" + std::to_string(di) + "]";
    std::string kind = dj.value("kind", std::string{});
    if (kind == "scheme") {
      std::string name = dj.value("name", std::string{});
      std::map<std::string, Index> params;
      if (dj.contains("params"))
        for (auto it = dj.at("params").begin(); it != dj.at("params").end(); ++it)
          params[it.key()] = it.value().get<Index>();
      if (name == "flip") {
        FlipPart f;
        f.shift = params.count("shift") ? params["shift"] : 0;
        if (dj.contains("coeff")) f.coeff = parseComplex(dj.at("coeff"), where);
        flip = f;
        continue;
      }
      GalleryItem item = gallery(name, params);
      if (!item.band)
        throw ParseError("ParseError", where + ": scheme '" + name + "' is not banded");
      BandOperator schemeOp = *item.band;
      if (params.count("shift")) schemeOp = shift_conjugate(schemeOp, params["shift"]);
      if (!diagonals.empty())
        throw ParseError("ParseError", where + ": scheme diagonals cannot be mixed "
                                               "with explicit diagonals");
      for (const auto& [alpha, seq] : schemeOp.diagonals()) diagonals.emplace(alpha, seq);
      entryDim = schemeOp.entryDim();
      continue;
    }
    if (!dj.contains("offset") || !dj.at("offset").is_number_integer())
      throw ParseError("ParseError", where + ": needs an integer 'offset'");
    Index offset = dj.at("offset").get<Index>();
    if (diagonals.count(offset))
      throw ParseError("ParseError", where + ": duplicate offset");
    if (kind == "constant") {
      diagonals.emplace(offset, CoeffSeq::constant(parseEntry(dj.at("value"), where)));
    } else if (kind == "periodic") {
      auto table = parseTable(dj.at("table"), where + ".table");
      if (dj.contains("q") && dj.at("q").get<Index>() != static_cast<Index>(table.size()))
        throw ParseError("ParseError", where + ": q must match the table length");
      diagonals.emplace(offset, CoeffSeq::periodic(std::move(table)));
    } else if (kind == "eventuallyPeriodic") {
      auto left = parseTable(dj.at("left"), where + ".left");
      auto right = parseTable(dj.at("right"), where + ".right");
      std::vector<Entry> core;
      if (dj.contains("core") && !dj.at("core").empty())
        core = parseTable(dj.at("core"), where + ".core");
      Index coreStart = dj.value("coreStart", Index{0});
      diagonals.emplace(offset, CoeffSeq::eventuallyPeriodic(std::move(left), coreStart,
                                                             std::move(core),
                                                             std::move(right)));
    } else {
      throw ParseError("ParseError", where + ": unknown kind '" + kind + "'");
    }
  }

  if (!diagonals.empty()) {
    try {
      out.band = BandOperator::fromDiagonals(std::move(diagonals), entryDim);
    } catch (const PreconditionError& e) {
      throw ParseError("ParseError", e.what());
    }
  }
  if (flip) {
    GeneralOperator g = out.band ? GeneralOperator(*out.band) : GeneralOperator{};
    g.setFlip(*flip);
    out.extended = g;
    if (out.band && out.band->abstractEntries())
      throw ParseError("ParseError", "flip cannot combine with abstract entries");
  }
  if (!out.band && !out.extended)
    throw ParseError("ParseError", "operator spec has no diagonals");
  return out;
}

LoadedOperator load_operator_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ParseError", "cannot open operator spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("ParseError", std::string("invalid JSON: ") + e.what());
  }
  return parse_operator_spec(j);
}

nlohmann::json dump_operator_spec(const BandOperator& A) {
  json diagonals = json::array();
  if (A.scheme()) {
    json params;
    for (const auto& [k, v] : A.scheme()->params()) params[k] = v;
    if (A.schemeShift() != 0) params["shift"] = A.schemeShift();
    diagonals.push_back(json{{"kind", "scheme"}, {"name", A.scheme()->name()},
                             {"params", params}});
    return json{{"entryDim", A.entryDim()}, {"diagonals", diagonals}};
  }
  for (const auto& [alpha, seq] : A.diagonals()) {
    json dj{{"offset", alpha}};
    switch (seq.kind()) {
      case CoeffSeq::Kind::Constant:
        dj["kind"] = "constant";
        dj["value"] = dumpEntry(seq.at(0));
        break;
      case CoeffSeq::Kind::Periodic: {
        dj["kind"] = "periodic";
        Index q = seq.period();
        std::vector<Entry> table;
        for (Index r = 0; r < q; ++r) table.push_back(seq.at(r));
        dj["q"] = q;
        dj["table"] = dumpTable(table);
        break;
      }
      case CoeffSeq::Kind::EventuallyPeriodic: {
        dj["kind"] = "eventuallyPeriodic";
        Index lo, hi;
        seq.coreRange(lo, hi);
        std::vector<Entry> left, core, right;
        Index ql = seq.leftPeriod(), qr = seq.rightPeriod();
        for (Index r = 0; r < ql; ++r) {
          Index i = r;  // deep-left index congruent to r mod ql
          while (i >= lo) i -= ql;
          left.push_back(seq.at(i));
        }
        for (Index i = lo; i <= hi; ++i) core.push_back(seq.at(i));
        for (Index r = 0; r < qr; ++r) {
          Index i = r;
          while (i <= hi) i += qr;
          right.push_back(seq.at(i));
        }
        dj["coreStart"] = lo;
        dj["left"] = dumpTable(left);
        dj["core"] = dumpTable(core);
        dj["right"] = dumpTable(right);
        break;
      }
      case CoeffSeq::Kind::Scheme:
        throw PreconditionError("UnsupportedClass", "mixed scheme diagonal in dump");
    }
    diagonals.push_back(std::move(dj));
  }
  return json{{"entryDim", A.entryDim()}, {"diagonals", diagonals}};
}

nlohmann::json dump_operator_spec(const GeneralOperator& A) {
  json j = A.band() ? dump_operator_spec(*A.band())
                    : json{{"entryDim", 1}, {"diagonals", json::array()}};
  if (A.flip()) {
    json f{{"kind", "scheme"}, {"name", "flip"}};
    f["params"] = json{{"shift", A.flip()->shift}};
    f["coeff"] = dumpComplex(A.flip()->coeff);
    j["diagonals"].push_back(std::move(f));
  }
  return j;
}

}  // namespace limitops
