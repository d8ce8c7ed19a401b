#include "limitops/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace limitops {

using nlohmann::json;

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json num(double x) { return round_sig(x); }

json num(Complex z) { return json::array({round_sig(z.real()), round_sig(z.imag())}); }

json certificate_json(const WindowCertificate& cert,
                      const std::vector<WindowCertificate>* allMethods) {
  auto one = [](const WindowCertificate& c) {
    json internals;
    switch (c.method) {
      case WindowCertificate::Method::Proof1:
        internals = json{{"m", c.m}, {"R", c.R}};
        break;
      case WindowCertificate::Method::Proof2:
        internals = json{{"n0", c.n0}, {"c", c.c}, {"d", c.d}};
        break;
      case WindowCertificate::Method::ExtremalP:
        internals = json{{"k", c.k}};
        break;
    }
    json p = std::isinf(c.p) ? json("inf") : json(num(c.p));
    return json{{"method", method_name(c.method)}, {"D", c.D},     {"delta", num(c.delta)},
                {"r", num(c.r)},                   {"w", c.w},     {"p", p},
                {"N", c.N},                        {"internals", internals}};
  };
  json out = one(cert);
  if (allMethods) {
    json all = json::array();
    for (const auto& c : *allMethods) all.push_back(one(c));
    out["allMethods"] = all;
  }
  return out;
}

json estimate_json(const LowerNormEstimate& est) {
  json out{{"value", num(est.value)},
           {"kind", est.kind == LowerNormEstimate::Kind::Exact ? "Exact" : "UpperWithinDelta"},
           {"p", std::isinf(est.pNorm) ? json("inf") : json(num(est.pNorm))}};
  if (est.kind == LowerNormEstimate::Kind::UpperWithinDelta) out["delta"] = num(est.delta);
  out["witnessOffset"] = est.minimizingOffset;
  if (est.witness) {
    out["witnessSupport"] =
        json::array({est.witness->suppLo(), est.witness->suppHi()});
    out["witnessDiamSupp"] = est.witness->diamSupp();
  }
  if (est.certificate) out["certificate"] = certificate_json(*est.certificate);
  return out;
}

json spectrum_enum_json(const OperatorSpectrumEnum& en, const std::vector<double>& repNu) {
  json reps = json::array();
  for (size_t i = 0; i < en.representatives.size(); ++i) {
    json r{{"label", en.labels[i]},
           {"bandWidth", en.representatives[i].bandWidth()}};
    if (i < repNu.size()) r["nu"] = num(repNu[i]);
    reps.push_back(std::move(r));
  }
  const char* tag = en.richTag == RichTag::FiniteDimEntries ? "FiniteDimEntries"
                    : en.richTag == RichTag::PaperAsserted  ? "PaperAsserted"
                                                            : "NotRich";
  return json{{"representatives", reps},
              {"orbitRule", en.orbitRule},
              {"rich", en.rich},
              {"richTag", tag},
              {"exhaustive", en.exhaustive},
              {"probeHalfWidth", en.probeHalfWidth}};
}

json pconv_json(const PConvergenceReport& rep) {
  json table = json::array();
  for (size_t mi = 0; mi < rep.ms.size(); ++mi) {
    json row = json::array();
    for (Index n = 0; n < rep.residuals.cols(); ++n)
      row.push_back(num(rep.residuals(static_cast<Index>(mi), n)));
    table.push_back(std::move(row));
  }
  const char* verdict =
      rep.verdict == PConvergenceReport::Verdict::ConvergesNumerically
          ? "ConvergesNumerically"
          : rep.verdict == PConvergenceReport::Verdict::FailsToConverge ? "FailsToConverge"
                                                                        : "Inconclusive";
  json out{{"ms", rep.ms},       {"nMax", rep.ns.empty() ? 0 : rep.ns.back()},
           {"tol", num(rep.tol)}, {"residuals", table},
           {"verdict", verdict},  {"nThreshold", rep.nThreshold}};
  if (rep.verdict != PConvergenceReport::Verdict::ConvergesNumerically)
    out["floor"] = num(rep.floorValue);
  return out;
}

json floquet_result_json(const EssentialSpectrumResult& res) {
  json out{{"mode", res.mode == EssentialSpectrumResult::Mode::FloquetUnion ? "floquet"
                                                                            : "gamma"},
           {"representatives", res.repCount}};
  if (res.mode == EssentialSpectrumResult::Mode::FloquetUnion) {
    out["selfAdjoint"] = res.selfAdjoint;
    if (res.selfAdjoint) {
      json ivs = json::array();
      for (const auto& iv : res.intervals)
        ivs.push_back(json::array({num(iv.first), num(iv.second)}));
      out["intervals"] = ivs;
    }
    out["cloudSize"] = res.cloud.size();
  } else {
    out["delta"] = num(res.delta);
    out["certRadius"] = num(res.certRadius);
    out["grid"] = json{{"nx", res.box.nx},
                       {"ny", res.box.ny},
                       {"box", json::array({num(res.box.re0), num(res.box.re1),
                                            num(res.box.im0), num(res.box.im1)})}};
    size_t in = 0, boundary = 0, outCount = 0;
    for (int v : res.verdict) (v == 0 ? in : v == 1 ? boundary : outCount) += 1;
    out["counts"] = json{{"in", in}, {"boundary", boundary}, {"out", outCount}};
  }
  return out;
}

json fredholm_json(const FredholmReport& rep) {
  const char* verdict = rep.verdict == FredholmReport::Verdict::PFredholm ? "PFredholm"
                        : rep.verdict == FredholmReport::Verdict::NotPFredholm
                            ? "NotPFredholm"
                            : "Inconclusive";
  json reps = json::array();
  for (size_t i = 0; i < rep.nu.size(); ++i) {
    json r{{"nu", num(rep.nu[i])}, {"certRadius", num(rep.certRadius[i])}};
    r["nuAdjoint"] = std::isnan(rep.nuAdjoint[i]) ? json(nullptr) : json(num(rep.nuAdjoint[i]));
    reps.push_back(std::move(r));
  }
  json out{{"verdict", verdict}, {"delta", num(rep.delta)}, {"representatives", reps}};
  if (rep.witnessRep >= 0) out["witnessRepresentative"] = rep.witnessRep;
  if (rep.verdict == FredholmReport::Verdict::PFredholm)
    out["inverseNormBound"] = num(rep.invNormBound);
  return out;
}

json localization_trace_json(const LocalizationTrace& trace) {
  json schedule{{"depth", trace.schedule.depth},
                {"r", num(trace.schedule.r)},
                {"w", trace.schedule.w}};
  schedule["deltas"] = json::array();
  schedule["tails"] = json::array();
  schedule["windowSizes"] = json::array();
  for (double d : trace.schedule.deltas) schedule["deltas"].push_back(num(d));
  for (double t : trace.schedule.tails) schedule["tails"].push_back(num(t));
  for (Index D : trace.schedule.windowSizes) schedule["windowSizes"].push_back(D);

  json stages = json::array();
  for (const auto& st : trace.stages) {
    json steps = json::array();
    for (const auto& s : st.steps)
      steps.push_back(json{{"k", s.k},
                           {"windowLo", s.windowLo},
                           {"windowLen", s.windowLen},
                           {"tau", num(s.tau)},
                           {"suppLo", s.suppLo},
                           {"suppHi", s.suppHi},
                           {"shift", s.shift},
                           {"formalWitness", s.formalWitness}});
    json residuals = json::array();
    for (double r : st.residuals) residuals.push_back(num(r));
    stages.push_back(json{{"n", st.n},
                          {"representative", st.repIndex},
                          {"nuB", num(st.nuB)},
                          {"nuBCertRadius", num(st.nuBCert)},
                          {"steps", steps},
                          {"totalShift", st.totalShift},
                          {"residuals", residuals},
                          {"matchedRepresentative", st.matchedRep},
                          {"matchShift", st.matchShift}});
  }
  json repNu = json::array();
  for (double v : trace.repNu) repNu.push_back(num(v));
  json out{{"schedule", schedule},
           {"selectorOrder", trace.selectorOrder},
           {"representativeNu", repNu},
           {"stages", stages},
           {"outcome", trace.outcome == LocalizationTrace::Outcome::Localized
                           ? "Localized"
                           : "NoStableSubsequence"},
           {"enumeratedMinNu", num(trace.enumeratedMinNu)},
           {"nuTrendDecreasing", trace.nuTrendDecreasing}};
  if (trace.outcome == LocalizationTrace::Outcome::Localized) {
    out["identifiedRepresentative"] = trace.identifiedRep;
    out["nuC"] = num(trace.nuC);
    out["stableFromStage"] = trace.stableFrom;
  }
  return out;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("IoError", "cannot write '" + path + "'");
  out << content;
}

std::string gamma_grid_csv(const EssentialSpectrumResult& res) {
  std::string out = "re,im,gamma,verdict\n";
  char buf[128];
  for (int iy = 0; iy < res.box.ny; ++iy) {
    double im =
        res.box.im0 + (res.box.im1 - res.box.im0) * iy / static_cast<double>(res.box.ny - 1);
    for (int ix = 0; ix < res.box.nx; ++ix) {
      double re =
          res.box.re0 + (res.box.re1 - res.box.re0) * ix / static_cast<double>(res.box.nx - 1);
      size_t at = static_cast<size_t>(iy) * res.box.nx + ix;
      const char* v = res.verdict[at] == 0 ? "in" : res.verdict[at] == 1 ? "boundary" : "out";
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%s\n", round_sig(re), round_sig(im),
                    round_sig(res.gamma[at]), v);
      out += buf;
    }
  }
  return out;
}

}  // namespace limitops
