#pragma once

#include <json.hpp>
#include <string>

#include "limitops/localize.hpp"
#include "limitops/lower_norm.hpp"
#include "limitops/spectral.hpp"

namespace limitops {

// All floating-point report output is rounded to 12 significant digits so
// identical runs serialize byte-identically.
double round_sig(double x, int digits = 12);
nlohmann::json num(double x);
nlohmann::json num(Complex z);

nlohmann::json certificate_json(const WindowCertificate& cert,
                                const std::vector<WindowCertificate>* allMethods = nullptr);
nlohmann::json estimate_json(const LowerNormEstimate& est);
nlohmann::json spectrum_enum_json(const OperatorSpectrumEnum& en,
                                  const std::vector<double>& repNu);
nlohmann::json pconv_json(const PConvergenceReport& rep);
nlohmann::json floquet_result_json(const EssentialSpectrumResult& res);
nlohmann::json fredholm_json(const FredholmReport& rep);
nlohmann::json localization_trace_json(const LocalizationTrace& trace);

std::string render_json(const nlohmann::json& j);  // dump(2) + trailing newline
void write_text_file(const std::string& path, const std::string& content);
// CSV with columns re, im, gamma, verdict for a gamma grid.
std::string gamma_grid_csv(const EssentialSpectrumResult& res);

}  // namespace limitops
