#include <CLI11.hpp>
#include <iostream>

#include "limitops/gallery.hpp"
#include "limitops/localize.hpp"
#include "limitops/opspec_io.hpp"
#include "limitops/parallel.hpp"
#include "limitops/report_io.hpp"
#include "limitops/suites.hpp"

using namespace limitops;
using nlohmann::json;

namespace {

double parseP(const std::string& p) {
  if (p == "inf" || p == "Inf" || p == "INF") return std::numeric_limits<double>::infinity();
  try {
    size_t pos = 0;
    double v = std::stod(p, &pos);
    if (pos == p.size()) return v;
  } catch (...) {
  }
  throw ParseError("ParseError", "p must be a number, 0, or 'inf'");
}

Window windowOption(const std::vector<Index>& bounds, bool all) {
  if (all) return Window::all();
  if (bounds.size() != 2)
    throw ParseError("ParseError", "--window needs two integers a b (or use --all)");
  return Window::interval(bounds[0], bounds[1]);
}

void emit(const json& j, const std::string& outPath) {
  std::string text = render_json(j);
  if (!outPath.empty())
    write_text_file(outPath, text);
  else
    std::cout << text;
}

int runSuite(const std::string& name, std::uint64_t seed) {
  auto results = run_suite(name, seed);
  bool allPass = true;
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " - "
              << r.name << " (" << round_sig(r.seconds, 3) << " s)\n    " << r.detail
              << "\n";
    allPass = allPass && r.pass;
  }
  std::cout << (allPass ? "suite PASS\n" : "suite FAIL\n");
  return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitops: certified lower norms, operator spectra and essential spectra "
               "of banded infinite matrices"};
  app.require_subcommand(1);

  std::string opPath, outPath, pStr = "2", mode = "floquet", seqName, candidatePath,
              suiteName;
  std::vector<Index> windowBounds;
  bool allWindow = false;
  double delta = 0.25, r = 2.0, tol = 1e-8, bandApproxError = 0.0;
  Index w = 1, N = 1, D = 0, depth = 4, maxReps = 30, nMax = 100, kMax = 30;
  int nx = 200, ny = 100, samples = 2048, threads = thread_hint(1);
  std::uint64_t seed = 0;
  std::vector<double> box{-3.0, 5.0, -1.0, 1.0};
  std::vector<int> ms{1, 2, 5, 10};

  int exitCode = 0;
  std::function<void()> action;

  auto addOp = [&](CLI::App* cmd) {
    cmd->add_option("--op", opPath, "operator spec (JSON)")->required();
  };
  auto addWindow = [&](CLI::App* cmd) {
    cmd->add_option("--window", windowBounds, "finite window a b")->expected(2);
    cmd->add_flag("--all", allWindow, "use the whole lattice Z");
  };

  {
    auto* cmd = app.add_subcommand("nu", "exact lower norm nu(A|_F) on a finite window");
    addOp(cmd);
    addWindow(cmd);
    cmd->add_option("--p", pStr, "p norm (2; any p for diagonal operators)");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        emit(estimate_json(nu_exact(op, windowOption(windowBounds, allWindow), parseP(pStr))),
             outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("nu-d", "restricted lower norm nu_D(A|_F)");
    addOp(cmd);
    addWindow(cmd);
    cmd->add_option("--D", D, "support diameter bound")->required();
    cmd->add_option("--p", pStr, "p norm");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        emit(estimate_json(
                 nu_restricted(op, windowOption(windowBounds, allWindow), D, parseP(pStr))),
             outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("window-size",
                                   "certified window size D(delta, r, w, p, N)");
    cmd->add_option("--delta", delta, "accuracy budget")->required();
    cmd->add_option("--r", r, "norm bound ||A|| < r")->required();
    cmd->add_option("--w", w, "strict band-width bound")->required();
    cmd->add_option("--p", pStr, "p in {0} u [1, inf]");
    cmd->add_option("--N", N, "lattice dimension (certificate arithmetic only)");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        double p = parseP(pStr);
        auto all = window_size_all(delta, r, w, p, N);
        emit(certificate_json(window_size(delta, r, w, p, N), &all), outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-cert",
                                   "check nu <= nu_D <= nu + delta on a finite window");
    addOp(cmd);
    addWindow(cmd);
    cmd->add_option("--delta", delta, "certificate budget")->required();
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        WindowCertificate cert =
            window_size(delta, wiener_norm_bound(op) + 1e-9, op.bandWidth() + 1, 2.0, 1);
        CertificateReport rep =
            verify_certificate(op, windowOption(windowBounds, allWindow), cert);
        emit(json{{"nu", num(rep.nu)},
                  {"nuD", num(rep.nuD)},
                  {"gap", num(rep.gap)},
                  {"delta", num(rep.delta)},
                  {"pass", rep.pass},
                  {"certificate", certificate_json(cert)}},
             outPath);
        if (!rep.pass) exitCode = 3;
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("certified-nu",
                                   "certified lower-norm estimate within delta");
    addOp(cmd);
    addWindow(cmd);
    cmd->add_option("--delta", delta, "total budget")->required();
    cmd->add_option("--band-approx-error", bandApproxError,
                    "declared ||target - A|| (<= delta/3)");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        emit(estimate_json(certified_lower_norm(op, windowOption(windowBounds, allWindow),
                                                delta, bandApproxError)),
             outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("sigma-op", "enumerate the operator spectrum");
    addOp(cmd);
    cmd->add_option("--max-reps", maxReps, "cap for scheme enumerations");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        OperatorSpectrumEnum en = enumerate_spectrum(op, maxReps);
        std::vector<double> repNu;
        for (const auto& B : en.representatives)
          repNu.push_back(representative_lower_norm(B).value);
        emit(spectrum_enum_json(en, repNu), outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("pconv", "numerical P-strong convergence check");
    cmd->add_option("--seq", seqName,
                    "sequence: shifted-flip | bn-to-identity | periodic-shifts | constant")
        ->required();
    cmd->add_option("--candidate", candidatePath,
                    "candidate operator spec (JSON), or 'identity'");
    cmd->add_option("--m", ms, "window half-widths")->delimiter(',');
    cmd->add_option("--n-max", nMax, "largest sequence index");
    cmd->add_option("--tol", tol, "convergence tolerance");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        GeneralOperator cand =
            candidatePath.empty() || candidatePath == "identity"
                ? GeneralOperator(BandOperator::identity())
                : load_operator_spec(candidatePath).asGeneral();
        auto seq = named_pconv_sequence(seqName, cand);
        emit(pconv_json(pconv_check(seq, cand, ms, nMax, tol)), outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("essspec", "essential spectrum (floquet or gamma grid)");
    addOp(cmd);
    cmd->add_option("--mode", mode, "floquet | gamma");
    cmd->add_option("--box", box, "re0 re1 im0 im1")->expected(4);
    cmd->add_option("--nx", nx, "grid columns");
    cmd->add_option("--ny", ny, "grid rows");
    cmd->add_option("--delta", delta, "gamma budget");
    cmd->add_option("--samples", samples, "Floquet samples per representative");
    cmd->add_option("--max-reps", maxReps, "cap for scheme enumerations");
    cmd->add_option("--out", outPath, "grid CSV (gamma) or report JSON (floquet)");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        if (mode == "floquet") {
          EssentialSpectrumResult res = essential_spectrum_floquet(op, samples, maxReps);
          emit(floquet_result_json(res), outPath);
        } else if (mode == "gamma") {
          GridBox gb{box[0], box[1], box[2], box[3], nx, ny};
          EssentialSpectrumResult res =
              essential_spectrum_gamma(op, gb, delta, samples, maxReps);
          if (!outPath.empty()) write_text_file(outPath, gamma_grid_csv(res));
          std::cout << render_json(floquet_result_json(res));
        } else {
          throw PreconditionError("UnsupportedMode", "mode must be floquet or gamma");
        }
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("fredholm", "P-Fredholm check via limit operators");
    addOp(cmd);
    cmd->add_option("--delta", delta, "resolution")->required();
    cmd->add_option("--max-reps", maxReps, "cap for scheme enumerations");
    cmd->add_option("--out", outPath, "write the report to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        emit(fredholm_json(fredholm_check(op, delta, maxReps)), outPath);
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("localize", "Theorem-8 minimizer localization");
    addOp(cmd);
    cmd->add_option("--depth", depth, "number of stages");
    cmd->add_option("--max-reps", maxReps, "cap for scheme enumerations");
    cmd->add_option("--out", outPath, "write the trace to a file");
    cmd->callback([&] {
      action = [&] {
        auto op = load_operator_spec(opPath).requireBand();
        LocalizationTrace trace = theorem8_localize(op, depth, maxReps);
        emit(localization_trace_json(trace), outPath);
        if (trace.outcome != LocalizationTrace::Outcome::Localized) {
          std::cerr << "NoStableSubsequence: the run did not stabilize at this depth\n";
          exitCode = 3;
        }
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("example13", "non-rich diagonal gallery operator");
    cmd->add_option("--k-max", kMax, "number of superblocks");
    cmd->add_option("--dump", outPath, "write the operator spec JSON");
    cmd->callback([&] {
      action = [&] {
        BandOperator A = gallery_example13(kMax);
        if (!outPath.empty()) {
          write_text_file(outPath, render_json(dump_operator_spec(A)));
          return;
        }
        json rows = json::array();
        for (Index k = 1; k <= kMax; ++k)
          rows.push_back(json{{"k", k},
                              {"lowerNorm", num(1.0 / static_cast<double>(k))},
                              {"norm", num(2.0 + 1.0 / static_cast<double>(k))}});
        OperatorSpectrumEnum en = enumerate_spectrum(A, kMax);
        std::vector<double> repNu;
        for (const auto& B : en.representatives)
          repNu.push_back(representative_lower_norm(B).value);
        std::cout << render_json(json{{"entries", rows},
                                      {"sigmaOp", spectrum_enum_json(en, repNu)}});
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("example14", "rich, not band-dominated gallery operator");
    cmd->add_option("--k-max", kMax, "number of superblocks");
    cmd->add_option("--p", pStr, "p norm (2)");
    cmd->add_option("--dump", outPath, "write the operator spec JSON");
    cmd->callback([&] {
      action = [&] {
        if (parseP(pStr) != 2.0)
          throw PreconditionError("UnsupportedP", "example14 lower norms are exact at p = 2");
        BandOperator A = gallery_example14(kMax);
        if (!outPath.empty()) {
          write_text_file(outPath, render_json(dump_operator_spec(A)));
          return;
        }
        json rows = json::array();
        for (Index k = 1; k <= kMax; ++k) {
          double nu = representative_lower_norm(deflation_periodic_rep(k)).value;
          rows.push_back(json{{"k", k}, {"nuCk", num(nu)}});
        }
        std::cout << render_json(json{{"table", rows},
                                      {"wienerBound", num(wiener_norm_bound(A))}});
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("example16", "flip-operator P-convergence failure demo");
    cmd->add_option("--m", ms, "window half-widths")->delimiter(',');
    cmd->add_option("--n-max", nMax, "largest sequence index");
    cmd->add_option("--dump", outPath, "write the flip spec JSON");
    cmd->callback([&] {
      action = [&] {
        if (!outPath.empty()) {
          write_text_file(outPath,
                          render_json(dump_operator_spec(gallery_example16_flip())));
          return;
        }
        auto seq = named_pconv_sequence("shifted-flip", GeneralOperator{});
        std::cout << render_json(pconv_json(
            pconv_check(seq, GeneralOperator(BandOperator::identity()), ms, nMax, tol)));
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("suite", "run a named acceptance suite");
    cmd->add_option("name", suiteName, "prop6 | example13 | example14 | example16 | "
                                       "essspec-demo | localize-demo | invariants | all")
        ->required();
    cmd->add_option("--seed", seed, "seed salt for randomized suites");
    cmd->callback([&] {
      action = [&] { exitCode = runSuite(suiteName, seed); };
    });
  }

  app.add_option("--threads", threads, "worker hint (LIMITOP_THREADS overrides)");

  try {
    app.parse(argc, argv);
    if (action) action();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exitCode;
}
