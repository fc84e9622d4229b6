// ahgeom: curvature analysis of almost Hermitian charts.
//
// Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
// 3 mathematical domain error, 4 non-convergence.

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ahgeom/errors.hpp"
#include "ahgeom/manifold_file.hpp"
#include "ahgeom/models.hpp"
#include "ahgeom/report.hpp"

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDomain = 3, kConvergence = 4 };

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string token = text.substr(start, comma - start);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ahg::UsageError("malformed --point value '" + text + "'");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

std::vector<std::vector<double>> parse_points(const std::vector<std::string>& texts) {
  std::vector<std::vector<double>> out;
  for (const auto& t : texts) out.push_back(parse_point(t));
  return out;
}

ahg::ModelParameters parse_params(const std::vector<std::string>& texts) {
  ahg::ModelParameters out;
  for (const auto& t : texts) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw ahg::UsageError("--param expects key=value, got '" + t + "'");
    const std::string value = t.substr(eq + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      throw ahg::UsageError("--param value is not a number: '" + t + "'");
    }
    out[t.substr(0, eq)] = v;
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ahg::UsageError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature analysis of almost Hermitian manifolds"};
  app.require_subcommand(1);
  std::string out_path;

  // analyze
  std::string file;
  std::vector<std::string> point_texts;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t samples = 32;
  bool weyl = false;
  auto* analyze = app.add_subcommand("analyze", "Per-point invariants and classification flags");
  analyze->add_option("file", file, "Manifold definition file")->required();
  analyze->add_option("--point", point_texts, "Evaluation point v1,v2,... (repeatable)")->allow_extra_args(false);
  analyze->add_option("--tol", tol, "Tolerance")->capture_default_str();
  analyze->add_option("--seed", seed, "Sampler seed")->capture_default_str();
  analyze->add_option("--samples", samples, "Random samples per point")->capture_default_str();
  analyze->add_flag("--weyl", weyl, "Require the Weyl tensor (error below dimension 4)");
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");

  // classify
  std::size_t point_count = 5;
  auto* classify = app.add_subcommand("classify", "Structure checks and curvature constancy");
  classify->add_option("file", file, "Manifold definition file")->required();
  classify->add_option("--point", point_texts, "Evaluation point v1,v2,... (repeatable)")->allow_extra_args(false);
  classify->add_option("--points", point_count, "Number of sampled points when --point is absent")
      ->capture_default_str();
  classify->add_option("--tol", tol, "Tolerance")->capture_default_str();
  classify->add_option("--seed", seed, "Sampler seed")->capture_default_str();
  classify->add_option("--samples", samples, "Random samples per point")->capture_default_str();
  classify->add_option("--out", out_path, "Write the report here instead of stdout");

  // submanifold
  double dtol = 1e-6;
  auto* sub = app.add_subcommand("submanifold", "Second fundamental form and Codazzi residuals");
  sub->add_option("file", file, "Manifold definition file with an immersion block")->required();
  sub->add_option("--point", point_texts, "Parameter point u1,u2,... (repeatable)")->allow_extra_args(false);
  sub->add_option("--tol", tol, "Tolerance")->capture_default_str();
  sub->add_option("--dtol", dtol, "Tolerance for numerically differentiated quantities")->capture_default_str();
  sub->add_option("--out", out_path, "Write the report here instead of stdout");

  // verify-theorem
  ahg::TheoremOptions theorem;
  auto* verify = app.add_subcommand("verify-theorem", "Null-space certificate in complex dimension m");
  verify->add_option("-m,--m", theorem.m, "Complex dimension (2..6)")->required();
  verify->add_option("--frames", theorem.frames, "Frame budget")->capture_default_str();
  verify->add_option("--seed", theorem.seed, "Sampler seed")->capture_default_str();
  verify->add_option("--tol", theorem.tolerance, "Weyl tolerance")->capture_default_str();
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  // models
  std::string model_name;
  std::vector<std::string> params;
  auto* models = app.add_subcommand("models", "Built-in models");
  models->require_subcommand(1);
  auto* models_list = models->add_subcommand("list", "List models and expected invariants");
  models_list->add_option("--out", out_path, "Write the list here instead of stdout");
  auto* models_emit = models->add_subcommand("emit", "Write a model as a manifold definition file");
  models_emit->add_option("name", model_name, "Model name")->required();
  models_emit->add_option("--param", params, "Parameter key=value (repeatable)")->allow_extra_args(false);
  models_emit->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (analyze->parsed()) {
      ahg::AnalyzeOptions o;
      o.points = parse_points(point_texts);
      o.tolerance = tol;
      o.seed = seed;
      o.samples = samples;
      o.require_weyl = weyl;
      const ahg::ManifoldChart chart = ahg::to_chart(ahg::read_manifold_file(file));
      write_output(ahg::dump_report(ahg::analyze_report(chart, o)), out_path);
    } else if (classify->parsed()) {
      ahg::ClassifyOptions o;
      o.points = parse_points(point_texts);
      o.point_count = point_count;
      o.tolerance = tol;
      o.seed = seed;
      o.samples = samples;
      const ahg::ManifoldChart chart = ahg::to_chart(ahg::read_manifold_file(file));
      write_output(ahg::dump_report(ahg::classify_report(chart, o)), out_path);
    } else if (sub->parsed()) {
      const ahg::ManifoldFile mf = ahg::read_manifold_file(file);
      ahg::SubmanifoldOptions o;
      o.points = parse_points(point_texts);
      o.tolerance = tol;
      o.derivative_tolerance = dtol;
      if (mf.immersion) o.domain_hint = mf.immersion->domain_hint;
      const ahg::Immersion imm = ahg::to_immersion(mf);
      write_output(ahg::dump_report(ahg::submanifold_report(imm, o)), out_path);
    } else if (verify->parsed()) {
      const ahg::TheoremRun run = ahg::verify_theorem_report(theorem);
      write_output(ahg::dump_report(run.report), out_path);
      return run.pass ? kOk : kFailed;
    } else if (models_list->parsed()) {
      write_output(ahg::dump_report(ahg::models_list_report()), out_path);
    } else if (models_emit->parsed()) {
      const ahg::ManifoldChart chart = ahg::instantiate(model_name, parse_params(params));
      write_output(ahg::dump_manifold_file(ahg::from_chart(chart)), out_path);
    }
  } catch (const ahg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ahg::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ahg::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const ahg::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
