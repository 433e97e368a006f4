// Command-line front end. JSON on stdout, errors as JSON on stderr.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bicrit/classify.hpp"
#include "bicrit/fixed_points.hpp"
#include "bicrit/invariants.hpp"
#include "bicrit/parabolic.hpp"
#include "bicrit/render.hpp"

using json = nlohmann::json;
using namespace bicrit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "1.5", "-2i", "i", "0.5-3e-2i" (j works for i as well).
cd parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw UsageError("empty complex number");
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw UsageError("bad complex number: " + s);
    return x;
  };
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : number(re), number(im)};
}

std::vector<cd> parse_complex_list(const std::string& s) {
  std::vector<cd> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

json cj(cd z) { return json::array({z.real(), z.imag()}); }

json cj(const SpherePointd& p) {
  if (p.is_infinity()) return nullptr;
  return cj(p.affine());
}

void print(const json& j) { std::cout << j.dump() << "\n"; }

struct Budget {
  ClassifyBudget b;
  void add(CLI::App* app) {
    app->add_option("--max-iter-hyperbolic", b.max_iter_hyperbolic, "Iteration budget with an attracting target");
    app->add_option("--max-iter-parabolic", b.max_iter_parabolic, "Iteration budget with a parabolic target");
    app->add_option("--eps", b.eps, "Chordal capture radius");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicritical rational maps: invariants, multipliers, classification, rendering"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed recorded with the run; every command is deterministic");

  int n = 2;
  std::string coeffs, X_text, Y_text, lambda_text, alpha_text;
  Budget budget;

  auto* invariants = app.add_subcommand("invariants", "Coefficients a,b,c,d -> X, Y1, Y2, Y");
  invariants->add_option("--n", n)->required();
  invariants->add_option("--coeffs", coeffs, "a,b,c,d (complex as 1+2i)")->required();

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "n, X, Y -> coefficients of a representative");
  reconstruct_cmd->add_option("--n", n)->required();
  reconstruct_cmd->add_option("--X", X_text)->required();
  reconstruct_cmd->add_option("--Y", Y_text)->required();

  auto* pk = app.add_subcommand("pk-table", "The integer polynomials P_0..P_{n+1}");
  pk->add_option("--n", n)->required();

  auto* spectrum = app.add_subcommand("spectrum", "Fixed points, multipliers, sigma_k and indices");
  spectrum->add_option("--n", n)->required();
  spectrum->add_option("--coeffs", coeffs);
  spectrum->add_option("--X", X_text);
  spectrum->add_option("--Y", Y_text);

  auto* per1 = app.add_subcommand("per1", "Coefficients of Y as a polynomial in X on Per_1(lambda)");
  per1->add_option("--n", n)->required();
  per1->add_option("--lambda", lambda_text)->required();
  per1->add_option("--X", X_text, "Evaluate Y at this X instead");

  auto* classify_cmd = app.add_subcommand("classify", "Connectedness / shift locus of a class");
  classify_cmd->add_option("--n", n)->required();
  classify_cmd->add_option("--X", X_text)->required();
  classify_cmd->add_option("--Y", Y_text);
  classify_cmd->add_option("--lambda", lambda_text, "Use the Per_1(lambda) normal form with target z = 1");
  budget.add(classify_cmd);

  double tol = 1e-12;
  int max_m = 100000;
  auto* phi = app.add_subcommand("phi", "Fatou-difference invariant on Per_1(1)");
  phi->add_option("--n", n)->required();
  phi->add_option("--alpha", alpha_text);
  phi->add_option("--X", X_text);
  phi->add_option("--tol", tol);
  phi->add_option("--max-m", max_m);

  std::string job_path, out_prefix;
  int threads = 0;
  bool want_csv = false, want_png = false;
  auto* render_cmd = app.add_subcommand("render", "Render a job file to PGM plus metadata");
  render_cmd->add_option("--job", job_path)->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--out", out_prefix, "Output path prefix")->required();
  render_cmd->add_option("--threads", threads, "Workers (default BICRIT_THREADS or all cores)");
  render_cmd->add_flag("--csv", want_csv, "Also write the label field as CSV");
  render_cmd->add_flag("--png", want_png, "Also write a PNG");

  int depth = 3;
  double spacing = 1e-3;
  std::string petal_out;
  auto* petals = app.add_subcommand("petals", "Nested petal boundaries of z^n + b as CSV");
  petals->add_option("--n", n)->required();
  petals->add_option("--depth", depth)->required();
  petals->add_option("--spacing", spacing);
  petals->add_option("--out", petal_out, "Write to a file instead of stdout");

  auto* symmetry = app.add_subcommand("symmetry", "Distance to the symmetry locus");
  symmetry->add_option("--n", n)->required();
  symmetry->add_option("--X", X_text)->required();
  symmetry->add_option("--Y", Y_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    auto need = [](const std::string& text, const char* flag) {
      if (text.empty()) throw UsageError(std::string("missing ") + flag);
      return parse_complex(text);
    };
    auto coefficient_map = [&] {
      const auto c = parse_complex_list(coeffs);
      if (c.size() != 4) throw UsageError("--coeffs needs four values a,b,c,d");
      return BicritMapd(n, c[0], c[1], c[2], c[3]);
    };

    if (invariants->parsed()) {
      const auto m = invariants_marked(coefficient_map());
      print({{"n", n}, {"X", cj(m.X)}, {"Y1", cj(m.Y1)}, {"Y2", cj(m.Y2)}, {"Y", cj(m.Y1 + m.Y2)}});
    } else if (reconstruct_cmd->parsed()) {
      const auto f = reconstruct(ModuliPointd{n, need(X_text, "--X"), need(Y_text, "--Y")});
      print({{"n", n}, {"a", cj(f.a())}, {"b", cj(f.b())}, {"c", cj(f.c())}, {"d", cj(f.d())}});
    } else if (pk->parsed()) {
      std::cout << pk_table(n).to_string();
    } else if (spectrum->parsed()) {
      BicritMapd f = coeffs.empty() ? reconstruct(ModuliPointd{n, need(X_text, "--X"), need(Y_text, "--Y")})
                                    : coefficient_map();
      const auto s = multiplier_spectrum(f);
      const auto p = moduli_point(f);
      json fixed = json::array(), mult = json::array(), index = json::array();
      for (const auto& e : s.entries) {
        fixed.push_back(cj(e.fixed_point));
        mult.push_back(cj(e.multiplier));
        if (std::abs(e.multiplier - 1.0) < 1e-12) index.push_back(nullptr);
        else index.push_back(cj(fixed_point_index(e.multiplier)));
      }
      json sig = json::array();
      for (int k = 1; k <= n + 1; ++k) sig.push_back(cj(sigma(p, k)));
      print({{"n", n},
             {"fixed_points", fixed},
             {"multipliers", mult},
             {"sigma", sig},
             {"indices", index},
             {"regime", to_string(classify_fixed_regime(s))}});
    } else if (per1->parsed()) {
      const cd lambda = need(lambda_text, "--lambda");
      if (!X_text.empty()) {
        print({{"n", n}, {"lambda", cj(lambda)}, {"X", cj(parse_complex(X_text))},
               {"Y", cj(per1_Y(n, lambda, parse_complex(X_text)))}});
      } else {
        const auto c = per1_polynomial(n, lambda);
        std::cout << "power,re,im\n" << std::setprecision(17);
        for (std::size_t k = 0; k < c.size(); ++k) std::cout << k << ',' << c[k].real() << ',' << c[k].imag() << '\n';
      }
    } else if (classify_cmd->parsed()) {
      const cd X = need(X_text, "--X");
      ClassificationResult r;
      json out{{"n", n}};
      if (!lambda_text.empty()) {
        const cd lambda = parse_complex(lambda_text);
        r = classify_per1_sample(n, lambda, X, budget.b);
        out["Y"] = cj(per1_Y(n, lambda, X));
      } else {
        r = classify(ModuliPointd{n, X, need(Y_text, "--Y")}, budget.b);
      }
      out["locus"] = to_string(r.locus);
      out["iterations"] = json::array({r.iterations_used.first, r.iterations_used.second});
      out["slow_rate"] = r.slow_rate ? json(*r.slow_rate) : json(nullptr);
      out["attracting_point"] = r.attracting_point ? cj(*r.attracting_point) : json(nullptr);
      out["regime"] = r.regime ? json(to_string(*r.regime)) : json(nullptr);
      print(out);
    } else if (phi->parsed()) {
      if (alpha_text.empty() == X_text.empty()) throw UsageError("give exactly one of --alpha, --X");
      const cd alpha = alpha_text.empty() ? alpha_from_X(n, parse_complex(X_text)) : parse_complex(alpha_text);
      const auto r = fatou_phi(n, alpha, tol, max_m);
      const cd X = (double((n - 1) * (n - 1)) - alpha * alpha) / (4.0 * n);
      json out{{"n", n},
               {"alpha", cj(alpha)},
               {"phi", cj(r.phi)},
               {"difference", cj(r.difference)},
               {"iterations", r.iterations},
               {"error_estimate", r.error_estimate},
               {"extrapolated", r.extrapolated}};
      out["asymptotic"] = X == cd(0) ? json(nullptr) : cj(phi_asymptotic(n, X));
      print(out);
    } else if (render_cmd->parsed()) {
      const RenderJob job = load_job(job_path);
      const int workers = threads > 0 ? threads : default_threads();
      const auto t0 = std::chrono::steady_clock::now();
      const RasterImage img = render(job, workers);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_pgm(out_prefix + ".pgm", img, job.kind);
      std::ofstream(out_prefix + ".meta") << metadata_text(job, img, seconds, workers);
      json files = json::array({out_prefix + ".pgm", out_prefix + ".meta"});
      if (want_csv) {
        write_label_csv(out_prefix + ".csv", img);
        files.push_back(out_prefix + ".csv");
      }
      if (want_png) {
        write_png(out_prefix + ".png", img, job.kind);
        files.push_back(out_prefix + ".png");
      }
      print({{"kind", to_string(job.kind)},
             {"width", img.width},
             {"height", img.height},
             {"seconds", seconds},
             {"threads", workers},
             {"content_hash", content_hash(job)},
             {"files", files}});
    } else if (petals->parsed()) {
      const std::string csv = petal_csv(petal_family(n, depth, spacing));
      if (petal_out.empty()) std::cout << csv;
      else std::ofstream(petal_out) << csv;
    } else if (symmetry->parsed()) {
      const auto r = symmetry_residual(ModuliPointd{n, need(X_text, "--X"), need(Y_text, "--Y")});
      const char* comp = r.component == SymmetryComponent::Plus    ? "Plus"
                         : r.component == SymmetryComponent::Minus ? "Minus"
                                                                   : "None";
      print({{"n", n}, {"residual", r.residual}, {"component", comp}});
    }
  } catch (const UsageError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
