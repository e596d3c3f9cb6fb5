#include "codiff/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "codiff/generator.hpp"
#include "codiff/mgcd.hpp"
#include "codiff/mhd.hpp"
#include "codiff/polyhedral.hpp"
#include "codiff/serialization.hpp"

namespace codiff {

namespace {

constexpr double kOracleTol = 1e-6;

struct CommonOptions {
  std::string problem;
  std::string generate;
  double scale = 1.0;
  std::string x0;
  std::optional<double> tol;
  int max_iter = 10000;
  double mu = std::numeric_limits<double>::infinity();
  bool verify_discards = false;
  double sigma = 0.1;
  double gamma = 0.5;
};

std::vector<double> parseList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw InvalidArgument(std::string(what) + ": cannot parse \"" + item + "\"");
    }
    out.push_back(value);
  }
  return out;
}

Vector parsePoint(const std::string& text, int d) {
  const std::vector<double> xs = parseList(text, "point");
  Vector x(static_cast<int>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) x(static_cast<int>(k)) = xs[k];
  requireDim(x, d, "point");
  return x;
}

GeneratedPA generateFromArgs(const std::string& text, double scale) {
  const std::vector<double> p = parseList(text, "--generate");
  if (p.size() != 4) throw InvalidArgument("--generate expects d,l,s,seed");
  for (double v : p) {
    if (v != std::floor(v) || v < 0) throw InvalidArgument("--generate expects integers");
  }
  return generatePA(static_cast<std::uint64_t>(p[3]), static_cast<int>(p[0]),
                    static_cast<int>(p[1]), static_cast<int>(p[2]), scale);
}

DCForm loadSource(const CommonOptions& o, std::ostream& err) {
  if (o.problem.empty() == o.generate.empty()) {
    throw InvalidArgument("exactly one of --problem and --generate is required");
  }
  if (!o.problem.empty()) return loadProblem(o.problem).dc;
  GeneratedPA g = generateFromArgs(o.generate, o.scale);
  err << "generated instance: d=" << g.f.d << " |I|=" << g.f.plus.size()
      << " |J|=" << g.f.minus.size() << " f*=" << g.f_star << "\n";
  return g.f;
}

Vector startPoint(const CommonOptions& o, int d) {
  return o.x0.empty() ? Vector(Vector::Zero(d)) : parsePoint(o.x0, d);
}

GlobalConfig globalConfig(const CommonOptions& o) {
  GlobalConfig cfg;
  if (o.tol) cfg.tol = *o.tol;
  cfg.max_iter = o.max_iter;
  cfg.mu = o.mu;
  cfg.verify_discards = o.verify_discards;
  return cfg;
}

MHDConfig mhdConfig(const CommonOptions& o) {
  MHDConfig cfg;
  if (o.tol) cfg.stop_tol = *o.tol;
  cfg.max_iter = o.max_iter;
  cfg.sigma = o.sigma;
  cfg.gamma = o.gamma;
  return cfg;
}

void addSourceOptions(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--problem", o.problem, "Problem file (DCForm or PAExpr JSON)");
  cmd->add_option("--generate", o.generate, "Random bounded-below instance d,l,s,seed");
  cmd->add_option("--scale", o.scale, "Offset range of generated instances")->capture_default_str();
}

void addRunOptions(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--x0", o.x0, "Starting point, comma separated (default: origin)");
  cmd->add_option("--tol", o.tol,
                  "Tolerance: relative discard tolerance for mgcd/mcd (default 1e-9), "
                  "stopping tolerance on the min-norm point for mhd (default 1e-8)");
  cmd->add_option("--max-iter", o.max_iter, "Iteration limit")->capture_default_str();
  cmd->add_option("--mu", o.mu, "Hyperdifferential cut for mcd (default: infinity)");
  cmd->add_flag("--verify-discards", o.verify_discards,
                "Re-project discarded pieces at every iterate (mgcd)");
  cmd->add_option("--sigma", o.sigma, "Armijo parameter for mhd")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Backtracking factor for mhd")->capture_default_str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write " + path);
  file << text;
}

struct MethodOutcome {
  std::string status;
  int iterations = 0;
  double value = std::numeric_limits<double>::quiet_NaN();
  Vector point;
  double min_norm = 0.0;  // mhd: |(a, v)| at the final point
  int exit = kExitOk;
  std::string text;  // serialized trace
};

MethodOutcome runMethod(const std::string& method, const DCForm& f, const CommonOptions& o,
                        const std::string& format) {
  const Vector x0 = startPoint(o, f.d);
  MethodOutcome res;
  if (method == "mhd") {
    const MHDTrace t = mhdRun(convexFromDC(f), x0, mhdConfig(o));
    res.status = toString(t.status);
    res.iterations = t.iterations();
    res.value = t.final().f;
    res.point = t.final().x;
    res.min_norm = t.final().norm;
    res.exit = t.status == MHDTrace::Status::IterLimit ? kExitIterLimit : kExitOk;
    res.text = format == "csv" ? toCsv(t) : toJson(t).dump(2) + "\n";
    return res;
  }
  const GlobalRun r = method == "mgcd" ? mgcdRun(f, x0, globalConfig(o)) : mcdRun(f, x0, globalConfig(o));
  res.status = toString(r.status);
  res.iterations = r.steps();
  res.value = r.finalValue();
  res.point = r.finalPoint();
  switch (r.status) {
    case GlobalRun::Status::GlobalMin:
    case GlobalRun::Status::Stationary:
      res.exit = kExitOk;
      break;
    case GlobalRun::Status::UnboundedBelow:
      res.exit = kExitUnbounded;
      break;
    case GlobalRun::Status::IterLimit:
      res.exit = kExitIterLimit;
      break;
  }
  res.text = format == "csv" ? toCsv(r) : toJson(r).dump(2) + "\n";
  return res;
}

int cmdSolve(const CommonOptions& o, const std::string& method, const std::string& format,
             const std::string& outPath, std::ostream& out, std::ostream& err) {
  const DCForm f = loadSource(o, err);
  MethodOutcome res = runMethod(method, f, o, format);
  err << method << ": " << res.status << " after " << res.iterations
      << " iterations, f = " << std::setprecision(12) << res.value << "\n";

  const bool claimsMin = res.status == "GlobalMin" ||
                         (method == "mhd" && res.exit == kExitOk);
  if (claimsMin || res.exit == kExitUnbounded) {
    const LPOutcome oracle = paGlobalMin(f);
    if (res.exit == kExitUnbounded && oracle.bounded()) {
      err << "oracle disagrees: LP reports a finite minimum " << oracle.value << "\n";
      res.exit = kExitCheckFailed;
    } else if (claimsMin) {
      if (!oracle.bounded()) {
        err << "oracle disagrees: LP reports unbounded below\n";
        res.exit = kExitCheckFailed;
      } else if (std::abs(res.value - oracle.value) >
                 kOracleTol + res.min_norm * (1.0 + (res.point - oracle.argmin).norm())) {
        err << "oracle disagrees: LP minimum " << oracle.value << "\n";
        res.exit = kExitCheckFailed;
      } else {
        err << "verified against LP oracle (f* = " << oracle.value << ")\n";
      }
    }
  }
  emit(res.text, outPath, out);
  return res.exit;
}

int cmdCertify(const CommonOptions& o, const std::string& point, std::ostream& out,
               std::ostream& err) {
  const DCForm f = loadSource(o, err);
  const Vector x = parsePoint(point, f.d);
  const double tol = o.tol.value_or(1e-9) * std::max(1.0, std::abs(eval(f, x)));
  const Certificate cert = checkGlobalOpt(f, x, tol);
  const bool stationary = checkInfStationary(f, x, tol);
  Json j = toJson(cert);
  j["value"] = eval(f, x);
  j["inf_stationary"] = stationary;
  j["verdict"] = cert.holds ? "GLOBAL" : "NOT_GLOBAL";
  err << (cert.holds ? "GLOBAL" : "NOT_GLOBAL") << "\n";
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmdCompare(const CommonOptions& o, const std::vector<std::string>& methods,
               const std::string& outPath, std::ostream& out, std::ostream& err) {
  const DCForm f = loadSource(o, err);
  const LPOutcome oracle = paGlobalMin(f);
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "method,status,iterations,final_value,wall_time_s,oracle_gap\n";
  for (const auto& m : methods) {
    if (m == "mhd" && f.minus.size() != 1) {
      err << "mhd skipped: needs a convex instance (one minus piece)\n";
      csv << m << ",Skipped,0,nan,0,nan\n";
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const MethodOutcome res = runMethod(m, f, o, "json");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double gap = oracle.bounded() ? res.value - oracle.value
                                        : std::numeric_limits<double>::quiet_NaN();
    csv << m << ',' << res.status << ',' << res.iterations << ',' << res.value << ',' << secs
        << ',' << gap << '\n';
    err << m << ": " << res.status << "\n";
  }
  emit(csv.str(), outPath, out);
  return kExitOk;
}

bool sameVertexSet(const VertexSet& got, const std::vector<std::vector<double>>& want) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    bool found = false;
    for (const auto& p : got) {
      double dist = std::abs(p.a - w[0]);
      for (int k = 0; k < p.dim(); ++k) dist = std::max(dist, std::abs(p.v(k) - w[k + 1]));
      if (dist <= 1e-12) found = true;
    }
    if (!found) return false;
  }
  return true;
}

int cmdReproduceExample(std::ostream& out, std::ostream& err) {
  const DCForm f = exprToDC(nestedBoxMinExample());
  const Vector x0 = Vector::Constant(2, 2.0);
  const GlobalCodiff gc = globalCodiff(f, x0);

  const std::vector<std::vector<double>> hypo = {
      {0, 3, 0},   {-4, 1, 0},  {0, 2, 1},  {-4, 2, -1}, {0, -1, 0}, {-4, -3, 0},
      {0, -2, 1},  {-4, -2, -1}, {0, 1, 1},  {-4, -1, 1}, {0, 0, 2},  {-4, 0, 0},
      {0, 1, -1},  {-4, -1, -1}, {0, 0, 0},  {-4, 0, -2}};
  const std::vector<std::vector<double>> hyper = {{1, 2, 0}, {1, -2, 0}, {1, 0, 1}, {1, 0, -1},
                                                  {0, -1, 0}, {4, 1, 0}, {0, 0, -1}, {4, 0, 1}};

  Json checks = Json::array();
  bool ok = true;
  auto check = [&](const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"pass", pass}});
    err << (pass ? "PASS " : "FAIL ") << name << "\n";
    ok = ok && pass;
  };

  check("hypodifferential at (2,2) has the 16 listed vertices", sameVertexSet(gc.hypo, hypo));
  check("hyperdifferential at (2,2) has the 8 listed vertices", sameVertexSet(gc.hyper, hyper));
  const AugVector z1 = hyperGrad(f, x0, 0);
  check("z_1(2,2) = (1,2,0)", (z1 - AugVector(1.0, Vector{{2.0, 0.0}})).norm() <= 1e-12);
  const AugVector p1 = projectPiece(gc, 0).point;
  const AugVector exact(-1.0 / 9.0, Vector{{2.0 / 9.0, 2.0 / 9.0}});
  check("(a_1, v_1)(2,2) = (-1/9, 2/9, 2/9)", (p1 - exact).norm() <= 1e-9);
  check("(a_1, v_1)(2,2) rounds to (-0.1111, 0.2222, 0.2222)",
        std::abs(p1.a + 0.1111) <= 1e-3 && std::abs(p1.v(0) - 0.2222) <= 1e-3 &&
            std::abs(p1.v(1) - 0.2222) <= 1e-3);
  const GlobalRun run = mgcdRun(f, x0);
  const Vector x1 = run.iterations.size() > 1 ? run.iterations[1].x : run.finalPoint();
  check("MGCD certifies a global minimum after one step",
        run.status == GlobalRun::Status::GlobalMin && run.steps() == 1);
  check("x_1 = (0,0)", x1.norm() <= 1e-12);
  check("(2,2) is not a global minimizer", !checkGlobalOpt(f, x0, 1e-9).holds);
  check("(2,2) is inf-stationary", checkInfStationary(f, x0, 1e-9));
  check("(0,0) is a global minimizer", checkGlobalOpt(f, Vector::Zero(2), 1e-9).holds);

  const Json j = {{"x0", toJson(x0)},     {"z1", {z1.a, z1.v(0), z1.v(1)}},
                  {"a1", p1.a},            {"v1", toJson(p1.v)},
                  {"x1", toJson(x1)},      {"f_x1", eval(f, x1)},
                  {"status", toString(run.status)}, {"checks", checks},
                  {"passed", ok}};
  out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmdGenerate(const CommonOptions& o, const std::string& outPath, std::ostream& out,
                std::ostream& err) {
  if (o.generate.empty()) throw InvalidArgument("--generate d,l,s,seed is required");
  const GeneratedPA g = generateFromArgs(o.generate, o.scale);
  err << "f* = " << std::setprecision(17) << g.f_star << ", theta_hat = " << g.theta_hat << "\n";
  emit(toJson(g.f).dump(2) + "\n", outPath, out);
  return kExitOk;
}

}  // namespace

PAExpr nestedBoxMinExample() {
  auto e = [](double a, double v1, double v2) { return PAExpr::affine(a, Vector{{v1, v2}}); };
  const PAExpr g1 = PAExpr::max({PAExpr::max({e(0, 1, 0), e(0, -1, 0)}),
                                 PAExpr::max({e(0, 0, 1), e(0, 0, -1)})});
  const PAExpr g2 = PAExpr::sum(
      {PAExpr::constant(1.0, 2),
       PAExpr::max({PAExpr::scale(2.0, PAExpr::max({e(2, -1, 0), e(-2, 1, 0)})),
                    PAExpr::max({e(2, 0, -1), e(-2, 0, 1)})})});
  return PAExpr::min({g1, g2});
}

ConvexFn convexFromDC(const DCForm& f) {
  f.validate();
  if (f.minus.size() != 1) {
    throw InvalidArgument("convexFromDC: the function must have a single minus piece");
  }
  std::vector<AugVector> pieces;
  for (const auto& p : f.plus) pieces.push_back(p + f.minus.front());
  auto value = [pieces](const Vector& x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) best = std::max(best, p.a + p.v.dot(x));
    return best;
  };
  auto hypodiff = [pieces, value](const Vector& x) {
    const double fx = value(x);
    std::vector<AugVector> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces) out.emplace_back(p.a + p.v.dot(x) - fx, p.v);
    return VertexSet(std::move(out));
  };
  return ConvexFn::custom(f.d, value, hypodiff, 0.0);
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Codifferential descent methods for nonsmooth minimization"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string method = "mgcd";
  std::string format = "json";
  std::string outPath;
  std::string point;
  std::vector<std::string> methods{"mgcd", "mcd"};

  auto* solve = app.add_subcommand("solve", "Minimize a piecewise affine function");
  addSourceOptions(solve, o);
  addRunOptions(solve, o);
  solve->add_option("--method", method, "Method")
      ->check(CLI::IsMember({"mhd", "mcd", "mgcd"}))
      ->capture_default_str();
  solve->add_option("--format", format, "Trace format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  solve->add_option("--out", outPath, "Write the trace here instead of stdout");

  auto* certify = app.add_subcommand("certify", "Global optimality certificate at a point");
  addSourceOptions(certify, o);
  certify->add_option("--point", point, "Point, comma separated")->required();
  certify->add_option("--tol", o.tol, "Relative tolerance (default 1e-9)");

  auto* compare = app.add_subcommand("compare", "Run several methods on one problem (CSV)");
  addSourceOptions(compare, o);
  addRunOptions(compare, o);
  compare->add_option("--methods", methods, "Methods to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"mhd", "mcd", "mgcd"}))
      ->capture_default_str();
  compare->add_option("--out", outPath, "Write the CSV here instead of stdout");

  auto* reproduce =
      app.add_subcommand("reproduce-example", "Run the two-dimensional worked example");

  auto* generate = app.add_subcommand("generate", "Write a random bounded-below instance");
  generate->add_option("--generate", o.generate, "d,l,s,seed")->required();
  generate->add_option("--scale", o.scale, "Offset range")->capture_default_str();
  generate->add_option("--out", outPath, "Write the problem here instead of stdout");

  std::vector<std::string> argvStore{"codiff"};
  argvStore.insert(argvStore.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argvStore) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) return cmdSolve(o, method, format, outPath, out, err);
    if (*certify) return cmdCertify(o, point, out, err);
    if (*compare) return cmdCompare(o, methods, outPath, out, err);
    if (*reproduce) return cmdReproduceExample(out, err);
    if (*generate) return cmdGenerate(o, outPath, out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonFinite& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitInputError;
}

}  // namespace codiff
