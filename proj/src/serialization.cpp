#include "codiff/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace codiff {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<PAExpr> argsFromJson(const Json& j) {
  const Json& args = field(j, "args");
  if (!args.is_array() || args.empty()) throw ParseError("\"args\" must be a nonempty array");
  std::vector<PAExpr> out;
  for (const auto& a : args) out.push_back(exprFromJson(a));
  return out;
}

// NaN serializes as null in JSON.
Json scalar(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json augJson(const AugVector& p) { return {{"a", p.a}, {"v", codiff::toJson(p.v)}}; }

std::string csvNumber(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Json toJson(const Vector& v) {
  Json out = Json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Vector vectorFromJson(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<int>(k)) = number(j[k], "entry");
  return v;
}

Json toJson(const DCForm& f) {
  Json plus = Json::array();
  Json minus = Json::array();
  for (const auto& p : f.plus) plus.push_back({{"a", p.a}, {"v", toJson(p.v)}});
  for (const auto& q : f.minus) minus.push_back({{"b", q.a}, {"w", toJson(q.v)}});
  return {{"d", f.d}, {"plus", plus}, {"minus", minus}};
}

DCForm dcFromJson(const Json& j) {
  const Json& d = field(j, "d");
  if (!d.is_number_integer()) throw ParseError("\"d\" must be an integer");
  std::vector<AugVector> plus;
  std::vector<AugVector> minus;
  const Json& jp = field(j, "plus");
  const Json& jm = field(j, "minus");
  if (!jp.is_array() || !jm.is_array()) throw ParseError("\"plus\"/\"minus\" must be arrays");
  for (const auto& p : jp) plus.emplace_back(number(field(p, "a"), "a"), vectorFromJson(field(p, "v")));
  for (const auto& q : jm) minus.emplace_back(number(field(q, "b"), "b"), vectorFromJson(field(q, "w")));
  return DCForm(d.get<int>(), std::move(plus), std::move(minus));
}

Json toJson(const PAExpr& e) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        auto args = [](const std::vector<PAExpr>& children) {
          Json out = Json::array();
          for (const auto& c : children) out.push_back(toJson(c));
          return out;
        };
        if constexpr (std::is_same_v<T, PAExpr::Affine>) {
          return {{"op", "affine"}, {"a", n.a}, {"v", toJson(n.v)}};
        } else if constexpr (std::is_same_v<T, PAExpr::Const>) {
          return {{"op", "const"}, {"c", n.c}, {"d", n.d}};
        } else if constexpr (std::is_same_v<T, PAExpr::Scale>) {
          return {{"op", "scale"}, {"lambda", n.lambda}, {"arg", toJson(n.child())}};
        } else if constexpr (std::is_same_v<T, PAExpr::Sum>) {
          return {{"op", "sum"}, {"args", args(n.children)}};
        } else if constexpr (std::is_same_v<T, PAExpr::Max>) {
          return {{"op", "max"}, {"args", args(n.children)}};
        } else {
          return {{"op", "min"}, {"args", args(n.children)}};
        }
      },
      e.node());
}

PAExpr exprFromJson(const Json& j) {
  const Json& op = field(j, "op");
  if (!op.is_string()) throw ParseError("\"op\" must be a string");
  const std::string name = op.get<std::string>();
  if (name == "affine") return PAExpr::affine(number(field(j, "a"), "a"), vectorFromJson(field(j, "v")));
  if (name == "const") {
    const Json& d = field(j, "d");
    if (!d.is_number_integer()) throw ParseError("\"d\" must be an integer");
    return PAExpr::constant(number(field(j, "c"), "c"), d.get<int>());
  }
  if (name == "scale") {
    return PAExpr::scale(number(field(j, "lambda"), "lambda"), exprFromJson(field(j, "arg")));
  }
  if (name == "sum") return PAExpr::sum(argsFromJson(j));
  if (name == "max") return PAExpr::max(argsFromJson(j));
  if (name == "min") return PAExpr::min(argsFromJson(j));
  throw ParseError("unknown op \"" + name + "\"");
}

Problem problemFromJson(const Json& j) {
  Problem p;
  if (j.is_object() && j.contains("op")) {
    p.expr = exprFromJson(j);
    p.dc = exprToDC(*p.expr);
  } else {
    p.dc = dcFromJson(j);
  }
  return p;
}

Problem loadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return problemFromJson(j);
}

Json toJson(const Certificate& c) {
  return {{"point", toJson(c.point)},
          {"a", c.a},
          {"tol", c.tol},
          {"holds", c.holds},
          {"witness", c.witness}};
}

Json toJson(const MHDTrace& t) {
  Json steps = Json::array();
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const auto& s = t.steps[n];
    steps.push_back({{"n", n},
                     {"x", toJson(s.x)},
                     {"f", s.f},
                     {"a", s.direction.a},
                     {"v", toJson(s.direction.v)},
                     {"norm", s.norm},
                     {"alpha", s.alpha},
                     {"k", s.k}});
  }
  return {{"method", "mhd"},
          {"status", toString(t.status)},
          {"iterations", t.iterations()},
          {"final_value", t.final().f},
          {"final_point", toJson(t.final().x)},
          {"steps", steps}};
}

Json toJson(const GlobalRun& r) {
  Json iters = Json::array();
  for (std::size_t n = 0; n < r.iterations.size(); ++n) {
    const auto& it = r.iterations[n];
    Json proj = Json::array();
    for (const auto& p : it.projections) {
      proj.push_back({{"j", p.j}, {"z", augJson(p.z)}, {"a", p.p.a}, {"v", toJson(p.p.v)}});
    }
    iters.push_back({{"n", n},
                     {"x", toJson(it.x)},
                     {"f", it.f},
                     {"projections", proj},
                     {"active_count", it.active_count},
                     {"j_chosen", it.chosen},
                     {"a_chosen", it.a_chosen},
                     {"step_norm", it.step_norm},
                     {"alpha", it.alpha},
                     {"mgcd_trial", scalar(it.mgcd_trial)}});
  }
  Json discards = Json::array();
  for (const auto& d : r.discards) discards.push_back({{"iteration", d.iteration}, {"j", d.j}});
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"iteration", v.iteration}, {"j", v.j}, {"a", v.a}});
  }
  Json out = {{"status", toString(r.status)},
              {"iterations", r.steps()},
              {"final_value", r.finalValue()},
              {"final_point", toJson(r.finalPoint())},
              {"tol", r.tol},
              {"trace", iters},
              {"discards", discards},
              {"discard_violations", violations}};
  if (r.status == GlobalRun::Status::GlobalMin) out["certificate"] = toJson(r.certificate);
  if (r.status == GlobalRun::Status::UnboundedBelow) out["ray"] = toJson(r.ray);
  return out;
}

std::string toCsv(const MHDTrace& t) {
  std::ostringstream os;
  os << "n,f,norm,alpha,k\n";
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const auto& s = t.steps[n];
    os << n << ',' << csvNumber(s.f) << ',' << csvNumber(s.norm) << ',' << csvNumber(s.alpha)
       << ',' << s.k << '\n';
  }
  return os.str();
}

std::string toCsv(const GlobalRun& r) {
  std::ostringstream os;
  os << "n,f,j_chosen,a_chosen,step_norm,active_count\n";
  for (std::size_t n = 0; n < r.iterations.size(); ++n) {
    const auto& it = r.iterations[n];
    os << n << ',' << csvNumber(it.f) << ',' << it.chosen << ',' << csvNumber(it.a_chosen) << ','
       << csvNumber(it.step_norm) << ',' << it.active_count << '\n';
  }
  return os.str();
}

}  // namespace codiff
