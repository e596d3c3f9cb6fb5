#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "codiff/mgcd.hpp"
#include "codiff/mhd.hpp"
#include "codiff/pa_function.hpp"

namespace codiff {

using Json = nlohmann::json;

class ParseError : public Error {
 public:
  using Error::Error;
};

Json toJson(const Vector& v);
Vector vectorFromJson(const Json& j);

/// {"d": int, "plus": [{"a", "v"}], "minus": [{"b", "w"}]}
Json toJson(const DCForm& f);
DCForm dcFromJson(const Json& j);

/// Tagged tree on "op": affine{a, v}, const{c, d}, scale{lambda, arg},
/// sum/max/min{args}.
Json toJson(const PAExpr& e);
PAExpr exprFromJson(const Json& j);

/// A problem file holds either a DCForm or a PAExpr; the latter is converted.
struct Problem {
  DCForm dc;
  std::optional<PAExpr> expr;
};

Problem problemFromJson(const Json& j);
Problem loadProblem(const std::string& path);

Json toJson(const Certificate& c);
Json toJson(const MHDTrace& t);
Json toJson(const GlobalRun& r);

/// Columns n,f,norm,alpha,k.
std::string toCsv(const MHDTrace& t);
/// Columns n,f,j_chosen,a_chosen,step_norm,active_count.
std::string toCsv(const GlobalRun& r);

}  // namespace codiff
