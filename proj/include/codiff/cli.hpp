#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codiff/convex_hypodiff.hpp"
#include "codiff/pa_function.hpp"

namespace codiff {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUnbounded = 2,
  kExitIterLimit = 3,
  kExitInputError = 4,
};

/// min{ max{|x1|, |x2|}, 1 + max{2|x1 - 2|, |x2 - 2|} } on R^2.
PAExpr nestedBoxMinExample();

/// A convex PA function (single minus piece) as a ConvexFn whose
/// hypodifferential is the global one. Throws InvalidArgument if f has more
/// than one minus piece.
ConvexFn convexFromDC(const DCForm& f);

/// Entry point of the tool. stdout receives machine output, stderr progress.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codiff
