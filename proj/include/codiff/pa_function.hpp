#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "codiff/types.hpp"

namespace codiff {

/// Piecewise affine function in max-plus-min form
///
///   f(x) = max_i (a_i + <v_i, x>) + min_j (b_j + <w_j, x>).
///
/// `plus` holds the (a_i, v_i), `minus` holds the (b_j, w_j). This is the
/// persisted representation; global codifferentials are always derived.
struct DCForm {
  int d = 0;
  std::vector<AugVector> plus;
  std::vector<AugVector> minus;

  DCForm() = default;
  DCForm(int dim, std::vector<AugVector> plus_, std::vector<AugVector> minus_);

  /// Checks nonempty parts, matching dimensions and finite entries.
  void validate() const;

  double convexPart(const Vector& x) const;   // max_i (a_i + <v_i, x>)
  double concavePart(const Vector& x) const;  // min_j (b_j + <w_j, x>)
};

/// max_i (a_i + <v_i, x>) + min_j (b_j + <w_j, x>).
double eval(const DCForm& f, const Vector& x);

/// Global codifferential of a DCForm at `at`:
///   hypo_i  = (a_i - convexPart(at)  + <v_i, at>, v_i)
///   hyper_j = (b_j - concavePart(at) + <w_j, at>, w_j)
/// The vertex order follows the plus/minus order of the source.
struct GlobalCodiff {
  Vector at;
  VertexSet hypo;
  VertexSet hyper;
};

GlobalCodiff globalCodiff(const DCForm& f, const Vector& x);

/// Moves a global codifferential computed at gc.at to the point y without
/// touching the DC decomposition: each vertex (a, v) becomes
/// (a + F(gc.at) - F(y) + <v, y - gc.at>, v), F being the convex (resp.
/// concave) part.
GlobalCodiff translate(const DCForm& f, const GlobalCodiff& gc, const Vector& y);

/// max over hypo of (a + <v, dx>) + min over hyper of (b + <w, dx>).
/// Equals eval(f, x + dx) - eval(f, x) exactly for a global codifferential.
double codiffExpansion(const GlobalCodiff& gc, const Vector& dx);

// ---------------------------------------------------------------------------
// Calculus of global codifferentials, expressed on DC decompositions.

enum class AffineFlavor { Hypo, Hyper };

struct CalculusOptions {
  // Upper bound on the number of pieces any single combination may produce.
  std::size_t piece_cap = 1'000'000;
  // Pieces closer than this (coordinatewise) are merged.
  double merge_tol = 1e-12;
};

/// a + <v, x> as a DCForm. Hypo: plus={(a,v)}, minus={(0,0)}.
/// Hyper: plus={(a,0)}, minus={(0,v)}.
DCForm codiffAffine(double a, const Vector& v, AffineFlavor flavor);

DCForm codiffScale(double lambda, const DCForm& f);
DCForm codiffSum(const std::vector<DCForm>& fs, const CalculusOptions& opts = {});
DCForm codiffMax(const std::vector<DCForm>& fs, const CalculusOptions& opts = {});
DCForm codiffMin(const std::vector<DCForm>& fs, const CalculusOptions& opts = {});

/// Removes pieces that repeat an earlier piece to within `tol`; the first
/// occurrence keeps its position.
std::vector<AugVector> mergeDuplicates(const std::vector<AugVector>& pieces, double tol);

// ---------------------------------------------------------------------------
// Expression trees over affine atoms.

class PAExpr {
 public:
  struct Affine {
    double a;
    Vector v;
  };
  struct Const {
    double c;
    int d;
  };
  struct Scale {
    double lambda;
    std::vector<PAExpr> operand;  // exactly one element
    const PAExpr& child() const { return operand.front(); }
  };
  struct Sum {
    std::vector<PAExpr> children;
  };
  struct Max {
    std::vector<PAExpr> children;
  };
  struct Min {
    std::vector<PAExpr> children;
  };
  using Node = std::variant<Affine, Const, Scale, Sum, Max, Min>;

  static PAExpr affine(double a, Vector v);
  static PAExpr constant(double c, int d);
  static PAExpr scale(double lambda, PAExpr child);
  static PAExpr sum(std::vector<PAExpr> children);
  static PAExpr max(std::vector<PAExpr> children);
  static PAExpr min(std::vector<PAExpr> children);

  const Node& node() const { return *node_; }
  int dim() const;
  int depth() const;

  /// Direct evaluation of the tree.
  double eval(const Vector& x) const;

 private:
  explicit PAExpr(Node n);
  std::shared_ptr<const Node> node_;
};

/// Builds a DC decomposition of `e` bottom-up with the calculus rules.
/// Affine atoms take the hypo flavor under a Max and the hyper flavor under
/// a Min (the choice that keeps piece counts small).
DCForm exprToDC(const PAExpr& e, const CalculusOptions& opts = {});

}  // namespace codiff
