#include "codiff/pa_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace codiff {

namespace {

double affineValue(const AugVector& p, const Vector& x) { return p.a + p.v.dot(x); }

void requireSameDim(const std::vector<DCForm>& fs, const char* what) {
  if (fs.empty()) throw InvalidArgument(std::string(what) + ": empty argument list");
  for (const auto& f : fs) {
    if (f.d != fs.front().d) {
      throw DimensionMismatch(std::string(what) + ": operands of different dimension");
    }
  }
}

std::vector<AugVector> negated(const std::vector<AugVector>& pieces) {
  std::vector<AugVector> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back(-p);
  return out;
}

std::size_t checkedProduct(const std::vector<const std::vector<AugVector>*>& lists,
                           std::size_t cap) {
  std::size_t total = 1;
  for (const auto* l : lists) {
    if (l->empty()) return 0;
    if (total > cap / l->size()) {
      throw SizeOverflow("piece count exceeds the configured cap of " + std::to_string(cap));
    }
    total *= l->size();
  }
  if (total > cap) {
    throw SizeOverflow("piece count exceeds the configured cap of " + std::to_string(cap));
  }
  return total;
}

// All sums p_1 + ... + p_k with p_r drawn from lists[r]; the last list
// varies fastest.
void appendMinkowski(const std::vector<const std::vector<AugVector>*>& lists, int d,
                     std::size_t cap, std::vector<AugVector>& out) {
  const std::size_t total = checkedProduct(lists, cap);
  if (out.size() + total > cap) {
    throw SizeOverflow("piece count exceeds the configured cap of " + std::to_string(cap));
  }
  std::vector<std::size_t> idx(lists.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    AugVector acc(0.0, Vector::Zero(d));
    for (std::size_t r = 0; r < lists.size(); ++r) {
      const auto& p = (*lists[r])[idx[r]];
      acc.a += p.a;
      acc.v += p.v;
    }
    out.push_back(std::move(acc));
    for (std::size_t r = lists.size(); r-- > 0;) {
      if (++idx[r] < lists[r]->size()) break;
      idx[r] = 0;
    }
  }
}

// Shared body of the max/min rules. For max, operand m contributes
// plus_m - sum_{k != m} minus_k and the minus part is the Minkowski sum of
// all minus parts; min is the mirror image. Returns (combined, summed).
std::pair<std::vector<AugVector>, std::vector<AugVector>> combineExtremum(
    const std::vector<DCForm>& fs, bool isMax, const CalculusOptions& opts) {
  const int d = fs.front().d;
  const std::size_t p = fs.size();

  std::vector<std::vector<AugVector>> negOther(p);
  for (std::size_t m = 0; m < p; ++m) negOther[m] = negated(isMax ? fs[m].minus : fs[m].plus);

  std::vector<AugVector> combined;
  for (std::size_t m = 0; m < p; ++m) {
    std::vector<const std::vector<AugVector>*> lists;
    lists.push_back(isMax ? &fs[m].plus : &fs[m].minus);
    for (std::size_t k = 0; k < p; ++k) {
      if (k != m) lists.push_back(&negOther[k]);
    }
    appendMinkowski(lists, d, opts.piece_cap, combined);
  }

  std::vector<const std::vector<AugVector>*> lists;
  for (const auto& f : fs) lists.push_back(isMax ? &f.minus : &f.plus);
  std::vector<AugVector> summed;
  appendMinkowski(lists, d, opts.piece_cap, summed);

  return {mergeDuplicates(combined, opts.merge_tol), mergeDuplicates(summed, opts.merge_tol)};
}

}  // namespace

DCForm::DCForm(int dim, std::vector<AugVector> plus_, std::vector<AugVector> minus_)
    : d(dim), plus(std::move(plus_)), minus(std::move(minus_)) {
  validate();
}

void DCForm::validate() const {
  if (d < 1) throw InvalidArgument("DCForm: dimension must be at least 1");
  if (plus.empty() || minus.empty()) {
    throw InvalidArgument("DCForm: plus and minus parts must be nonempty");
  }
  for (const auto* part : {&plus, &minus}) {
    for (const auto& p : *part) {
      if (p.dim() != d) throw DimensionMismatch("DCForm: piece of wrong dimension");
      if (!p.allFinite()) throw NonFinite("DCForm: piece with NaN/inf entry");
    }
  }
}

double DCForm::convexPart(const Vector& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : plus) best = std::max(best, affineValue(p, x));
  return best;
}

double DCForm::concavePart(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : minus) best = std::min(best, affineValue(p, x));
  return best;
}

double eval(const DCForm& f, const Vector& x) {
  requireDim(x, f.d, "eval");
  return f.convexPart(x) + f.concavePart(x);
}

GlobalCodiff globalCodiff(const DCForm& f, const Vector& x) {
  requireDim(x, f.d, "globalCodiff");
  const double under = f.convexPart(x);
  const double over = f.concavePart(x);
  std::vector<AugVector> hypo;
  hypo.reserve(f.plus.size());
  for (const auto& p : f.plus) hypo.emplace_back((p.a + p.v.dot(x)) - under, p.v);
  std::vector<AugVector> hyper;
  hyper.reserve(f.minus.size());
  for (const auto& p : f.minus) hyper.emplace_back((p.a + p.v.dot(x)) - over, p.v);
  return {x, VertexSet(std::move(hypo)), VertexSet(std::move(hyper))};
}

GlobalCodiff translate(const DCForm& f, const GlobalCodiff& gc, const Vector& y) {
  requireDim(y, f.d, "translate");
  requireDim(gc.at, f.d, "translate");
  if (gc.hypo.size() != f.plus.size() || gc.hyper.size() != f.minus.size()) {
    throw DimensionMismatch("translate: codifferential does not belong to this function");
  }
  const Vector shift = y - gc.at;
  const double hypoOffset = f.convexPart(gc.at) - f.convexPart(y);
  const double hyperOffset = f.concavePart(gc.at) - f.concavePart(y);
  std::vector<AugVector> hypo;
  hypo.reserve(gc.hypo.size());
  for (const auto& p : gc.hypo) hypo.emplace_back(p.a + hypoOffset + p.v.dot(shift), p.v);
  std::vector<AugVector> hyper;
  hyper.reserve(gc.hyper.size());
  for (const auto& p : gc.hyper) hyper.emplace_back(p.a + hyperOffset + p.v.dot(shift), p.v);
  return {y, VertexSet(std::move(hypo)), VertexSet(std::move(hyper))};
}

double codiffExpansion(const GlobalCodiff& gc, const Vector& dx) {
  requireDim(dx, gc.hypo.dim(), "codiffExpansion");
  double up = -std::numeric_limits<double>::infinity();
  for (const auto& p : gc.hypo) up = std::max(up, p.a + p.v.dot(dx));
  double down = std::numeric_limits<double>::infinity();
  for (const auto& p : gc.hyper) down = std::min(down, p.a + p.v.dot(dx));
  return up + down;
}

DCForm codiffAffine(double a, const Vector& v, AffineFlavor flavor) {
  const int d = static_cast<int>(v.size());
  if (flavor == AffineFlavor::Hypo) {
    return DCForm(d, {AugVector(a, v)}, {AugVector(0.0, Vector::Zero(d))});
  }
  return DCForm(d, {AugVector(a, Vector::Zero(d))}, {AugVector(0.0, v)});
}

DCForm codiffScale(double lambda, const DCForm& f) {
  auto scaled = [lambda](const std::vector<AugVector>& part) {
    std::vector<AugVector> out;
    out.reserve(part.size());
    for (const auto& p : part) out.push_back(lambda * p);
    return out;
  };
  DCForm out;
  out.d = f.d;
  if (lambda >= 0.0) {
    out.plus = scaled(f.plus);
    out.minus = scaled(f.minus);
  } else {
    out.plus = scaled(f.minus);
    out.minus = scaled(f.plus);
  }
  return out;
}

DCForm codiffSum(const std::vector<DCForm>& fs, const CalculusOptions& opts) {
  requireSameDim(fs, "codiffSum");
  if (fs.size() == 1) return fs.front();
  std::vector<const std::vector<AugVector>*> plusLists;
  std::vector<const std::vector<AugVector>*> minusLists;
  for (const auto& f : fs) {
    plusLists.push_back(&f.plus);
    minusLists.push_back(&f.minus);
  }
  DCForm out;
  out.d = fs.front().d;
  appendMinkowski(plusLists, out.d, opts.piece_cap, out.plus);
  appendMinkowski(minusLists, out.d, opts.piece_cap, out.minus);
  out.plus = mergeDuplicates(out.plus, opts.merge_tol);
  out.minus = mergeDuplicates(out.minus, opts.merge_tol);
  return out;
}

DCForm codiffMax(const std::vector<DCForm>& fs, const CalculusOptions& opts) {
  requireSameDim(fs, "codiffMax");
  if (fs.size() == 1) return fs.front();
  auto [plus, minus] = combineExtremum(fs, /*isMax=*/true, opts);
  DCForm out;
  out.d = fs.front().d;
  out.plus = std::move(plus);
  out.minus = std::move(minus);
  return out;
}

DCForm codiffMin(const std::vector<DCForm>& fs, const CalculusOptions& opts) {
  requireSameDim(fs, "codiffMin");
  if (fs.size() == 1) return fs.front();
  auto [minus, plus] = combineExtremum(fs, /*isMax=*/false, opts);
  DCForm out;
  out.d = fs.front().d;
  out.plus = std::move(plus);
  out.minus = std::move(minus);
  return out;
}

std::vector<AugVector> mergeDuplicates(const std::vector<AugVector>& pieces, double tol) {
  const std::size_t n = pieces.size();
  if (n < 2) return pieces;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto lexLess = [&](std::size_t i, std::size_t j) {
    const auto& p = pieces[i];
    const auto& q = pieces[j];
    if (p.a != q.a) return p.a < q.a;
    for (int k = 0; k < p.dim(); ++k) {
      if (p.v(k) != q.v(k)) return p.v(k) < q.v(k);
    }
    return i < j;
  };
  std::sort(order.begin(), order.end(), lexLess);
  auto close = [&](const AugVector& p, const AugVector& q) {
    if (std::abs(p.a - q.a) >= tol) return false;
    return ((p.v - q.v).array().abs() < tol).all();
  };

  std::vector<bool> keep(n, false);
  std::size_t groupStart = 0;
  while (groupStart < n) {
    std::size_t groupEnd = groupStart + 1;
    std::size_t rep = order[groupStart];
    while (groupEnd < n && close(pieces[order[groupEnd - 1]], pieces[order[groupEnd]])) {
      rep = std::min(rep, order[groupEnd]);
      ++groupEnd;
    }
    keep[rep] = true;
    groupStart = groupEnd;
  }
  std::vector<AugVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.push_back(pieces[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

PAExpr::PAExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

PAExpr PAExpr::affine(double a, Vector v) {
  if (v.size() < 1) throw InvalidArgument("PAExpr::affine: empty gradient");
  return PAExpr(Affine{a, std::move(v)});
}

PAExpr PAExpr::constant(double c, int d) {
  if (d < 1) throw InvalidArgument("PAExpr::constant: dimension must be at least 1");
  return PAExpr(Const{c, d});
}

PAExpr PAExpr::scale(double lambda, PAExpr child) {
  return PAExpr(Scale{lambda, {std::move(child)}});
}

namespace {
void requireChildren(const std::vector<PAExpr>& children, const char* what) {
  if (children.empty()) throw InvalidArgument(std::string(what) + ": needs at least one child");
  for (const auto& c : children) {
    if (c.dim() != children.front().dim()) {
      throw DimensionMismatch(std::string(what) + ": children of different dimension");
    }
  }
}
}  // namespace

PAExpr PAExpr::sum(std::vector<PAExpr> children) {
  requireChildren(children, "PAExpr::sum");
  return PAExpr(Sum{std::move(children)});
}

PAExpr PAExpr::max(std::vector<PAExpr> children) {
  requireChildren(children, "PAExpr::max");
  return PAExpr(Max{std::move(children)});
}

PAExpr PAExpr::min(std::vector<PAExpr> children) {
  requireChildren(children, "PAExpr::min");
  return PAExpr(Min{std::move(children)});
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int PAExpr::dim() const {
  return std::visit(Overloaded{[](const Affine& n) { return static_cast<int>(n.v.size()); },
                               [](const Const& n) { return n.d; },
                               [](const Scale& n) { return n.child().dim(); },
                               [](const auto& n) { return n.children.front().dim(); }},
                    *node_);
}

int PAExpr::depth() const {
  return std::visit(Overloaded{[](const Affine&) { return 0; }, [](const Const&) { return 0; },
                               [](const Scale& n) { return 1 + n.child().depth(); },
                               [](const auto& n) {
                                 int best = 0;
                                 for (const auto& c : n.children) best = std::max(best, c.depth());
                                 return 1 + best;
                               }},
                    *node_);
}

double PAExpr::eval(const Vector& x) const {
  requireDim(x, dim(), "PAExpr::eval");
  return std::visit(
      Overloaded{[&](const Affine& n) { return n.a + n.v.dot(x); },
                 [&](const Const& n) { return n.c; },
                 [&](const Scale& n) { return n.lambda * n.child().eval(x); },
                 [&](const Sum& n) {
                   double s = 0.0;
                   for (const auto& c : n.children) s += c.eval(x);
                   return s;
                 },
                 [&](const Max& n) {
                   double m = -std::numeric_limits<double>::infinity();
                   for (const auto& c : n.children) m = std::max(m, c.eval(x));
                   return m;
                 },
                 [&](const Min& n) {
                   double m = std::numeric_limits<double>::infinity();
                   for (const auto& c : n.children) m = std::min(m, c.eval(x));
                   return m;
                 }},
      *node_);
}

namespace {

DCForm toDC(const PAExpr& e, AffineFlavor preferred, const CalculusOptions& opts) {
  auto all = [&](const std::vector<PAExpr>& children, AffineFlavor flavor) {
    std::vector<DCForm> out;
    out.reserve(children.size());
    for (const auto& c : children) out.push_back(toDC(c, flavor, opts));
    return out;
  };
  return std::visit(
      Overloaded{
          [&](const PAExpr::Affine& n) { return codiffAffine(n.a, n.v, preferred); },
          [&](const PAExpr::Const& n) {
            return DCForm(n.d, {AugVector(n.c, Vector::Zero(n.d))},
                          {AugVector(0.0, Vector::Zero(n.d))});
          },
          [&](const PAExpr::Scale& n) {
            // A negative factor swaps the two parts, so the preference flips too.
            const AffineFlavor inner =
                n.lambda >= 0.0 ? preferred
                                : (preferred == AffineFlavor::Hypo ? AffineFlavor::Hyper
                                                                   : AffineFlavor::Hypo);
            return codiffScale(n.lambda, toDC(n.child(), inner, opts));
          },
          [&](const PAExpr::Sum& n) { return codiffSum(all(n.children, preferred), opts); },
          [&](const PAExpr::Max& n) {
            return codiffMax(all(n.children, AffineFlavor::Hypo), opts);
          },
          [&](const PAExpr::Min& n) {
            return codiffMin(all(n.children, AffineFlavor::Hyper), opts);
          }},
      e.node());
}

}  // namespace

DCForm exprToDC(const PAExpr& e, const CalculusOptions& opts) {
  return toDC(e, AffineFlavor::Hypo, opts);
}

}  // namespace codiff
