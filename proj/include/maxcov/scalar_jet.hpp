#pragma once

#include <memory>
#include <stdexcept>
#include <utility>

#include "maxcov/jet.hpp"
#include "maxcov/point.hpp"
#include "maxcov/scalar_poly.hpp"

namespace maxcov {

/// Numeric scalar-field backend: a closure evaluated with forward-mode jets.
/// Queries return the value and exact (machine-precision) partials; taking a
/// partial derivative wraps the field in a node that evaluates the parent one
/// jet level deeper. Depth is capped at three nested derivatives, which covers
/// every operation chain this library produces (d∘d included).
class JetField {
  struct Node {
    virtual ~Node() = default;
    virtual double eval0(const std::array<double, 4>& p) const = 0;
    virtual Jet1 eval1(const std::array<double, 4>& p) const = 0;
    virtual Jet2 eval2(const std::array<double, 4>& p) const = 0;
    virtual Jet3 eval3(const std::array<double, 4>& p) const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  template <class F>
  struct LambdaNode final : Node {
    F f;
    explicit LambdaNode(F fn) : f(std::move(fn)) {}
    double eval0(const std::array<double, 4>& p) const override { return f(jet_detail::seed0(p)); }
    Jet1 eval1(const std::array<double, 4>& p) const override { return f(jet_detail::seed1(p)); }
    Jet2 eval2(const std::array<double, 4>& p) const override { return f(jet_detail::seed2(p)); }
    Jet3 eval3(const std::array<double, 4>& p) const override { return f(jet_detail::seed3(p)); }
  };

  struct PolyNode final : Node {
    Polynomial poly;
    explicit PolyNode(Polynomial p) : poly(std::move(p)) {}
    double eval0(const std::array<double, 4>& p) const override { return poly.eval_on(jet_detail::seed0(p)); }
    Jet1 eval1(const std::array<double, 4>& p) const override { return poly.eval_on(jet_detail::seed1(p)); }
    Jet2 eval2(const std::array<double, 4>& p) const override { return poly.eval_on(jet_detail::seed2(p)); }
    Jet3 eval3(const std::array<double, 4>& p) const override { return poly.eval_on(jet_detail::seed3(p)); }
  };

  enum class BinOp { Add, Sub, Mul };
  struct BinaryNode final : Node {
    BinOp op;
    NodePtr lhs, rhs;
    BinaryNode(BinOp o, NodePtr a, NodePtr b) : op(o), lhs(std::move(a)), rhs(std::move(b)) {}
    template <class J>
    J combine(const J& a, const J& b) const {
      switch (op) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        default: return a * b;
      }
    }
    double eval0(const std::array<double, 4>& p) const override {
      return combine(lhs->eval0(p), rhs->eval0(p));
    }
    Jet1 eval1(const std::array<double, 4>& p) const override {
      return combine(lhs->eval1(p), rhs->eval1(p));
    }
    Jet2 eval2(const std::array<double, 4>& p) const override {
      return combine(lhs->eval2(p), rhs->eval2(p));
    }
    Jet3 eval3(const std::array<double, 4>& p) const override {
      return combine(lhs->eval3(p), rhs->eval3(p));
    }
  };

  struct NegNode final : Node {
    NodePtr base;
    explicit NegNode(NodePtr b) : base(std::move(b)) {}
    double eval0(const std::array<double, 4>& p) const override { return -base->eval0(p); }
    Jet1 eval1(const std::array<double, 4>& p) const override { return -base->eval1(p); }
    Jet2 eval2(const std::array<double, 4>& p) const override { return -base->eval2(p); }
    Jet3 eval3(const std::array<double, 4>& p) const override { return -base->eval3(p); }
  };

  // The derivative chain of a canonically seeded depth-(k+1) jet along
  // direction `axis` is exactly the canonical depth-k jet of the partial.
  struct PartialNode final : Node {
    NodePtr base;
    std::size_t axis;
    PartialNode(NodePtr b, int a) : base(std::move(b)), axis(static_cast<std::size_t>(a)) {}
    double eval0(const std::array<double, 4>& p) const override { return base->eval1(p).d[axis]; }
    Jet1 eval1(const std::array<double, 4>& p) const override { return base->eval2(p).d[axis]; }
    Jet2 eval2(const std::array<double, 4>& p) const override { return base->eval3(p).d[axis]; }
    Jet3 eval3(const std::array<double, 4>&) const override {
      throw std::logic_error("jet derivative depth exceeded (max 3 nested partials)");
    }
  };

  // Affine precomposition x -> Mx + c. The Jacobian is constant, so the
  // chain rule acts the same way at every jet depth: evaluate the base at
  // the canonical seed of the mapped point, then remap each derivative slot
  // by d[i] <- sum_j M[j][i] * d[j], recursing into nested slots.
  struct ComposeNode final : Node {
    NodePtr base;
    std::array<std::array<double, 4>, 4> linear;
    std::array<double, 4> offset;

    std::array<double, 4> mapped(const std::array<double, 4>& p) const {
      std::array<double, 4> q{};
      for (std::size_t i = 0; i < 4; ++i) {
        q[i] = offset[i];
        for (std::size_t j = 0; j < 4; ++j) q[i] += linear[i][j] * p[j];
      }
      return q;
    }

    double remap(const double& s) const { return s; }
    template <class T>
    Jet<T> remap(const Jet<T>& j) const {
      Jet<T> r;
      r.v = remap(j.v);
      std::array<T, 4> child{};
      for (std::size_t k = 0; k < 4; ++k) child[k] = remap(j.d[k]);
      for (std::size_t i = 0; i < 4; ++i) {
        T acc = T(0.0);
        for (std::size_t k = 0; k < 4; ++k) acc += T(linear[k][i]) * child[k];
        r.d[i] = acc;
      }
      return r;
    }

    double eval0(const std::array<double, 4>& p) const override { return base->eval0(mapped(p)); }
    Jet1 eval1(const std::array<double, 4>& p) const override { return remap(base->eval1(mapped(p))); }
    Jet2 eval2(const std::array<double, 4>& p) const override { return remap(base->eval2(mapped(p))); }
    Jet3 eval3(const std::array<double, 4>& p) const override { return remap(base->eval3(mapped(p))); }
  };

public:
  using value_type = double;

  JetField() : node_(nullptr) {}

  static JetField zero() { return JetField(); }
  static JetField constant(const Rational& c) {
    if (c.is_zero()) return zero();
    return from_polynomial(Polynomial::constant(c));
  }
  static JetField one() { return constant(Rational::one()); }
  static JetField coordinate(int axis) { return from_polynomial(Polynomial::coordinate(axis)); }

  static JetField from_polynomial(Polynomial p) {
    if (p.is_structural_zero()) return zero();
    JetField f;
    f.node_ = std::make_shared<PolyNode>(std::move(p));
    return f;
  }

  /// Wraps a generic closure f(std::array<J,4>) -> J callable on doubles and
  /// on nested jets (use `auto` parameters and the arithmetic in jet.hpp).
  template <class F>
  static JetField from_callable(F f) {
    JetField r;
    r.node_ = std::make_shared<LambdaNode<F>>(std::move(f));
    return r;
  }

  bool is_structural_zero() const { return node_ == nullptr; }

  JetField operator-() const {
    if (is_structural_zero()) return *this;
    JetField r;
    r.node_ = std::make_shared<NegNode>(node_);
    return r;
  }
  friend JetField operator+(const JetField& a, const JetField& b) {
    if (a.is_structural_zero()) return b;
    if (b.is_structural_zero()) return a;
    JetField r;
    r.node_ = std::make_shared<BinaryNode>(BinOp::Add, a.node_, b.node_);
    return r;
  }
  friend JetField operator-(const JetField& a, const JetField& b) {
    if (b.is_structural_zero()) return a;
    if (a.is_structural_zero()) return -b;
    JetField r;
    r.node_ = std::make_shared<BinaryNode>(BinOp::Sub, a.node_, b.node_);
    return r;
  }
  friend JetField operator*(const JetField& a, const JetField& b) {
    if (a.is_structural_zero() || b.is_structural_zero()) return zero();
    JetField r;
    r.node_ = std::make_shared<BinaryNode>(BinOp::Mul, a.node_, b.node_);
    return r;
  }
  JetField& operator+=(const JetField& o) { return *this = *this + o; }
  JetField& operator-=(const JetField& o) { return *this = *this - o; }
  JetField& operator*=(const JetField& o) { return *this = *this * o; }

  JetField scaled(const Rational& c) const {
    if (c.is_zero()) return zero();
    return *this * constant(c);
  }

  JetField partial(int axis) const {
    if (is_structural_zero()) return *this;
    JetField r;
    r.node_ = std::make_shared<PartialNode>(node_, axis);
    return r;
  }

  JetField compose_affine(const std::array<std::array<Rational, 4>, 4>& linear,
                          const std::array<Rational, 4>& offset) const {
    if (is_structural_zero()) return *this;
    auto n = std::make_shared<ComposeNode>();
    n->base = node_;
    for (std::size_t i = 0; i < 4; ++i) {
      n->offset[i] = offset[i].to_double();
      for (std::size_t j = 0; j < 4; ++j) n->linear[i][j] = linear[i][j].to_double();
    }
    JetField r;
    r.node_ = n;
    return r;
  }

  double value(const Point& p) const {
    if (is_structural_zero()) return 0.0;
    return node_->eval0(p.as_doubles());
  }
  /// Floating-point evaluation at non-rational (quadrature) points.
  double value_d(const std::array<double, 4>& x) const {
    return is_structural_zero() ? 0.0 : node_->eval0(x);
  }
  std::array<double, 4> partials(const Point& p) const {
    if (is_structural_zero()) return {0, 0, 0, 0};
    return node_->eval1(p.as_doubles()).d;
  }

private:
  NodePtr node_;
};

}  // namespace maxcov
