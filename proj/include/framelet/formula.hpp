#pragma once

#include <functional>
#include <string>

#include "framelet/types.hpp"

namespace framelet {

/// Compiled scalar expression in the variables x (or x1) and, for dim 2, y (or x2).
///
/// Grammar: numbers, pi, e, + - * / ^ (right associative), unary minus, parentheses,
/// sin cos tan exp log sqrt abs sinc (sin t / t) and B(n, t) (cardinal B-spline).
class Formula {
 public:
  /// Throws ValidationError on syntax errors or unknown names.
  static Formula parse(const std::string& text, int dim);

  int dim() const { return dim_; }
  const std::string& text() const { return text_; }
  double operator()(const Vec& x) const { return eval_(x); }

 private:
  Formula(int dim, std::string text, std::function<double(const Vec&)> eval)
      : dim_(dim), text_(std::move(text)), eval_(std::move(eval)) {}

  int dim_;
  std::string text_;
  std::function<double(const Vec&)> eval_;
};

}  // namespace framelet
