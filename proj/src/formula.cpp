#include "framelet/formula.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <vector>

#include "framelet/refinable.hpp"

namespace framelet {
namespace {

using Node = std::function<double(const Vec&)>;

class Parser {
 public:
  Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

  Node parse() {
    Node n = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("formula '" + text_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Node expr() {
    Node lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = [l = lhs, r = term()](const Vec& x) { return l(x) + r(x); };
      } else if (accept('-')) {
        lhs = [l = lhs, r = term()](const Vec& x) { return l(x) - r(x); };
      } else {
        return lhs;
      }
    }
  }

  Node term() {
    Node lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = [l = lhs, r = unary()](const Vec& x) { return l(x) * r(x); };
      } else if (accept('/')) {
        lhs = [l = lhs, r = unary()](const Vec& x) { return l(x) / r(x); };
      } else {
        return lhs;
      }
    }
  }

  Node unary() {
    if (accept('-')) return [o = unary()](const Vec& x) { return -o(x); };
    if (accept('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    if (accept('^')) return [b = base, e = unary()](const Vec& x) { return std::pow(b(x), e(x)); };
    return base;
  }

  Node primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Node inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Node number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return [v](const Vec&) { return v; };
  }

  Node identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);

    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') return call(name);

    if (name == "pi") return [](const Vec&) { return std::numbers::pi; };
    if (name == "e") return [](const Vec&) { return std::numbers::e; };
    int axis = -1;
    if (name == "x" || name == "x1") axis = 0;
    if (name == "y" || name == "x2") axis = 1;
    if (axis < 0) fail("unknown name '" + name + "'");
    if (axis >= dim_) fail("variable '" + name + "' not available in dimension " + std::to_string(dim_));
    return [axis](const Vec& x) { return x(axis); };
  }

  Node call(const std::string& name) {
    expect('(');
    std::vector<Node> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')');

    if (name == "B") {
      if (args.size() != 2) fail("B expects (order, argument)");
      return [n = args[0], t = args[1]](const Vec& x) {
        const double order = n(x);
        if (order != std::floor(order) || order < 1.0) throw ValidationError("B(n, t) needs a positive integer order");
        return eval_bspline(static_cast<int>(order), t(x));
      };
    }
    static const std::map<std::string, double (*)(double)> unary_fns = {
        {"sin", [](double t) { return std::sin(t); }},   {"cos", [](double t) { return std::cos(t); }},
        {"tan", [](double t) { return std::tan(t); }},   {"exp", [](double t) { return std::exp(t); }},
        {"log", [](double t) { return std::log(t); }},   {"sqrt", [](double t) { return std::sqrt(t); }},
        {"abs", [](double t) { return std::abs(t); }},
        {"sinc", [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }},
    };
    const auto it = unary_fns.find(name);
    if (it == unary_fns.end()) fail("unknown function '" + name + "'");
    if (args.size() != 1) fail("function '" + name + "' takes one argument");
    return [fn = it->second, a = args[0]](const Vec& x) { return fn(a(x)); };
  }

  const std::string& text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula Formula::parse(const std::string& text, int dim) {
  require_dim(dim);
  Node root = Parser(text, dim).parse();
  return Formula(dim, text, [root = std::move(root), dim](const Vec& x) {
    if (x.size() != dim) throw ValidationError("formula evaluated at a point of wrong dimension");
    return root(x);
  });
}

}  // namespace framelet
