// Copyright 2026 The cploss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cploss/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "cploss/error.hpp"

namespace cploss {

struct Expression::Node {
  enum class Kind {
    kConstant, kVariable, kNegate, kAdd, kSub, kMul, kDiv, kPow,
    kLog, kExp, kSqrt, kAbs, kMin, kMax
  };
  Kind kind = Kind::kConstant;
  double value = 0.0;
  int lhs = -1;
  int rhs = -1;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable,
         std::vector<Node>& nodes)
      : text_(text), variable_(variable), nodes_(nodes) {}

  int parse() {
    const int root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("expression: " + why + " at offset " +
                      std::to_string(pos_) + " in '" + std::string(text_) +
                      "'");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
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

  int add(Kind kind, int lhs = -1, int rhs = -1, double value = 0.0) {
    nodes_.push_back(Node{kind, value, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int expression() {
    int lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = add(Kind::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = add(Kind::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = add(Kind::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = add(Kind::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept('-')) return add(Kind::kNegate, unary());
    if (accept('+')) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (accept('^')) return add(Kind::kPow, base, unary());
    return base;
  }

  int primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      const int inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == variable_) return add(Kind::kVariable);
      if (name == "pi") return add(Kind::kConstant, -1, -1, std::numbers::pi);
      if (name == "e") return add(Kind::kConstant, -1, -1, std::numbers::e);
      if (name == "log") return call1(Kind::kLog);
      if (name == "exp") return call1(Kind::kExp);
      if (name == "sqrt") return call1(Kind::kSqrt);
      if (name == "abs") return call1(Kind::kAbs);
      if (name == "min") return call2(Kind::kMin);
      if (name == "max") return call2(Kind::kMax);
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  int number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return add(Kind::kConstant, -1, -1, value);
  }

  int call1(Kind kind) {
    expect('(');
    const int arg = expression();
    expect(')');
    return add(kind, arg);
  }

  int call2(Kind kind) {
    expect('(');
    const int a = expression();
    expect(',');
    const int b = expression();
    expect(')');
    return add(kind, a, b);
  }

  std::string_view text_;
  std::string_view variable_;
  std::vector<Node>& nodes_;
  std::size_t pos_ = 0;
};

double eval(const std::vector<Node>& nodes, int i, double x) {
  const Node& n = nodes[static_cast<std::size_t>(i)];
  switch (n.kind) {
    case Kind::kConstant: return n.value;
    case Kind::kVariable: return x;
    case Kind::kNegate: return -eval(nodes, n.lhs, x);
    case Kind::kAdd: return eval(nodes, n.lhs, x) + eval(nodes, n.rhs, x);
    case Kind::kSub: return eval(nodes, n.lhs, x) - eval(nodes, n.rhs, x);
    case Kind::kMul: return eval(nodes, n.lhs, x) * eval(nodes, n.rhs, x);
    case Kind::kDiv: return eval(nodes, n.lhs, x) / eval(nodes, n.rhs, x);
    case Kind::kPow:
      return std::pow(eval(nodes, n.lhs, x), eval(nodes, n.rhs, x));
    case Kind::kLog: return std::log(eval(nodes, n.lhs, x));
    case Kind::kExp: return std::exp(eval(nodes, n.lhs, x));
    case Kind::kSqrt: return std::sqrt(eval(nodes, n.lhs, x));
    case Kind::kAbs: return std::abs(eval(nodes, n.lhs, x));
    case Kind::kMin:
      return std::min(eval(nodes, n.lhs, x), eval(nodes, n.rhs, x));
    case Kind::kMax:
      return std::max(eval(nodes, n.lhs, x), eval(nodes, n.rhs, x));
  }
  return std::nan("");
}

}  // namespace

Expression Expression::compile(std::string_view text,
                               std::string_view variable) {
  if (variable.empty()) throw DomainError("expression: empty variable name");
  auto nodes = std::make_shared<std::vector<Node>>();
  Parser parser(text, variable, *nodes);
  Expression out;
  out.root_ = parser.parse();
  out.text_ = std::string(text);
  out.variable_ = std::string(variable);
  out.nodes_ = std::move(nodes);
  return out;
}

double Expression::operator()(double x) const {
  return eval(*nodes_, root_, x);
}

}  // namespace cploss
