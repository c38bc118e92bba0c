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

#ifndef CPLOSS_EXPRESSION_HPP_
#define CPLOSS_EXPRESSION_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cploss {

// A compiled arithmetic expression in one real variable.
//
// Grammar: numbers, the variable, the constants pi and e, the binary
// operators + - * / ^ (right associative), unary minus, parentheses and the
// functions log, exp, sqrt, abs, min(a, b), max(a, b). Nothing else is
// accepted, so user input can never reach anything but these operations.
class Expression {
 public:
  static Expression compile(std::string_view text,
                            std::string_view variable = "c");

  double operator()(double x) const;

  const std::string& text() const { return text_; }
  const std::string& variable() const { return variable_; }

  struct Node;

 private:
  Expression() = default;

  std::string text_;
  std::string variable_;
  std::shared_ptr<const std::vector<Node>> nodes_;
  int root_ = -1;
};

}  // namespace cploss

#endif  // CPLOSS_EXPRESSION_HPP_
