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

#include "cploss/loss_spec.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "cploss/error.hpp"
#include "json.hpp"

namespace cploss {
namespace {

using nlohmann::json;

std::string load_text(std::string_view text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string_view::npos && text[i] == '{') return std::string(text);
  std::ifstream in{std::string(text)};
  if (!in) throw DomainError("loss spec is neither JSON nor a readable file: " +
                             std::string(text));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(load_text(text));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed loss spec: ") + e.what());
  }
}

WeightFunction weight_from_json(const json& w) {
  if (!w.is_object()) throw DomainError("\"weight\" must be an object");
  try {
    if (w.contains("name")) {
      ParamMap params;
      if (w.contains("params")) {
        for (const auto& [k, v] : w.at("params").items()) {
          params[k] = v.get<double>();
        }
      }
      return catalog_weight(w.at("name").get<std::string>(), params);
    }
    if (w.contains("table")) {
      std::vector<std::pair<double, double>> table;
      for (const auto& row : w.at("table")) {
        if (!row.is_array() || row.size() != 2) {
          throw DomainError("table rows must be [c, w] pairs");
        }
        table.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return tabulated_weight(std::move(table),
                              w.value("label", std::string("table")));
    }
    if (w.contains("expr")) {
      return expression_weight(w.at("expr").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed weight: ") + e.what());
  }
  throw DomainError("weight needs one of \"name\", \"table\", \"expr\"");
}

}  // namespace

WeightFunction parse_weight_spec(std::string_view text) {
  const json doc = parse_json(text);
  return weight_from_json(doc.contains("weight") ? doc.at("weight") : doc);
}

LossSpec parse_loss_spec(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("weight")) {
    throw DomainError("loss spec needs a \"weight\" member");
  }
  LossSpec spec{weight_from_json(doc.at("weight")), std::nullopt};
  if (doc.contains("link")) {
    const json& l = doc.at("link");
    if (!l.is_object() || !l.contains("name") || !l.at("name").is_string()) {
      throw DomainError("\"link\" must be {\"name\": ...}");
    }
    const auto name = l.at("name").get<std::string>();
    spec.link = name == "canonical" ? canonical_link(spec.weight)
                                    : catalog_link(name);
  }
  return spec;
}

}  // namespace cploss
