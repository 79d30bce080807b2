// Copyright 2026 The plateau-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plateau/serialize.hpp"

#include <stdexcept>

namespace plateau {

using nlohmann::json;

namespace {

json complex_array(const Complex* data, Eigen::Index count) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < count; ++i) arr.push_back({data[i].real(), data[i].imag()});
  return arr;
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entries are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r = m;
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", complex_array(r.data(), r.size())}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = field(j, "rows").get<Eigen::Index>();
  const auto cols = field(j, "cols").get<Eigen::Index>();
  const json& data = field(j, "data");
  if (rows < 1 || cols < 1 || !data.is_array() || Eigen::Index(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix entry count does not match rows x cols");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[std::size_t(r * cols + c)]);
  return m;
}

json to_json(const ComplexVector& v) { return complex_array(v.data(), v.size()); }

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("state vectors are non-empty arrays");
  ComplexVector v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[Eigen::Index(i)] = complex_from_json(j[i]);
  return v;
}

json to_json(const NetworkSpec& spec) {
  json ps = json::array();
  for (const auto& p : spec.perceptrons) {
    json pj = {{"layer", p.layer}, {"index", p.index}, {"inputs", p.inputs}, {"output", p.output}};
    if (const auto* m = std::get_if<ComplexMatrix>(&p.source)) {
      pj["unitary"] = to_json(*m);
    } else {
      json gates = json::array();
      for (const auto& g : std::get<RpqcCircuit>(p.source).gates) {
        if (const auto* f = std::get_if<FixedGate>(&g)) {
          gates.push_back({{"fixed", {{"qubits", f->qubits}, {"matrix", to_json(f->matrix)}}}});
        } else {
          const auto& r = std::get<RotationGate>(g);
          gates.push_back({{"rotation", {{"generator", r.generator.label()}, {"angle", r.angle}}}});
        }
      }
      pj["circuit"] = gates;
    }
    ps.push_back(std::move(pj));
  }
  return {{"layer_widths", spec.layer_widths}, {"family", to_string(spec.family)}, {"perceptrons", ps}};
}

NetworkSpec network_from_json(const json& j) {
  NetworkSpec spec;
  spec.layer_widths = field(j, "layer_widths").get<std::vector<int>>();
  spec.family = family_from_string(field(j, "family").get<std::string>());
  for (const auto& pj : field(j, "perceptrons")) {
    Perceptron p;
    p.layer = field(pj, "layer").get<int>();
    p.index = field(pj, "index").get<int>();
    p.inputs = field(pj, "inputs").get<std::vector<int>>();
    p.output = field(pj, "output").get<int>();
    if (pj.contains("unitary")) {
      p.source = matrix_from_json(pj.at("unitary"));
    } else {
      RpqcCircuit c;
      for (const auto& gj : field(pj, "circuit")) {
        if (gj.contains("fixed")) {
          const auto& f = gj.at("fixed");
          c.gates.push_back(FixedGate{matrix_from_json(field(f, "matrix")), field(f, "qubits").get<std::vector<int>>()});
        } else {
          const auto& r = field(gj, "rotation");
          c.gates.push_back(RotationGate{PauliString(field(r, "generator").get<std::string>()),
                                         field(r, "angle").get<double>()});
        }
      }
      p.source = std::move(c);
    }
    spec.perceptrons.push_back(std::move(p));
  }
  spec.validate();
  return spec;
}

json to_json(const CostSpec& cspec) {
  json pairs = json::array();
  for (const auto& pair : cspec.pairs) {
    json pj = {{"input", to_json(pair.input().vector())}};
    if (pair.is_product()) {
      json f = json::array();
      for (const auto& v : pair.output_factors()) f.push_back(to_json(v));
      pj["output_factors"] = f;
    } else {
      pj["output_state"] = to_json(pair.output_state());
    }
    pairs.push_back(std::move(pj));
  }
  return {{"kind", to_string(cspec.kind)}, {"pairs", pairs}};
}

CostSpec cost_spec_from_json(const json& j) {
  CostSpec c;
  c.kind = cost_kind_from_string(field(j, "kind").get<std::string>());
  for (const auto& pj : field(j, "pairs")) {
    QuantumState in = QuantumState::pure(vector_from_json(field(pj, "input")));
    if (pj.contains("output_factors")) {
      std::vector<ComplexVector> f;
      for (const auto& fj : pj.at("output_factors")) f.push_back(vector_from_json(fj));
      c.pairs.push_back(TrainingPair::product(std::move(in), std::move(f)));
    } else {
      c.pairs.push_back(TrainingPair::full(std::move(in), vector_from_json(field(pj, "output_state"))));
    }
  }
  return c;
}

}  // namespace plateau
