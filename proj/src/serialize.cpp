/* Copyright 2026 The qsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qsim/serialize.hpp"

#include <string>

#include "qsim/errors.hpp"

namespace qsim {
namespace {

using nlohmann::json;

json encode(const Matrix& m, const char* kind) {
  json re = json::array();
  json im = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return json{{"kind", kind}, {"dim", m.rows()}, {"matrix_re", re}, {"matrix_im", im}};
}

Matrix decode(const json& doc, long cols_per_dim_power) {
  try {
    if (!doc.is_object()) throw ParseError("expected a JSON object");
    const long dim = doc.at("dim").get<long>();
    if (dim < 1) throw ParseError("dim must be at least 1");
    const long cols = cols_per_dim_power == 0 ? 1 : dim;
    const auto& re = doc.at("matrix_re");
    const auto& im = doc.at("matrix_im");
    const auto expected = static_cast<std::size_t>(dim * cols);
    if (!re.is_array() || !im.is_array() || re.size() != expected || im.size() != expected) {
      throw ParseError("matrix_re/matrix_im must be arrays of " + std::to_string(expected) +
                       " numbers");
    }
    Matrix m(dim, cols);
    std::size_t idx = 0;
    for (long i = 0; i < dim; ++i) {
      for (long j = 0; j < cols; ++j, ++idx) {
        m(i, j) = Complex(re[idx].get<double>(), im[idx].get<double>());
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix document: ") + e.what());
  }
}

}  // namespace

json to_json(const PureState& psi) { return encode(psi.amplitudes(), "pure_state"); }
json to_json(const DensityMatrix& rho) { return encode(rho.matrix(), "density_matrix"); }
json to_json(const Observable& obs) { return encode(obs.matrix(), "observable"); }

PureState pure_state_from_json(const json& doc) {
  Vector v = decode(doc, 0).col(0);
  return PureState(std::move(v));
}

DensityMatrix density_matrix_from_json(const json& doc) { return DensityMatrix(decode(doc, 1)); }

Observable observable_from_json(const json& doc) { return spectral_decompose(decode(doc, 1)); }

}  // namespace qsim
