#include "cobit/serialize.hpp"

#include <stdexcept>

namespace cobit {

using nlohmann::json;

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values must be [re, im] pairs");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (long long i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be a JSON array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long long>(i)) = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (long long r = 0; r < m.rows(); ++r)
    for (long long c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  return out;
}

Mat matrix_from_json(const json& j, long long rows, long long cols) {
  if (!j.is_array() || static_cast<long long>(j.size()) != rows * cols)
    throw std::invalid_argument("matrix payload has the wrong number of entries");
  Mat m(rows, cols);
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r * cols + c]);
  return m;
}

json layout_to_json(const RegisterLayout& layout) {
  json out = json::array();
  for (const auto& s : layout.subsystems())
    out.push_back({{"label", s.label}, {"party", to_string(s.party)}, {"dim", s.dim}});
  return out;
}

RegisterLayout layout_from_json(const json& j) {
  std::vector<Subsystem> subs;
  for (const auto& e : j)
    subs.push_back({e.at("label").get<std::string>(),
                    party_from_string(e.at("party").get<std::string>()),
                    e.at("dim").get<int>()});
  return RegisterLayout(std::move(subs));
}

json state_to_json(const PureState& psi) {
  return {{"layout", layout_to_json(psi.layout())},
          {"amplitudes", vector_to_json(psi.amplitudes())}};
}

PureState state_from_json(const json& j) {
  return PureState(layout_from_json(j.at("layout")), vector_from_json(j.at("amplitudes")));
}

}  // namespace cobit
