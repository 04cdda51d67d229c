#pragma once

#include "cobit/types.hpp"

#include <json.hpp>

namespace cobit {

// Complex scalars, vectors, and matrices travel as [re, im] pairs; matrices
// are flattened row-major.
nlohmann::json complex_to_json(const cplx& z);
cplx complex_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j, long long rows, long long cols);

nlohmann::json layout_to_json(const RegisterLayout& layout);
RegisterLayout layout_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const PureState& psi);
PureState state_from_json(const nlohmann::json& j);

}  // namespace cobit
