#pragma once

#include "json.hpp"

#include "eulertrunc/characters.hpp"
#include "eulertrunc/l_oracle.hpp"

namespace eulertrunc {

// {q, exponents, conductor, order, parity, index}
nlohmann::ordered_json character_json(const DirichletCharacter& chi);

nlohmann::ordered_json lvalue_json(const LValueRecord& r);

nlohmann::ordered_json complex_json(std::complex<double> z);

}  // namespace eulertrunc
