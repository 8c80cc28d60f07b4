#include "eulertrunc/serialize.hpp"

namespace eulertrunc {

nlohmann::ordered_json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::ordered_json character_json(const DirichletCharacter& chi) {
  nlohmann::ordered_json j;
  j["q"] = chi.modulus();
  j["exponents"] = std::vector<std::uint64_t>(chi.exponents().begin(), chi.exponents().end());
  j["conductor"] = chi.conductor();
  j["order"] = chi.order();
  j["parity"] = chi.parity() == Parity::even ? "even" : "odd";
  j["index"] = chi.index();
  return j;
}

nlohmann::ordered_json lvalue_json(const LValueRecord& r) {
  nlohmann::ordered_json j;
  j["character"] = r.character_id;
  j["s"] = r.s;
  j["L"] = complex_json(r.L);
  if (r.logL) j["logL"] = complex_json(*r.logL);
  j["method"] = to_string(r.method);
  j["error_estimate"] = r.error_estimate;
  return j;
}

}  // namespace eulertrunc
