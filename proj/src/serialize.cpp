#include "arxid/serialize.hpp"

#include "arxid/error.hpp"

namespace arxid {

using nlohmann::json;

void to_json(json& j, const Poly& p) { j = p.vec(); }

void from_json(const json& j, Poly& p) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::kInvalidArgument, "polynomial must be a nonempty coefficient array");
  p = Poly(j.get<std::vector<double>>());
}

void to_json(json& j, const RationalTF& tf) { j = json{{"num", tf.num()}, {"den", tf.den()}}; }

void from_json(const json& j, RationalTF& tf) {
  tf = RationalTF(j.at("num").get<Poly>(), j.at("den").get<Poly>());
}

void to_json(json& j, const SystemSpec& spec) {
  j = json{{"L", spec.L},         {"Gamma", spec.Gamma},       {"F", spec.F},
           {"C", spec.C},         {"D", spec.D},               {"K_num", spec.K.num()},
           {"K_den", spec.K.den()}, {"lambda_e", spec.lambda_e}, {"lambda_r", spec.lambda_r}};
}

void from_json(const json& j, SystemSpec& spec) {
  spec.L = j.at("L").get<Poly>();
  spec.Gamma = j.contains("Gamma") ? j.at("Gamma").get<Poly>() : Poly::one();
  spec.F = j.at("F").get<Poly>();
  spec.C = j.contains("C") ? j.at("C").get<Poly>() : Poly::one();
  spec.D = j.contains("D") ? j.at("D").get<Poly>() : Poly::one();
  spec.K = RationalTF(j.at("K_num").get<Poly>(),
                      j.contains("K_den") ? j.at("K_den").get<Poly>() : Poly::one());
  spec.lambda_e = j.at("lambda_e").get<double>();
  spec.lambda_r = j.at("lambda_r").get<double>();
}

void to_json(json& j, const ArxEstimate& est) {
  j = json{{"A", est.A},
           {"B", est.B},
           {"J_hat", est.J_hat},
           {"n_a", est.orders.n_a},
           {"n_b", est.orders.n_b},
           {"N_eff", est.N_eff}};
}

void from_json(const json& j, ArxEstimate& est) {
  est.A = j.at("A").get<Poly>();
  est.B = j.at("B").get<Poly>();
  est.J_hat = j.at("J_hat").get<double>();
  est.orders.n_a = j.at("n_a").get<std::size_t>();
  est.orders.n_b = j.at("n_b").get<std::size_t>();
  est.N_eff = j.at("N_eff").get<std::size_t>();
  est.first = est.orders.max();
}

void to_json(json& j, const RecoveredModel& model) {
  json a_roots = json::array();
  for (const Root& r : model.A_roots.roots())
    a_roots.push_back({{"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"multiplicity", r.multiplicity},
                       {"class", to_string(r.cls)}});
  j = json{{"G_hat", model.G_hat},
           {"H_hat", model.H_hat},
           {"H_uncorrected", model.H_uncorrected},
           {"lambda_hat", model.lambda_hat},
           {"gain", model.gain},
           {"A_a", model.A_a},
           {"A_a_mirror", model.A_a_mirror},
           {"A_roots", a_roots}};
}

}  // namespace arxid
