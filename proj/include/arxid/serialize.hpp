#ifndef ARXID_SERIALIZE_HPP
#define ARXID_SERIALIZE_HPP

#include <json.hpp>

#include "arxid/arx.hpp"
#include "arxid/ltisys.hpp"
#include "arxid/poly.hpp"
#include "arxid/recover.hpp"

// JSON forms. Polynomials are coefficient arrays, lowest order first.
namespace arxid {

void to_json(nlohmann::json& j, const Poly& p);
void from_json(const nlohmann::json& j, Poly& p);

void to_json(nlohmann::json& j, const RationalTF& tf);  // {"num": [...], "den": [...]}
void from_json(const nlohmann::json& j, RationalTF& tf);

// {"L","Gamma","F","C","D","K_num","K_den","lambda_e","lambda_r"}
void to_json(nlohmann::json& j, const SystemSpec& spec);
void from_json(const nlohmann::json& j, SystemSpec& spec);

// {"A","B","J_hat","n_a","n_b","N_eff"}
void to_json(nlohmann::json& j, const ArxEstimate& est);
void from_json(const nlohmann::json& j, ArxEstimate& est);

void to_json(nlohmann::json& j, const RecoveredModel& model);

}  // namespace arxid

#endif  // ARXID_SERIALIZE_HPP
