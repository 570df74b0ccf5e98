#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatwalk/architecture.hpp"
#include "flatwalk/bounds.hpp"
#include "flatwalk/hamiltonian.hpp"
#include "flatwalk/walk.hpp"

namespace flatwalk {

// Architecture schema:
//   {"n":6,"q":2,"layers":[[[0,1],[2,3]],[[0,3],[2,1]]],"p":36,"generator_norms":[0.5,...]}
// p and generator_norms are optional; generator_norms also accepts a scalar
// shorthand (expanded to one entry per parameter, which requires p).
nlohmann::json architecture_to_json(const Architecture& arch);
Architecture architecture_from_json(const nlohmann::json& j);
Architecture load_architecture(const std::string& path);
void save_architecture(const Architecture& arch, const std::string& path);

// Hamiltonian schema, exactly one of the two term forms:
//   {"n":3,"q":2,"terms":[{"sites":[0,1],"ops":[3,3],"coeff":[1.0,0.0]}]}
//   {"n":3,"q":2,"pauli_terms":[["ZZI",1.0]]}
// coeff accepts a scalar or an [re, im] pair.
nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);
HamiltonianSpec load_hamiltonian(const std::string& path);

nlohmann::ordered_json report_to_json(const EstimateReport& report);
nlohmann::ordered_json bound_report_to_json(const BoundReport& report,
                                            const nlohmann::json& inputs);
nlohmann::json violations_to_json(const std::vector<Violation>& violations);

}  // namespace flatwalk
