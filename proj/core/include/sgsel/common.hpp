#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace sgsel {

using Rng = std::mt19937_64;

enum class ModelKind { oSG = 0, SGNS = 1 };

inline std::string to_string(ModelKind k) {
    return k == ModelKind::oSG ? "osg" : "sgns";
}

inline ModelKind model_kind_from_string(const std::string& s) {
    if (s == "osg" || s == "oSG") return ModelKind::oSG;
    if (s == "sgns" || s == "SGNS") return ModelKind::SGNS;
    throw std::invalid_argument("unknown model kind: " + s);
}

// Thrown by generate_truth when the constraint system cannot be satisfied.
struct InfeasibleConstraint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by spearman() on constant input; callers decide how to handle it.
struct ConstantInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sgsel
