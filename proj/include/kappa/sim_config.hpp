#pragma once

#include <iosfwd>
#include <string>

#include "kappa/simulate.hpp"

// Flat key = value config for the simulate command. '#' starts a comment.
// Keys: study (calibrate | size-power | concentration), generator
// (continuousGaussian | discreteUniformK | mixedTied | bivariateGaussianRho),
// kLevels, rho, nGrid (comma-separated), replicates, seed, alpha.
// nGrid is required; everything else has the SimConfig defaults and
// study defaults to calibrate. Unknown keys are rejected.

namespace kappa {

struct SimStudy {
    std::string study = "calibrate";
    SimConfig config;
};

SimStudy parse_sim_config(std::istream& in, const std::string& source);
SimStudy load_sim_config(const std::string& path);

}  // namespace kappa
