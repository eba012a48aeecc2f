#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ckq/pimenov.hpp"
#include "ckq/report.hpp"

namespace ckq {

// Random elements with small Gaussian-integer coefficients, so products are exact in floating point.
Pim random_integer_pim(int n, std::mt19937_64& rng);
Pim random_pim(int n, std::mt19937_64& rng, double scale = 1.0);

// Products in D_n against the even subalgebra of a Grassmann algebra with iota_k = xi_k xi_{n+k}.
Report verify_grassmann_embedding(int n, int trials, std::uint64_t seed);

std::vector<Report> verify_pimenov(std::uint64_t seed);

}  // namespace ckq
