#pragma once

#include "asympt.hpp"
#include "bearing.hpp"
#include "cell.hpp"
#include "coeffs.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "kernels.hpp"
#include "lubrication.hpp"
#include "oracle.hpp"
#include "params.hpp"

namespace microrib {

inline constexpr const char* version = "1.0.0";

} // namespace microrib
