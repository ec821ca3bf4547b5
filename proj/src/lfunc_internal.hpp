#pragma once
// Shared between lfunc.cpp and zeros.cpp.

#include "lhybrid/lfunc.hpp"

namespace lhybrid::detail {

cplx inverse_sqrt_root_number(const DirichletCharacter& chi);
HardyValue hardy_rotated(const DirichletCharacter& chi, cplx rotation, double t);

}  // namespace lhybrid::detail
