#ifndef GKM_HPP
#define GKM_HPP

// Umbrella header: the whole library in one include.

#include "gkm/errors.hpp"
#include "gkm/root_system.hpp"
#include "gkm/weyl.hpp"
#include "gkm/polynomial.hpp"
#include "gkm/billey.hpp"
#include "gkm/cohomology.hpp"
#include "gkm/parabolic.hpp"
#include "gkm/springer.hpp"
#include "gkm/json_io.hpp"
#include "gkm/catalogue.hpp"

#endif
